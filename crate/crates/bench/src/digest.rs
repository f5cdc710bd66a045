//! Stable seeds and short content digests.

use mpm_core::{LopInstance, SolverConfig};
use sha2::{Digest, Sha256};

/// Seed for run `run` of `instance`, stable across platforms and releases.
pub fn derive_seed(base: u64, instance: &str, run: usize) -> u64 {
    let hash = Sha256::digest(format!("{base}|{instance}|{run}").as_bytes());
    u64::from_le_bytes(hash[..8].try_into().expect("sha256 is 32 bytes"))
}

pub fn config_digest(cfg: &SolverConfig) -> String {
    short_hex(Sha256::digest(cfg.canonical().as_bytes()).as_slice())
}

/// Digest of the dimension and weights; the name is not included.
pub fn instance_digest(inst: &LopInstance) -> String {
    let mut hasher = Sha256::new();
    hasher.update((inst.n() as u64).to_le_bytes());
    for w in inst.weights() {
        hasher.update(w.to_le_bytes());
    }
    short_hex(hasher.finalize().as_slice())
}

fn short_hex(bytes: &[u8]) -> String {
    hex::encode(&bytes[..8])
}
