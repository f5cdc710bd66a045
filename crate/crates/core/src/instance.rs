//! LOP instances and the LOLIB text format.
//!
//! A file is an optional name line, the dimension `n`, then `n * n`
//! whitespace-separated integers in row-major order. Line breaks inside the
//! matrix carry no meaning.

use std::fmt::Write as _;
use std::io::{self, Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("failed to read instance: {0}")]
    Io(#[from] io::Error),
    #[error("instance is not valid UTF-8")]
    Utf8,
    #[error("missing dimension")]
    MissingDimension,
    #[error("malformed integer token {token:?} (token #{index})")]
    MalformedToken { token: String, index: usize },
    #[error("integer token {token:?} overflows 64-bit signed range")]
    Overflow { token: String },
    #[error("dimension must be positive, got {0}")]
    NonPositiveDimension(i64),
    #[error("expected {expected} matrix entries, found {found}")]
    TokenCount { expected: usize, found: usize },
    #[error("weights vector has {found} entries, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("invalid instance name {0:?}: must be a single non-empty line starting with neither a digit nor '-'")]
    InvalidName(String),
    #[error("invalid generator bounds: low {low} > high {high}")]
    InvalidBounds { low: i64, high: i64 },
}

/// An `n x n` weight matrix to be ordered.
///
/// The diagonal is kept verbatim but is never read by any objective
/// computation.
#[derive(Debug, Clone)]
pub struct LopInstance {
    name: String,
    n: usize,
    weights: Vec<i64>,
    /// `skew[a * n + b] = C[a][b] - C[b][a]`, the gain of putting `a` before `b`.
    skew: Vec<i64>,
}

impl PartialEq for LopInstance {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.n == other.n && self.weights == other.weights
    }
}

impl Eq for LopInstance {}

/// Returns true when `name` survives a write/parse cycle unchanged.
pub fn is_valid_name(name: &str) -> bool {
    match name.chars().next() {
        None => false,
        Some(first) => {
            !(first.is_ascii_digit() || first == '-' || first == '+')
                && !name.contains(['\n', '\r'])
                && name.trim() == name
        }
    }
}

impl LopInstance {
    /// Builds an instance from a row-major weight vector.
    pub fn new(name: impl Into<String>, n: usize, weights: Vec<i64>) -> Result<Self, InstanceError> {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(InstanceError::InvalidName(name));
        }
        if n == 0 {
            return Err(InstanceError::NonPositiveDimension(0));
        }
        let expected = n.checked_mul(n).ok_or(InstanceError::Shape {
            expected: usize::MAX,
            found: weights.len(),
        })?;
        if weights.len() != expected {
            return Err(InstanceError::Shape {
                expected,
                found: weights.len(),
            });
        }
        let mut skew = vec![0i64; expected];
        for a in 0..n {
            for b in 0..n {
                skew[a * n + b] = weights[a * n + b].wrapping_sub(weights[b * n + a]);
            }
        }
        Ok(LopInstance { name, n, weights, skew })
    }

    pub fn from_rows(name: impl Into<String>, rows: &[Vec<i64>]) -> Result<Self, InstanceError> {
        let n = rows.len();
        let mut weights = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(InstanceError::Shape {
                    expected: n * n,
                    found: rows.iter().map(Vec::len).sum(),
                });
            }
            weights.extend_from_slice(row);
        }
        Self::new(name, n, weights)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `C[a][b]` for 0-based element labels.
    #[inline]
    pub fn weight(&self, a: usize, b: usize) -> i64 {
        self.weights[a * self.n + b]
    }

    /// Row-major weights.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn row(&self, a: usize) -> &[i64] {
        &self.weights[a * self.n..(a + 1) * self.n]
    }

    /// Row `a` of the skew matrix `C[a][b] - C[b][a]`.
    #[inline]
    pub fn skew_row(&self, a: usize) -> &[i64] {
        &self.skew[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.weights.chunks(self.n).map(<[i64]>::to_vec).collect()
    }
}

/// Parameters for a uniform random instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub n: usize,
    pub weight_low: i64,
    pub weight_high: i64,
    pub seed: u64,
}

fn looks_like_number_start(line: &str) -> bool {
    matches!(line.trim_start().chars().next(), Some(c) if c.is_ascii_digit() || c == '-' || c == '+')
}

fn parse_token(token: &str, index: usize) -> Result<i64, InstanceError> {
    use std::num::IntErrorKind;
    token.parse::<i64>().map_err(|err| match err.kind() {
        IntErrorKind::PosOverflow | IntErrorKind::NegOverflow => InstanceError::Overflow {
            token: token.to_string(),
        },
        _ => InstanceError::MalformedToken {
            token: token.to_string(),
            index,
        },
    })
}

/// Parses LOLIB text. `default_name` is used when the file has no name line.
pub fn parse_instance_str(text: &str, default_name: &str) -> Result<LopInstance, InstanceError> {
    let mut body = text;
    let mut name = default_name.to_string();
    // The name line, when present, is the first non-blank line.
    let mut rest = text;
    while let Some((line, tail)) = split_first_line(rest) {
        if line.trim().is_empty() {
            rest = tail;
            continue;
        }
        if !looks_like_number_start(line) {
            name = line.trim().to_string();
            body = tail;
        }
        break;
    }

    let mut tokens = body.split_whitespace();
    let first = tokens.next().ok_or(InstanceError::MissingDimension)?;
    let n = parse_token(first, 0)?;
    if n <= 0 {
        return Err(InstanceError::NonPositiveDimension(n));
    }
    let n = usize::try_from(n).map_err(|_| InstanceError::Overflow {
        token: first.to_string(),
    })?;
    let expected = n.checked_mul(n).ok_or(InstanceError::Overflow {
        token: first.to_string(),
    })?;

    let mut weights = Vec::with_capacity(expected.min(1 << 24));
    for (k, token) in tokens.enumerate() {
        weights.push(parse_token(token, k + 1)?);
    }
    if weights.len() != expected {
        return Err(InstanceError::TokenCount {
            expected,
            found: weights.len(),
        });
    }
    LopInstance::new(name, n, weights)
}

fn split_first_line(text: &str) -> Option<(&str, &str)> {
    if text.is_empty() {
        return None;
    }
    Some(match text.find('\n') {
        Some(pos) => (&text[..pos], &text[pos + 1..]),
        None => (text, ""),
    })
}

pub fn parse_instance<R: Read>(mut source: R, default_name: &str) -> Result<LopInstance, InstanceError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    let text = String::from_utf8(bytes).map_err(|_| InstanceError::Utf8)?;
    parse_instance_str(&text, default_name)
}

pub fn instance_to_string(inst: &LopInstance) -> String {
    let mut out = String::with_capacity(inst.n * inst.n * 4 + 32);
    out.push_str(&inst.name);
    out.push('\n');
    let _ = writeln!(out, "{}", inst.n);
    for row in inst.weights.chunks(inst.n) {
        let mut first = true;
        for w in row {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{w}");
        }
        out.push('\n');
    }
    out
}

pub fn write_instance<W: Write>(inst: &LopInstance, mut sink: W) -> io::Result<()> {
    sink.write_all(instance_to_string(inst).as_bytes())
}

/// Uniform random instance with a zero diagonal. Pure in `spec`.
pub fn generate_instance(spec: &GeneratorSpec) -> Result<LopInstance, InstanceError> {
    if spec.weight_low > spec.weight_high {
        return Err(InstanceError::InvalidBounds {
            low: spec.weight_low,
            high: spec.weight_high,
        });
    }
    if spec.n == 0 {
        return Err(InstanceError::NonPositiveDimension(0));
    }
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut weights = vec![0i64; n * n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                weights[a * n + b] = rng.gen_range(spec.weight_low..=spec.weight_high);
            }
        }
    }
    LopInstance::new(format!("rand-n{}-s{}", n, spec.seed), n, weights)
}
