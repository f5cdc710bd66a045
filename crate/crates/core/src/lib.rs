//! Multi-parent memetic search for the linear ordering problem.
//!
//! Given an `n x n` matrix `C`, the linear ordering problem asks for an
//! ordering of `0..n` that maximizes the sum of `C[a][b]` over all pairs
//! where `a` is placed before `b`.
//!
//! * [`instance`] reads, writes and generates LOLIB-format matrices.
//! * [`search`] holds the permutation type, the objective, insert moves and
//!   steepest-ascent local search.
//! * [`diversity`] measures LCS distances between solutions and scores
//!   pool members by quality and distance.
//! * [`engine`] is the evolutionary loop: parent selection, multi-parent
//!   recombination, pool updating and restarts.
//! * [`oracle`] holds slow exhaustive references used by the tests.

pub mod diversity;
pub mod engine;
pub mod instance;
pub mod oracle;
pub mod search;

pub use engine::{run, PoolStrategy, RunOutcome, SolverConfig, StopCondition};
pub use instance::{generate_instance, parse_instance, write_instance, GeneratorSpec, LopInstance};
pub use search::{evaluate, local_search, Individual, Permutation};
