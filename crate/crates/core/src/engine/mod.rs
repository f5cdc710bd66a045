//! The memetic search loop and its operators.
//!
//! Each generation breeds `c` offspring against the population as it stood
//! at the start of the generation, improves them by local search, and merges
//! them into the pool in one update. When the average objective has not moved
//! for `g` generations the pool is rebuilt around the incumbent.

mod config;
mod pool;
mod population;
mod recombination;
mod run;
mod selection;
mod trace;

pub use config::{ConfigError, Interval, PoolStrategy, SolverConfig, StopCondition};
pub use pool::{rank_union, update_pool};
pub use population::{fresh_individuals, init_population, BestTracker, Population};
pub use recombination::{
    positions_per_parent, recombine_mpc, recombine_mpc_traced, recombine_with_positions, RecombinationError,
};
pub use run::{run, RunOutcome};
pub use selection::{select_parents, ParentSelection};
pub use trace::{GenerationRecord, RunTrace, TRACE_HEADER, TRACE_VERSION_LINE};
