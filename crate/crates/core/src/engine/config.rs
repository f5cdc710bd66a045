use std::fmt;
use std::time::Duration;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("parent count m = {m} must satisfy 2 <= m <= p = {p}")]
    ParentCount { m: usize, p: usize },
    #[error("offspring count must be at least 1")]
    OffspringCount,
    #[error("stagnation limit must be at least 1")]
    StagnationLimit,
    #[error("{name} interval [{low}, {high}] must satisfy 0 <= low <= high <= 1")]
    Interval { name: &'static str, low: f64, high: f64 },
    #[error("selection retry cap must be at least 1")]
    RetryCap,
    #[error("no termination condition set")]
    NoStop,
}

/// Closed sub-interval of `[0, 1]` from which a parameter is redrawn on use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub const fn new(low: f64, high: f64) -> Self {
        Interval { low, high }
    }

    pub const fn fixed(value: f64) -> Self {
        Interval {
            low: value,
            high: value,
        }
    }

    fn validate(&self, name: &'static str) -> Result<(), ConfigError> {
        if (0.0..=1.0).contains(&self.low) && (0.0..=1.0).contains(&self.high) && self.low <= self.high {
            Ok(())
        } else {
            Err(ConfigError::Interval {
                name,
                low: self.low,
                high: self.high,
            })
        }
    }

    /// Always consumes exactly one draw, even for a degenerate interval.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.gen();
        (self.low + u * (self.high - self.low)).clamp(self.low, self.high)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.low, self.high)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PoolStrategy {
    /// Quality-and-distance score.
    ScoreBased,
    /// Objective value only.
    Ovbs,
}

impl PoolStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            PoolStrategy::ScoreBased => "score",
            PoolStrategy::Ovbs => "ovbs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StopCondition {
    pub max_generations: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl StopCondition {
    pub fn generations(max: u64) -> Self {
        StopCondition {
            max_generations: Some(max),
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub population_size: usize,
    pub offspring_count: usize,
    /// Generations of unchanged average objective before a restart.
    pub stagnation_limit: u32,
    /// Parents per recombination; 2 is order-based crossover.
    pub parent_count: usize,
    pub beta: Interval,
    pub alpha: Interval,
    pub pool_strategy: PoolStrategy,
    pub seed: u64,
    pub stop: StopCondition,
    pub selection_retry_cap: usize,
    /// Breed the offspring of a generation on the rayon pool. Results do not
    /// depend on this flag.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            population_size: 25,
            offspring_count: 10,
            stagnation_limit: 30,
            parent_count: 3,
            beta: Interval::new(0.6, 0.7),
            alpha: Interval::new(0.8, 1.0),
            pool_strategy: PoolStrategy::ScoreBased,
            seed: 0,
            stop: StopCondition::generations(1000),
            selection_retry_cap: 50,
            parallel: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.parent_count < 2 || self.parent_count > self.population_size {
            return Err(ConfigError::ParentCount {
                m: self.parent_count,
                p: self.population_size,
            });
        }
        if self.offspring_count == 0 {
            return Err(ConfigError::OffspringCount);
        }
        if self.stagnation_limit == 0 {
            return Err(ConfigError::StagnationLimit);
        }
        self.beta.validate("beta")?;
        self.alpha.validate("alpha")?;
        if self.selection_retry_cap == 0 {
            return Err(ConfigError::RetryCap);
        }
        if self.stop.max_generations.is_none() && self.stop.time_limit.is_none() {
            return Err(ConfigError::NoStop);
        }
        Ok(())
    }

    /// Canonical one-line rendering of every search parameter except the seed
    /// and the parallelism flag.
    pub fn canonical(&self) -> String {
        format!(
            "p={};c={};g={};m={};beta={};alpha={};pool={};max_gen={};time_ms={};retry={}",
            self.population_size,
            self.offspring_count,
            self.stagnation_limit,
            self.parent_count,
            self.beta,
            self.alpha,
            self.pool_strategy.as_str(),
            self.stop.max_generations.map_or("none".to_string(), |g| g.to_string()),
            self.stop
                .time_limit
                .map_or("none".to_string(), |t| t.as_millis().to_string()),
            self.selection_retry_cap,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn defaults_are_valid() {
        let cfg = SolverConfig::default();
        cfg.validate().unwrap();
        assert_eq!(
            (
                cfg.population_size,
                cfg.offspring_count,
                cfg.stagnation_limit,
                cfg.parent_count
            ),
            (25, 10, 30, 3)
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        let base = SolverConfig::default();
        let cases = [
            SolverConfig {
                parent_count: 1,
                ..base.clone()
            },
            SolverConfig {
                parent_count: 26,
                ..base.clone()
            },
            SolverConfig {
                offspring_count: 0,
                ..base.clone()
            },
            SolverConfig {
                stagnation_limit: 0,
                ..base.clone()
            },
            SolverConfig {
                beta: Interval::new(0.7, 0.6),
                ..base.clone()
            },
            SolverConfig {
                alpha: Interval::new(0.8, 1.2),
                ..base.clone()
            },
            SolverConfig {
                selection_retry_cap: 0,
                ..base.clone()
            },
            SolverConfig {
                stop: StopCondition::default(),
                ..base.clone()
            },
        ];
        for cfg in cases {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn interval_sampling_stays_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let iv = Interval::new(0.6, 0.7);
        for _ in 0..1000 {
            let x = iv.sample(&mut rng);
            assert!((0.6..=0.7).contains(&x));
        }
        assert_eq!(Interval::fixed(1.0).sample(&mut rng), 1.0);
    }

    #[test]
    fn canonical_ignores_seed() {
        let a = SolverConfig {
            seed: 1,
            ..SolverConfig::default()
        };
        let b = SolverConfig {
            seed: 2,
            ..SolverConfig::default()
        };
        assert_eq!(a.canonical(), b.canonical());
        let c = SolverConfig {
            parent_count: 2,
            ..SolverConfig::default()
        };
        assert_ne!(a.canonical(), c.canonical());
    }
}
