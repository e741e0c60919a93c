//! Seeded randomized suites that check every identity of the library and
//! return one [`IdentityReport`] per trial and identity.

mod suites;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use suites::Suite;

use crate::error::{Error, Result};
use crate::rational::{frac, int, Rational};
use crate::report::IdentityReport;
use crate::series::{ColorSet, KernelFamily, TruncatedSeries};

/// Deliberate corruptions used to confirm that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Assemblies made of a single crown get sign `+1` instead of `-1`.
    FlipSingleCrownSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub d: usize,
    pub order: usize,
    pub trials: usize,
    pub pool: Vec<Rational>,
    /// Largest tuple size checked by the coefficient-level identities.
    pub max_tuple: usize,
    /// Largest tuple size for the enumeration-backed checks.
    pub max_enumerated: usize,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            d: 2,
            order: 4,
            trials: 3,
            pool: default_pool(),
            max_tuple: 5,
            max_enumerated: 4,
            mutation: None,
        }
    }
}

pub fn default_pool() -> Vec<Rational> {
    vec![int(-1), int(0), frac(1, 2), int(1), int(2), frac(-1, 3)]
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidConfig("d must be at least 1".into()));
        }
        if self.order == 0 {
            return Err(Error::InvalidConfig("order must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.pool.is_empty() {
            return Err(Error::InvalidConfig("coefficient pool must not be empty".into()));
        }
        if self.max_enumerated > 6 {
            return Err(Error::CapExceeded { labels: self.max_enumerated, cap: 6 });
        }
        Ok(())
    }

    pub fn colors(&self) -> Result<Arc<ColorSet>> {
        Ok(Arc::new(ColorSet::alphabetic(self.d)?))
    }

    /// The generator for one trial: the seed picks the key, the trial the stream.
    pub fn rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }

    fn draw(&self, rng: &mut impl Rng) -> Rational {
        self.pool[rng.random_range(0..self.pool.len())].clone()
    }

    fn parameters(&self, trial: usize) -> String {
        format!("seed={} trial={} d={} N={}", self.seed, trial, self.d, self.order)
    }
}

/// A kernel family with every `A_n(q; key)`, `n >= 1`, drawn from the pool.
pub fn random_kernel_family(cfg: &SuiteConfig, rng: &mut impl Rng) -> Result<KernelFamily> {
    let colors = cfg.colors()?;
    Ok(KernelFamily::from_fn(&colors, cfg.order, |_, _| cfg.draw(rng)))
}

/// A scalar series with every coefficient drawn from the pool.
pub fn random_series(cfg: &SuiteConfig, rng: &mut impl Rng) -> Result<TruncatedSeries> {
    let colors = cfg.colors()?;
    Ok(TruncatedSeries::from_fn(&colors, cfg.order, |_| cfg.draw(rng)))
}

/// Runs `suite` for every trial (in parallel) and returns the reports in
/// trial order.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<IdentityReport>> {
    cfg.validate()?;
    let per_trial = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| suites::run_trial(suite, cfg, trial))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_trial.into_iter().flatten().collect())
}

pub fn run_named_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<IdentityReport>> {
    run_suite(name.parse()?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_are_deterministic() {
        let cfg = SuiteConfig::default();
        let a = random_kernel_family(&cfg, &mut cfg.rng(0)).unwrap();
        let b = random_kernel_family(&cfg, &mut cfg.rng(0)).unwrap();
        assert_eq!(a, b);
        let other = SuiteConfig { seed: 2, ..cfg.clone() };
        let c = random_kernel_family(&other, &mut other.rng(0)).unwrap();
        assert_ne!(a, c);
        assert_ne!(a, random_kernel_family(&cfg, &mut cfg.rng(1)).unwrap());
    }

    #[test]
    fn zero_pool_gives_zero_kernel() {
        let cfg = SuiteConfig { pool: vec![int(0)], ..SuiteConfig::default() };
        assert!(random_kernel_family(&cfg, &mut cfg.rng(0)).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_configs() {
        for cfg in [
            SuiteConfig { d: 0, ..SuiteConfig::default() },
            SuiteConfig { order: 0, ..SuiteConfig::default() },
            SuiteConfig { trials: 0, ..SuiteConfig::default() },
            SuiteConfig { pool: vec![], ..SuiteConfig::default() },
        ] {
            assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        }
        assert!(matches!(run_named_suite("nope", &SuiteConfig::default()), Err(Error::UnknownSuite(_))));
    }
}
