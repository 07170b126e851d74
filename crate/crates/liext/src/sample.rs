use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{Atom, Rat};

/// Seed used by every deterministic pipeline unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 271828;

pub const MAX_SAMPLE_RETRIES: usize = 20;

/// Deterministic generic-point sampler. Numerators land in [-12, 12] without
/// zero, denominators in [1, 8], so points are small, exact, and rarely
/// singular; callers retry through `with_retries` when they are.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rat(&mut self) -> Rat {
        let n = loop {
            let k: i64 = self.rng.gen_range(-12..=12);
            if k != 0 {
                break k;
            }
        };
        let d: i64 = self.rng.gen_range(1..=8);
        Rat::new(n.into(), d.into())
    }

    /// Sample one value per atom. Exponential and opaque atoms get values of
    /// their own, which is exactly the generic-point reading of a ring where
    /// those atoms are algebraically independent.
    pub fn point<'a>(&mut self, atoms: impl IntoIterator<Item = &'a Atom>) -> BTreeMap<Atom, Rat> {
        atoms.into_iter().map(|a| (a.clone(), self.rat())).collect()
    }
}

/// Run `attempt` up to `MAX_SAMPLE_RETRIES` times, retrying only on singular
/// points.
pub fn with_retries<T>(mut attempt: impl FnMut() -> Result<T>) -> Result<T> {
    for _ in 0..MAX_SAMPLE_RETRIES {
        match attempt() {
            Err(Error::SingularPoint) => continue,
            other => return other,
        }
    }
    Err(Error::AllSamplesSingular)
}
