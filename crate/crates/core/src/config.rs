//! Run-wide knobs shared by the randomized and enumerative algorithms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when none is given. Every randomized search derives its
/// generator from the configured seed, so equal seeds give equal output.
pub const DEFAULT_SEED: u64 = 0x5EED_1A2B_3C4D_5E6F;

/// Default bound on the number of canonical subspaces an enumeration may produce.
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    /// Submodule enumerations stop with an error past this many entries.
    pub cap: usize,
    /// Run data-parallel loops on the rayon pool. Ignored without the `parallel` feature.
    pub parallel: bool,
    /// Isomorphism tests enumerate the whole hom space when it has at most this many elements.
    pub iso_exhaustive_limit: u64,
    /// Random elements tried by searches before falling back to slower methods.
    pub random_tries: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: DEFAULT_SEED,
            cap: DEFAULT_CAP,
            parallel: cfg!(feature = "parallel"),
            iso_exhaustive_limit: 1 << 16,
            random_tries: 64,
        }
    }
}

impl Config {
    pub fn with_seed(seed: u64) -> Self {
        Config {
            seed,
            ..Config::default()
        }
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    /// Fresh generator for one top-level call.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}
