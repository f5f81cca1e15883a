//! Deterministic sample plans for curves and parameter boxes: a structured
//! component (uniform grid / low-discrepancy Halton points) plus seeded
//! random points, so that constancy detection cannot be an aliasing artifact
//! of a uniform grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

/// How many samples to draw and with which seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePlan {
    /// Structured samples: uniform on intervals, Halton in boxes.
    pub structured: usize,
    /// Additional seeded random samples.
    pub random: usize,
    pub seed: u64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            structured: 64,
            random: 16,
            seed: 0x5eed,
        }
    }
}

impl SamplePlan {
    pub fn new(structured: usize, random: usize, seed: u64) -> Self {
        SamplePlan {
            structured,
            random,
            seed,
        }
    }

    pub fn total(&self) -> usize {
        self.structured + self.random
    }

    /// Same plan with `factor`-times the density and a decorrelated seed;
    /// used for independent re-verification passes.
    pub fn densified(&self, factor: usize) -> SamplePlan {
        SamplePlan {
            structured: self.structured * factor,
            random: self.random * factor,
            seed: derive_seed(self.seed, 0xa5a5_a5a5),
        }
    }

    pub fn reseeded(&self, salt: u64) -> SamplePlan {
        SamplePlan {
            seed: derive_seed(self.seed, salt),
            ..*self
        }
    }
}

/// SplitMix64 step; decorrelates derived seeds.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Parameters on a closed interval: uniform grid including endpoints, then
/// seeded uniform randoms.
pub fn interval_params<F: Scalar>(a: F, b: F, plan: &SamplePlan) -> Vec<F> {
    let mut out = Vec::with_capacity(plan.total());
    let n = plan.structured.max(2);
    for i in 0..n {
        let frac = F::from_usize(i).unwrap() / F::from_usize(n - 1).unwrap();
        out.push(a + (b - a) * frac);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    for _ in 0..plan.random {
        let frac: f64 = rng.gen_range(0.0..1.0);
        out.push(a + (b - a) * F::lit(frac));
    }
    out
}

/// Radical-inverse Halton value for index `i >= 1` in the given base.
fn halton(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

const HALTON_BASES: [usize; 6] = [2, 3, 5, 7, 11, 13];

/// Points in a parameter box: Halton sequence plus seeded randoms.
pub fn box_points<F: Scalar>(bounds: &[(F, F)], plan: &SamplePlan) -> Vec<Vec<F>> {
    let dim = bounds.len();
    assert!(
        dim <= HALTON_BASES.len(),
        "parameter box dimension too large"
    );
    let mut out = Vec::with_capacity(plan.total());
    for i in 1..=plan.structured {
        let p: Vec<F> = bounds
            .iter()
            .enumerate()
            .map(|(d, &(lo, hi))| lo + (hi - lo) * F::lit(halton(i, HALTON_BASES[d])))
            .collect();
        out.push(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    for _ in 0..plan.random {
        let p: Vec<F> = bounds
            .iter()
            .map(|&(lo, hi)| lo + (hi - lo) * F::lit(rng.gen_range(0.0..1.0)))
            .collect();
        out.push(p);
    }
    out
}
