//! Seeded random points and test states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;

pub const MAX_RETRIES: usize = 100;

/// Integer box the sampled coordinates are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleBox {
    pub lo: i64,
    pub hi: i64,
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox { lo: 2, hi: 1_000_000 }
    }
}

impl SampleBox {
    pub fn validate(&self) -> Result<()> {
        if self.lo > self.hi {
            return Err(Error::InvalidParams {
                field: "box".into(),
                reason: format!("empty range [{}, {}]", self.lo, self.hi),
            });
        }
        if self.hi - self.lo < 16 {
            return Err(Error::InvalidParams {
                field: "box".into(),
                reason: "range too small to sample distinct points".into(),
            });
        }
        Ok(())
    }
}

/// Generator derived from a run seed and a check id, so each check sees the
/// same stream regardless of scheduling.
pub fn rng_for(seed: u64, id: &str) -> ChaCha8Rng {
    // FNV-1a over the id, mixed with the seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h.rotate_left(17))
}

/// `true` when the coordinates avoid every pole of the Dunkl coefficients:
/// pairwise distinct, none in `{-1, 0, 1}`, no product equal to one.
pub fn admissible(t: &[i64]) -> bool {
    for (i, &a) in t.iter().enumerate() {
        if (-1..=1).contains(&a) {
            return false;
        }
        for &b in &t[i + 1..] {
            if a == b || a.checked_mul(b) == Some(1) {
                return false;
            }
        }
    }
    true
}

/// A random admissible coordinate point.
pub fn coordinate_point<R: Rng>(rng: &mut R, n: usize, bx: SampleBox) -> Result<Vec<i64>> {
    for _ in 0..MAX_RETRIES {
        let t: Vec<i64> = (0..n).map(|_| rng.gen_range(bx.lo..=bx.hi)).collect();
        if admissible(&t) {
            return Ok(t);
        }
    }
    Err(Error::Sampling(format!(
        "no admissible point in [{}, {}] after {} tries",
        bx.lo, bx.hi, MAX_RETRIES
    )))
}

/// Retries `eval` at fresh points until it succeeds (a pole hit is an `Err`).
pub fn eval_with_resampling<R: Rng, T>(
    rng: &mut R,
    n: usize,
    bx: SampleBox,
    mut eval: impl FnMut(&[i64]) -> Result<T>,
) -> Result<(Vec<i64>, T)> {
    for _ in 0..MAX_RETRIES {
        let p = coordinate_point(rng, n, bx)?;
        match eval(&p) {
            Ok(v) => return Ok((p, v)),
            Err(Error::Pole) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling("every sampled point hit a pole".into()))
}

pub fn to_field<F: Field>(p: &[i64]) -> Vec<F> {
    p.iter().map(|&x| F::from_i64(x)).collect()
}

/// Spectral parameter sample (nonzero, from the box).
pub fn spectral<R: Rng>(rng: &mut R, bx: SampleBox) -> i64 {
    rng.gen_range(bx.lo..=bx.hi)
}

/// Exponent vector for a test monomial, entries uniform in `[-3, 3]`.
pub fn exponents<R: Rng>(rng: &mut R, n: usize) -> Vec<i32> {
    (0..n).map(|_| rng.gen_range(-3..=3)).collect()
}
