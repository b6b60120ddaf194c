//! Seeded randomness for genericity choices.
//!
//! All draws go through ChaCha20 seeded from an explicit `u64`, so results
//! are reproducible across platforms. Randomized operations draw twice with
//! independent subseeds and require agreement.

use crate::error::{EngineError, Result};
use crate::linalg;
use crate::poly::Polynomial;
use crate::scalar::FieldSpec;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// A reproducible seed; children are derived by mixing in a tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seed(pub u64);

impl Seed {
    pub fn child(self, tag: u64) -> Seed {
        // splitmix-style mixing
        let mut z = self.0 ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Seed(z ^ (z >> 31))
    }

    pub fn rng(self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.0)
    }
}

/// A nonzero rational with numerator and denominator bounded by `height`.
pub fn random_rational(rng: &mut ChaCha20Rng, height: u32) -> BigRational {
    let h = height.max(1) as i64;
    loop {
        let num = rng.gen_range(-h..=h);
        if num == 0 {
            continue;
        }
        let den = rng.gen_range(1..=h);
        return BigRational::new(BigInt::from(num), BigInt::from(den));
    }
}

/// A nonzero integer of magnitude at most `height`, as a rational. Integer
/// draws keep substituted polynomials integral, which matters a lot for
/// coefficient growth in the standard-basis engine.
pub fn random_integer(rng: &mut ChaCha20Rng, height: u32) -> BigRational {
    let h = height.max(1) as i64;
    loop {
        let num = rng.gen_range(-h..=h);
        if num != 0 {
            return BigRational::from(BigInt::from(num));
        }
    }
}

/// A random linear form `c_1 x_1 + ... + c_n x_n` with nonzero coefficients.
pub fn random_linear_form(
    rng: &mut ChaCha20Rng,
    nvars: usize,
    field: &FieldSpec,
    height: u32,
) -> Result<Polynomial> {
    let mut p = Polynomial::zero(nvars);
    for i in 0..nvars {
        let c = field.scalar_from_rat(&random_integer(rng, height))?;
        p = p.add(&Polynomial::var(nvars, i, field).scale(&c));
    }
    Ok(p)
}

/// A random invertible n-by-n matrix over the field, entries of bounded height.
pub fn random_invertible_matrix(
    rng: &mut ChaCha20Rng,
    n: usize,
    field: &FieldSpec,
    height: u32,
) -> Result<Vec<Vec<crate::scalar::Scalar>>> {
    for _ in 0..64 {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let mut row = Vec::with_capacity(n);
            for _ in 0..n {
                row.push(field.scalar_from_rat(&random_integer(rng, height))?);
            }
            rows.push(row);
        }
        if !linalg::scalar_det(&rows).is_zero() {
            return Ok(rows);
        }
    }
    Err(EngineError::GenericityFailure {
        what: "could not draw an invertible matrix".into(),
        retries: 64,
    })
}

/// Run a seeded computation twice with independent randomness and require the
/// two results to agree; redraw up to `retries` times.
pub fn agree_twice<T: PartialEq + Clone>(
    seed: Seed,
    retries: usize,
    what: &str,
    mut f: impl FnMut(Seed) -> Result<T>,
) -> Result<T> {
    let mut last_err = None;
    for round in 0..retries.max(1) {
        let s1 = seed.child(2 * round as u64);
        let s2 = seed.child(2 * round as u64 + 1);
        match (f(s1), f(s2)) {
            (Ok(a), Ok(b)) if a == b => return Ok(a),
            (Ok(_), Ok(_)) => {
                last_err = Some(EngineError::GenericityFailure {
                    what: format!("{}: two independent draws disagree", what),
                    retries: round + 1,
                });
            }
            (Err(e), _) | (_, Err(e)) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(EngineError::GenericityFailure {
        what: what.into(),
        retries,
    }))
}
