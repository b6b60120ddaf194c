//! Exact computation of singularity invariants for families of ICIS germs
//! with a function: Milnor numbers and their sectional sequences,
//! Buchsbaum-Rim multiplicities, polar multiplicities, integral dependence
//! via the curve criterion, and the numerical Thom/Whitney family checks
//! built on them.

pub mod brmult;
pub mod depend;
pub mod error;
pub mod family;
pub mod germ;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod rng;
pub mod sb;
pub mod scalar;
pub mod series;

pub use error::{EngineError, Result};
pub use monomial::{canonical_cmp, Monomial, OrderKind, TermOrder};
pub use parse::{parse_poly, parse_poly_at};
pub use poly::Polynomial;
pub use ring::Ring;
pub use scalar::{FieldSpec, Scalar};

/// Tunable limits and defaults shared by the engines.
#[derive(Debug, Clone)]
pub struct Config {
    /// Cap on S-pairs processed in one standard-basis run.
    pub max_pairs: usize,
    /// Cap on the total number of stored terms in one standard-basis run.
    pub max_terms: usize,
    /// Largest Rees-algebra degree tried by the Hilbert-function route.
    pub nmax: usize,
    /// Truncation order for power-series path computations.
    pub truncation: usize,
    /// Safety margin subtracted from membership orders over series.
    pub margin: usize,
    /// Height bound for random rational coefficients.
    pub height: u32,
    /// Retries for genericity failures.
    pub retries: usize,
    /// Exponent budget for default test paths.
    pub path_budget: usize,
    /// Binomial convention used by the polar-multiplicity formula.
    pub binomial: BinomialConvention,
}

/// Upper index of the binomial coefficients in the polar-multiplicity
/// expansion of `e(m M)`. Both are implemented; the test suite records which
/// one matches the direct Rees-algebra computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomialConvention {
    /// `C(a-1, i)`.
    AMinusOne,
    /// `C(a, i)`.
    A,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_pairs: 200_000,
            max_terms: 4_000_000,
            nmax: 12,
            truncation: 24,
            margin: 4,
            height: 100,
            retries: 4,
            path_budget: 3,
            binomial: BinomialConvention::AMinusOne,
        }
    }
}
