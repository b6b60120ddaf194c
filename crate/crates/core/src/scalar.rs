//! Exact coefficient arithmetic: rationals, prime fields, and rational
//! function fields in the family parameters.
//!
//! A `Scalar` is always nonzero when stored inside a polynomial term map;
//! zeros only appear transiently during arithmetic. All scalars taking part
//! in one computation belong to the same `FieldSpec`; mixing is a programmer
//! error and panics.

use crate::error::{EngineError, Result};
use crate::poly::Polynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    /// Arbitrary-precision rationals.
    Q,
    /// Residues modulo an odd prime `p > 2^30`.
    Fp(u64),
    /// Fraction field of polynomials in `params` parameter variables over `Q`.
    FunQ { params: usize },
    /// Fraction field of polynomials in `params` parameter variables over `Fp(p)`.
    FunFp { p: u64, params: usize },
}

impl FieldSpec {
    /// The field of the fraction-field numerators/denominators, if any.
    pub fn base(&self) -> FieldSpec {
        match self {
            FieldSpec::FunQ { .. } => FieldSpec::Q,
            FieldSpec::FunFp { p, .. } => FieldSpec::Fp(*p),
            other => other.clone(),
        }
    }

    pub fn is_function_field(&self) -> bool {
        matches!(self, FieldSpec::FunQ { .. } | FieldSpec::FunFp { .. })
    }

    pub fn params(&self) -> usize {
        match self {
            FieldSpec::FunQ { params } | FieldSpec::FunFp { params, .. } => *params,
            _ => 0,
        }
    }

    /// Embed a rational constant into this field.
    pub fn scalar_from_rat(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Q => Ok(Scalar::Rat(r.clone())),
            FieldSpec::Fp(p) => Ok(Scalar::Fp {
                val: fp_from_rat(r, *p)?,
                p: *p,
            }),
            FieldSpec::FunQ { params } => {
                let num = self.base().scalar_from_rat(r)?;
                Ok(Scalar::fun_from_scalar(num, *params))
            }
            FieldSpec::FunFp { params, .. } => {
                let num = self.base().scalar_from_rat(r)?;
                Ok(Scalar::fun_from_scalar(num, *params))
            }
        }
    }

    pub fn scalar_from_i64(&self, n: i64) -> Scalar {
        self.scalar_from_rat(&BigRational::from(BigInt::from(n)))
            .expect("integers embed into every session field")
    }

    pub fn one(&self) -> Scalar {
        self.scalar_from_i64(1)
    }
}

fn fp_from_rat(r: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let num = r.numer().mod_floor_u64(p);
    let den = r.denom().mod_floor_u64(p);
    if den == 0 {
        return Err(EngineError::FieldMismatch(format!(
            "denominator of {} divisible by prime {}",
            r, p
        )));
    }
    let _ = pb;
    Ok(mul_mod(num, inv_mod(den, p), p))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_traits::ToPrimitive;
        let m = self % BigInt::from(p);
        let m = if m.is_negative() { m + BigInt::from(p) } else { m };
        m.to_u64().expect("residue fits in u64")
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "division by zero mod {}", p);
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    if n % 2 == 0 {
        n += 1;
    }
    while !is_prime_u64(n) {
        n += 2;
    }
    n
}

/// An element of the session coefficient field.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
    /// Fraction of parameter polynomials; the polynomials have `Rat` or `Fp`
    /// coefficients and live in the parameter ring.
    Fun(Box<RatFun>),
}

/// A reduced fraction num/den of polynomials in the parameter variables.
#[derive(Debug, Clone)]
pub struct RatFun {
    pub num: Polynomial,
    pub den: Polynomial,
    pub params: usize,
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Fun(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
            Scalar::Fun(f) => f.num == f.den,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
            Scalar::Fun(f) => match f.num.any_scalar() {
                Some(Scalar::Fp { p, .. }) => FieldSpec::FunFp { p: *p, params: f.params },
                _ => FieldSpec::FunQ { params: f.params },
            },
        }
    }

    fn fun_from_scalar(base: Scalar, params: usize) -> Scalar {
        let num = Polynomial::constant(params, base);
        let den = Polynomial::one_of(params, &num.any_scalar().map(|s| s.field()).unwrap_or(FieldSpec::Q));
        Scalar::Fun(Box::new(RatFun { num, den, params }))
    }

    /// Promote a base-field scalar into the fraction field with `params` parameters.
    pub fn into_fun(self, params: usize) -> Scalar {
        match self {
            s @ Scalar::Fun(_) => s,
            s => Scalar::fun_from_scalar(s, params),
        }
    }

    /// Build a fraction from parameter polynomials (reduces and normalizes).
    pub fn fun(num: Polynomial, den: Polynomial, params: usize) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        Scalar::Fun(Box::new(RatFun::reduced(num, den, params)))
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => {
                assert_eq!(p, q, "mixed primes");
                Scalar::Fp { val: (a + b) % p, p: *p }
            }
            (Scalar::Fun(a), Scalar::Fun(b)) => {
                assert_eq!(a.params, b.params, "mixed parameter rings");
                let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
                let den = a.den.mul(&b.den);
                Scalar::Fun(Box::new(RatFun::reduced(num, den, a.params)))
            }
            _ => panic!("mixed scalar fields: {:?} vs {:?}", self.field(), o.field()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => Scalar::Fp { val: if *val == 0 { 0 } else { p - val }, p: *p },
            Scalar::Fun(a) => Scalar::Fun(Box::new(RatFun {
                num: a.num.neg(),
                den: a.den.clone(),
                params: a.params,
            })),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => {
                assert_eq!(p, q, "mixed primes");
                Scalar::Fp { val: mul_mod(*a, *b, *p), p: *p }
            }
            (Scalar::Fun(a), Scalar::Fun(b)) => {
                assert_eq!(a.params, b.params, "mixed parameter rings");
                Scalar::Fun(Box::new(RatFun::reduced(
                    a.num.mul(&b.num),
                    a.den.mul(&b.den),
                    a.params,
                )))
            }
            _ => panic!("mixed scalar fields: {:?} vs {:?}", self.field(), o.field()),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Fp { val, p } => {
                assert!(*val != 0, "inverse of zero");
                Scalar::Fp { val: inv_mod(*val, *p), p: *p }
            }
            Scalar::Fun(a) => {
                assert!(!a.num.is_zero(), "inverse of zero");
                Scalar::Fun(Box::new(RatFun::reduced(
                    a.den.clone(),
                    a.num.clone(),
                    a.params,
                )))
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    /// Reduce a rational scalar modulo `p` (used by cross-field verification).
    pub fn to_fp(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => Ok(Scalar::Fp { val: fp_from_rat(r, p)?, p }),
            Scalar::Fp { .. } => Err(EngineError::FieldMismatch(
                "already a prime-field scalar".into(),
            )),
            Scalar::Fun(_) => Err(EngineError::FieldMismatch(
                "cannot reduce a function-field scalar".into(),
            )),
        }
    }

    /// The rational value, if that is what this scalar carries.
    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_fun(&self) -> Option<&RatFun> {
        match self {
            Scalar::Fun(f) => Some(f),
            _ => None,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => p == q && a == b,
            (Scalar::Fun(a), Scalar::Fun(b)) => {
                // Fractions are kept reduced only when there is one parameter,
                // so compare by cross-multiplication.
                a.params == b.params && a.num.mul(&b.den) == b.num.mul(&a.den)
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl RatFun {
    /// Normalize: strip rational content, reduce by the univariate gcd when
    /// there is a single parameter, and scale the denominator's canonical
    /// leading coefficient to one.
    fn reduced(num: Polynomial, den: Polynomial, params: usize) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let field = den.any_scalar().expect("nonzero").field();
            return RatFun {
                num,
                den: Polynomial::one_of(params, &field),
                params,
            };
        }
        let (mut num, mut den) = (num, den);
        if params == 1 {
            let g = univariate_gcd(&num, &den);
            if g.total_degree() > 0 {
                num = univariate_exact_div(&num, &g);
                den = univariate_exact_div(&den, &g);
            }
        }
        // Scale so the denominator has leading coefficient 1.
        let lc = den.leading_coeff_canonical().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den, params }
    }
}

/// Euclidean gcd of univariate polynomials over a field, normalized monic.
pub fn univariate_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert!(a.nvars() == 1 && b.nvars() == 1);
    let field = a
        .any_scalar()
        .or_else(|| b.any_scalar())
        .expect("gcd of zeros")
        .field();
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let r2 = univariate_rem(&r0, &r1);
        r0 = r1;
        r1 = r2;
    }
    if r0.is_zero() {
        return Polynomial::one_of(1, &field);
    }
    let lc = r0.leading_coeff_canonical().unwrap().clone();
    r0.scale(&lc.inv())
}

fn univariate_rem(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let db = b.total_degree();
    let lcb = b.leading_coeff_canonical().expect("nonzero divisor").clone();
    let mut r = a.clone();
    while !r.is_zero() && r.total_degree() >= db {
        let dr = r.total_degree();
        let lcr = r.leading_coeff_canonical().unwrap().clone();
        let q = lcr.div(&lcb);
        let shift = Polynomial::monomial_term(1, &[(dr - db) as u16], q);
        r = r.sub(&shift.mul(b));
    }
    r
}

fn univariate_exact_div(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let db = b.total_degree();
    let lcb = b.leading_coeff_canonical().expect("nonzero divisor").clone();
    let mut r = a.clone();
    let mut q = Polynomial::zero(1);
    while !r.is_zero() {
        let dr = r.total_degree();
        assert!(dr >= db, "non-exact division");
        let lcr = r.leading_coeff_canonical().unwrap().clone();
        let c = lcr.div(&lcb);
        let term = Polynomial::monomial_term(1, &[(dr - db) as u16], c);
        r = r.sub(&term.mul(b));
        q = q.add(&term);
    }
    q
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Fp { val, .. } => write!(f, "{}", val),
            Scalar::Fun(fun) => {
                if fun.den.is_constant_one() {
                    write!(f, "{}", fun.num.display_generic())
                } else {
                    write!(f, "({})/({})", fun.num.display_generic(), fun.den.display_generic())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_utilities() {
        assert!(is_prime_u64(1_073_741_827)); // 2^30 + 3
        assert!(!is_prime_u64(1_073_741_825));
        assert_eq!(next_prime(1 << 30), 1_073_741_827);
    }

    #[test]
    fn fp_embeds_rationals() {
        let p = 1_073_741_827u64;
        let f = FieldSpec::Fp(p);
        let half = f
            .scalar_from_rat(&BigRational::new(BigInt::from(1), BigInt::from(2)))
            .unwrap();
        let two = f.scalar_from_i64(2);
        assert!(half.mul(&two).is_one());
    }

    #[test]
    fn fp_rejects_bad_denominator() {
        let p = 1_073_741_827u64;
        let f = FieldSpec::Fp(p);
        let r = BigRational::new(BigInt::from(1), BigInt::from(p));
        assert!(matches!(
            f.scalar_from_rat(&r),
            Err(EngineError::FieldMismatch(_))
        ));
    }
}
