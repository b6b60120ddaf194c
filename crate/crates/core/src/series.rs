//! Truncated power series in one variable, with explicit precision tracking.
//!
//! A series knows its coefficients of `u^0 .. u^prec`; dividing by a power of
//! `u` loses that much precision. All arithmetic is exact on the retained
//! window.

use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries {
    /// `coeffs[j]` is the coefficient of `u^j`; length is `prec + 1`.
    pub coeffs: Vec<Option<Scalar>>,
    pub prec: usize,
}

// `Option<Scalar>` avoids materializing zeros of an unknown field; `None`
// means the coefficient is zero.

impl TruncSeries {
    pub fn zero(prec: usize) -> Self {
        TruncSeries { coeffs: vec![None; prec + 1], prec }
    }

    pub fn monomial(c: Scalar, e: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if e <= prec && !c.is_zero() {
            s.coeffs[e] = Some(c);
        }
        s
    }

    pub fn constant(c: Scalar, prec: usize) -> Self {
        Self::monomial(c, 0, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_none())
    }

    /// Order of the first nonzero coefficient, if any is visible.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.is_some())
    }

    pub fn coeff(&self, j: usize) -> Option<&Scalar> {
        self.coeffs.get(j).and_then(|c| c.as_ref())
    }

    fn truncate(mut self, prec: usize) -> Self {
        self.coeffs.truncate(prec + 1);
        self.prec = prec;
        self
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        let prec = self.prec.min(o.prec);
        let mut out = TruncSeries::zero(prec);
        for j in 0..=prec {
            out.coeffs[j] = match (self.coeff(j), o.coeff(j)) {
                (None, None) => None,
                (Some(a), None) => Some(a.clone()),
                (None, Some(b)) => Some(b.clone()),
                (Some(a), Some(b)) => {
                    let s = a.add(b);
                    if s.is_zero() {
                        None
                    } else {
                        Some(s)
                    }
                }
            };
        }
        out
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.as_ref().map(|s| s.neg())).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        let prec = self.prec.min(o.prec);
        let mut out = TruncSeries::zero(prec);
        for (i, a) in self.coeffs.iter().enumerate() {
            let Some(a) = a else { continue };
            if i > prec {
                break;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j > prec {
                    break;
                }
                let Some(b) = b else { continue };
                let prod = a.mul(b);
                out.coeffs[i + j] = match out.coeffs[i + j].take() {
                    None => {
                        if prod.is_zero() {
                            None
                        } else {
                            Some(prod)
                        }
                    }
                    Some(c) => {
                        let s = c.add(&prod);
                        if s.is_zero() {
                            None
                        } else {
                            Some(s)
                        }
                    }
                };
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TruncSeries {
        if c.is_zero() {
            return TruncSeries::zero(self.prec);
        }
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.as_ref().map(|s| s.mul(c))).collect(),
            prec: self.prec,
        }
    }

    pub fn pow(&self, e: u32, prec: usize) -> TruncSeries {
        let field = self.any_field().unwrap_or(FieldSpec::Q);
        let mut acc = TruncSeries::constant(field.one(), prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc.truncate(prec.min(self.prec))
    }

    /// Shift down by `u^v` (exact; the first `v` coefficients must be zero).
    /// Precision drops by `v`.
    pub fn shift_down(&self, v: usize) -> TruncSeries {
        assert!(self.coeffs.iter().take(v).all(|c| c.is_none()), "inexact shift");
        TruncSeries {
            coeffs: self.coeffs[v..].to_vec(),
            prec: self.prec - v,
        }
    }

    /// Divide by a series of valuation 0 (unit), to the common precision.
    pub fn div_unit(&self, o: &TruncSeries) -> TruncSeries {
        let lead = o.coeff(0).expect("division by a non-unit series").clone();
        let prec = self.prec.min(o.prec);
        let inv_lead = lead.inv();
        let mut out = TruncSeries::zero(prec);
        let mut rem = self.clone().truncate(prec);
        for j in 0..=prec {
            let Some(c) = rem.coeff(j).cloned() else { continue };
            let q = c.mul(&inv_lead);
            out.coeffs[j] = Some(q.clone());
            // rem -= q * u^j * o
            let sub = o.clone().truncate(prec).scale(&q);
            let shifted = TruncSeries {
                coeffs: {
                    let mut v = vec![None; j];
                    v.extend(sub.coeffs.into_iter().take(prec + 1 - j));
                    v
                },
                prec,
            };
            rem = rem.sub(&shifted);
        }
        out
    }

    pub fn any_field(&self) -> Option<FieldSpec> {
        self.coeffs.iter().flatten().next().map(|s| s.field())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        FieldSpec::Q.scalar_from_i64(n)
    }

    #[test]
    fn mul_and_valuation() {
        let t2 = TruncSeries::monomial(q(1), 2, 6);
        let t3 = TruncSeries::monomial(q(1), 3, 6);
        let p = t2.mul(&t3);
        assert_eq!(p.valuation(), Some(5));
    }

    #[test]
    fn unit_division_roundtrip() {
        // (1 + u) * (1 - u + u^2 - ...) = 1
        let mut one_plus_u = TruncSeries::constant(q(1), 8);
        one_plus_u.coeffs[1] = Some(q(1));
        let one = TruncSeries::constant(q(1), 8);
        let inv = one.div_unit(&one_plus_u);
        let back = inv.mul(&one_plus_u);
        assert_eq!(back.valuation(), Some(0));
        assert!(back.sub(&one).is_zero());
    }

    #[test]
    fn shift_tracks_precision() {
        let t2 = TruncSeries::monomial(q(3), 2, 10);
        let s = t2.shift_down(2);
        assert_eq!(s.prec, 8);
        assert_eq!(s.valuation(), Some(0));
    }
}
