//! Exact multivariate polynomials: a sorted term list over a session field.
//!
//! Terms are kept sorted in descending canonical (grevlex) order, zero
//! coefficients are never stored, and two polynomials are equal iff their
//! term lists are equal.

use crate::error::{EngineError, Result};
use crate::monomial::{canonical_cmp, Monomial, TermOrder};
use crate::scalar::{FieldSpec, Scalar};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    /// Sorted descending by `canonical_cmp`; coefficients nonzero.
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn one_of(nvars: usize, field: &FieldSpec) -> Self {
        Self::constant(nvars, field.one())
    }

    pub fn var(nvars: usize, i: usize, field: &FieldSpec) -> Self {
        Polynomial { nvars, terms: vec![(Monomial::var(nvars, i), field.one())] }
    }

    pub fn monomial_term(nvars: usize, exps: &[u16], c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(Monomial::from_exps(exps), c)] }
    }

    /// Build from unsorted terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut map: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = map.into_iter().collect();
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_constant_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_part(&self) -> Option<&Scalar> {
        self.terms.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    /// Any coefficient, used to recover the session field.
    pub fn any_scalar(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Minimal total degree over the terms (the order of vanishing at 0).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// Coefficient of the canonically largest term.
    pub fn leading_coeff_canonical(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Leading term with respect to an arbitrary order.
    pub fn leading_term(&self, ord: &TermOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.compare(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, o.nvars, "ring mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            match canonical_cmp(&self.terms[i].0, &o.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(o.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = self.terms[i].1.add(&o.terms[j].1);
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, s)| (m.clone(), s.mul(c))).collect(),
        }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, s)| (mm.mul(m), s.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, o.nvars, "ring mismatch");
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&c);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().collect();
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        if e == 0 {
            let field = self
                .any_scalar()
                .map(|s| s.field())
                .unwrap_or(FieldSpec::Q);
            return Polynomial::one_of(self.nvars, &field);
        }
        let mut base = self.clone();
        let mut acc: Option<Polynomial> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    /// Exact formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Result<Polynomial> {
        if v >= self.nvars {
            return Err(EngineError::RingMismatch(format!(
                "variable index {} out of range (nvars = {})",
                v, self.nvars
            )));
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[v] = e - 1;
            let factor = c.field().scalar_from_i64(e as i64);
            let c2 = c.mul(&factor);
            if !c2.is_zero() {
                terms.push((m2, c2));
            }
        }
        Ok(Polynomial::from_terms(self.nvars, terms))
    }

    /// Simultaneous substitution: variable `i` is replaced by `images[i]`,
    /// all of which live in a common target ring.
    pub fn substitute(&self, images: &[Polynomial], target_nvars: usize) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(EngineError::RingMismatch(format!(
                "{} images given for {} variables",
                images.len(),
                self.nvars
            )));
        }
        for im in images {
            if im.nvars() != target_nvars {
                return Err(EngineError::RingMismatch(
                    "substitution images live in different rings".into(),
                ));
            }
        }
        let mut pow_cache: Vec<HashMap<u16, Polynomial>> = vec![HashMap::new(); self.nvars];
        let mut out = Polynomial::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target_nvars, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if acc.is_zero() {
                    break;
                }
                let p = pow_cache[v]
                    .entry(e)
                    .or_insert_with(|| images[v].pow(e as u32))
                    .clone();
                acc = acc.mul(&p);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Reinterpret in a larger ring: new variables are appended at the end.
    pub fn pad_vars(&self, new_nvars: usize) -> Polynomial {
        assert!(new_nvars >= self.nvars);
        Polynomial {
            nvars: new_nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(new_nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Apply a scalar map to every coefficient (field changes).
    pub fn map_scalars(
        &self,
        f: &mut dyn FnMut(&Scalar) -> Result<Scalar>,
    ) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c2 = f(c)?;
            if !c2.is_zero() {
                terms.push((m.clone(), c2));
            }
        }
        Ok(Polynomial::from_terms(self.nvars, terms))
    }

    /// Render with the given variable names; parseable by the expression
    /// grammar and canonical (used for golden output).
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            // Function-field coefficients print parenthesized to stay parseable.
            let coeff_str = if mag.contains(['+', '-', '/', ' ']) && !is_plain_rational(&mag) {
                format!("({})", mag)
            } else {
                mag.clone()
            };
            let coeff_is_one = mag == "1";
            if !coeff_is_one || m.is_one() {
                factors.push(coeff_str);
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    factors.push(names[v].clone());
                } else {
                    factors.push(format!("{}^{}", names[v], e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Render with placeholder parameter names (used for fraction-field
    /// coefficients, which always live in the parameter ring).
    pub fn display_generic(&self) -> String {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("y{}", i + 1)).collect();
        self.display_with(&names)
    }
}

fn is_plain_rational(s: &str) -> bool {
    let mut parts = s.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let den = parts.next();
    num.chars().all(|c| c.is_ascii_digit())
        && den.map_or(true, |d| d.chars().all(|c| c.is_ascii_digit()))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        FieldSpec::Q.scalar_from_i64(n)
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let c = Polynomial::constant(2, q(5));
        assert!(c.derivative(0).unwrap().is_zero());
    }

    #[test]
    fn derivative_basic() {
        // d(x^3 + y^3)/dx = 3x^2
        let x3 = Polynomial::monomial_term(2, &[3, 0], q(1));
        let y3 = Polynomial::monomial_term(2, &[0, 3], q(1));
        let p = x3.add(&y3);
        let d = p.derivative(0).unwrap();
        assert_eq!(d, Polynomial::monomial_term(2, &[2, 0], q(3)));
    }

    #[test]
    fn substitution_linear_change() {
        // x^2 - y^2 with x -> u+v, y -> u-v gives 4uv
        let p = Polynomial::monomial_term(2, &[2, 0], q(1))
            .add(&Polynomial::monomial_term(2, &[0, 2], q(-1)));
        let u = Polynomial::var(2, 0, &FieldSpec::Q);
        let v = Polynomial::var(2, 1, &FieldSpec::Q);
        let img = [u.add(&v), u.sub(&v)];
        let s = p.substitute(&img, 2).unwrap();
        assert_eq!(s, Polynomial::monomial_term(2, &[1, 1], q(4)));
    }
}
