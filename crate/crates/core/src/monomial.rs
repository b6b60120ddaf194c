//! Dense exponent vectors and the two monomial orders used by the engine.

use smallvec::SmallVec;
use std::cmp::Ordering;

/// A monomial as a dense vector of exponents, one per active variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u16; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), o.nvars());
        Monomial(
            self.0
                .iter()
                .zip(o.0.iter())
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), o.nvars());
        self.0.iter().zip(o.0.iter()).all(|(&a, &b)| a <= b)
    }

    /// `o / self`; caller must ensure divisibility.
    pub fn div_into(&self, o: &Monomial) -> Monomial {
        debug_assert!(self.divides(o));
        Monomial(self.0.iter().zip(o.0.iter()).map(|(&a, &b)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(o.0.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd_is_one(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(&a, &b)| a.min(b) == 0)
    }
}

/// Monomial order kinds: one global, one local.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Graded reverse lexicographic; 1 is the smallest monomial.
    GlobalGrevlex,
    /// Anti-graded reverse lexicographic; 1 is the largest monomial, the
    /// leading term of a polynomial has minimal total degree.
    LocalAntiGrevlex,
}

/// A monomial order together with a variable priority permutation.
///
/// `priority[i]` is the i-th most significant variable index; the reverse-lex
/// tie break scans the permuted exponents from the least significant end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub priority: Option<Vec<usize>>,
}

impl TermOrder {
    pub fn global(nvars: usize) -> Self {
        let _ = nvars;
        TermOrder { kind: OrderKind::GlobalGrevlex, priority: None }
    }

    pub fn local(nvars: usize) -> Self {
        let _ = nvars;
        TermOrder { kind: OrderKind::LocalAntiGrevlex, priority: None }
    }

    pub fn is_global(&self) -> bool {
        self.kind == OrderKind::GlobalGrevlex
    }

    /// Total order on monomials of a common ring.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        let (da, db) = (a.degree(), b.degree());
        let bydeg = match self.kind {
            OrderKind::GlobalGrevlex => da.cmp(&db),
            OrderKind::LocalAntiGrevlex => db.cmp(&da),
        };
        if bydeg != Ordering::Equal {
            return bydeg;
        }
        // Reverse-lex tie break: the last nonzero entry of a - b under the
        // priority permutation decides; negative means a is greater.
        match &self.priority {
            None => revlex_tail(a.0.iter().copied(), b.0.iter().copied(), a.nvars()),
            Some(p) => revlex_tail(
                p.iter().map(|&i| a.0[i]),
                p.iter().map(|&i| b.0[i]),
                p.len(),
            ),
        }
    }
}

fn revlex_tail(
    a: impl Iterator<Item = u16>,
    b: impl Iterator<Item = u16>,
    n: usize,
) -> Ordering {
    let av: SmallVec<[u16; 16]> = a.collect();
    let bv: SmallVec<[u16; 16]> = b.collect();
    for i in (0..n).rev() {
        if av[i] != bv[i] {
            // smaller exponent at the last differing place wins
            return bv[i].cmp(&av[i]);
        }
    }
    Ordering::Equal
}

/// Canonical storage comparator for polynomial term lists (global grevlex,
/// identity priority). Independent of the session order.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (da, db) = (a.degree(), b.degree());
    if da != db {
        return da.cmp(&db);
    }
    revlex_tail(a.0.iter().copied(), b.0.iter().copied(), a.nvars())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn local_order_one_beats_x() {
        let ord = TermOrder::local(2);
        assert_eq!(ord.compare(&m(&[0, 0]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn global_grevlex_x_beats_y() {
        let ord = TermOrder::global(2);
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn local_tie_break_is_total() {
        let ord = TermOrder::local(2);
        let c = ord.compare(&m(&[2, 0]), &m(&[1, 1]));
        assert_ne!(c, Ordering::Equal);
        // deterministic and antisymmetric
        assert_eq!(ord.compare(&m(&[1, 1]), &m(&[2, 0])), c.reverse());
    }

    #[test]
    fn orders_respect_multiplication() {
        let ordg = TermOrder::global(3);
        let ordl = TermOrder::local(3);
        let a = m(&[1, 2, 0]);
        let b = m(&[0, 1, 1]);
        let c = m(&[3, 0, 2]);
        for ord in [&ordg, &ordl] {
            let ab = ord.compare(&a, &b);
            assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), ab);
        }
    }
}
