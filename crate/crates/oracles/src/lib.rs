//! Independent cross-check oracles for the test suites.
//!
//! Nothing here calls the standard-basis engine: colengths come from
//! truncated Macaulay matrices (plain linear algebra with a Nakayama-type
//! stabilization certificate), Samuel multiplicities of plane monomial
//! ideals come from Newton polygon areas, staircase counts come from
//! inclusion-exclusion, and quasihomogeneous Milnor numbers come from the
//! weight formula. Only the polynomial arithmetic layer is shared.

use equising_core::monomial::Monomial;
use equising_core::poly::Polynomial;
use equising_core::scalar::Scalar;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use std::collections::BTreeMap;

/// Colength of a submodule of `O^rank` at the origin (ring equations folded
/// in), computed by row-reducing the multiplication-by-generators matrix on
/// the ring truncated modulo all monomials of degree >= N.
///
/// The truncated dimension `dim O^rank / (M + m^N)` is nondecreasing in `N`
/// and one repeat `dim(N+1) = dim(N)` proves `m^N * O^rank` lies in `M`, so
/// the value has stabilized. Returns `None` if no stabilization occurs below
/// `max_trunc`.
pub fn macaulay_colength(
    gens: &[Vec<Polynomial>],
    rank: usize,
    nvars: usize,
    ring_eqs: &[Polynomial],
    max_trunc: usize,
) -> Option<u64> {
    let mut all_gens: Vec<Vec<Polynomial>> = gens
        .iter()
        .filter(|g| g.iter().any(|p| !p.is_zero()))
        .cloned()
        .collect();
    for eq in ring_eqs {
        if eq.is_zero() {
            continue;
        }
        for c in 0..rank {
            let mut v = vec![Polynomial::zero(nvars); rank];
            v[c] = eq.clone();
            all_gens.push(v);
        }
    }
    let mut prev: Option<u64> = None;
    let mut n = 2usize;
    while n <= max_trunc {
        let d = truncated_quotient_dim(&all_gens, rank, nvars, n);
        if prev == Some(d) {
            return Some(d);
        }
        prev = Some(d);
        n += 1;
    }
    None
}

fn monomials_below(nvars: usize, deg: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    loop {
        let total: usize = exps.iter().map(|&e| e as usize).sum();
        if total < deg {
            out.push(Monomial::from_exps(&exps));
        }
        let mut v = 0;
        loop {
            if v == nvars {
                return out;
            }
            exps[v] += 1;
            if (exps[v] as usize) < deg {
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
}

fn truncated_quotient_dim(
    gens: &[Vec<Polynomial>],
    rank: usize,
    nvars: usize,
    trunc: usize,
) -> u64 {
    let monos = monomials_below(nvars, trunc);
    let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for c in 0..rank {
        for m in &monos {
            let idx = row_index.len();
            row_index.insert((c, m.clone()), idx);
        }
    }
    let nrows = row_index.len();
    let mut pivots: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    let mut rank_count = 0usize;
    for g in gens {
        for mult in &monos {
            // column = mult * g, truncated at degree < trunc
            let mut col: Vec<(usize, Scalar)> = Vec::new();
            for (c, p) in g.iter().enumerate() {
                for (m, s) in p.terms() {
                    let mm = m.mul(mult);
                    if (mm.degree() as usize) < trunc {
                        col.push((row_index[&(c, mm)], s.clone()));
                    }
                }
            }
            if col.is_empty() {
                continue;
            }
            col.sort_by_key(|(r, _)| *r);
            let mut merged: Vec<(usize, Scalar)> = Vec::new();
            for (r, s) in col {
                match merged.last_mut() {
                    Some((lr, ls)) if *lr == r => {
                        let sum = ls.add(&s);
                        if sum.is_zero() {
                            merged.pop();
                        } else {
                            *ls = sum;
                        }
                    }
                    _ => merged.push((r, s)),
                }
            }
            let mut col = merged;
            loop {
                let Some(lead) = col.first().map(|(r, _)| *r) else { break };
                let Some(pivot) = pivots.get(&lead) else { break };
                let factor = col[0].1.clone(); // pivot columns are monic at lead
                col = sparse_axpy(&col, pivot, &factor.neg());
            }
            if let Some((lead, lc)) = col.first().map(|(r, s)| (*r, s.clone())) {
                let inv = lc.inv();
                let monic: Vec<(usize, Scalar)> =
                    col.iter().map(|(r, s)| (*r, s.mul(&inv))).collect();
                pivots.insert(lead, monic);
                rank_count += 1;
            }
        }
    }
    (nrows - rank_count) as u64
}

fn sparse_axpy(
    a: &[(usize, Scalar)],
    b: &[(usize, Scalar)],
    factor: &Scalar,
) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let s = b[j].1.mul(factor);
                if !s.is_zero() {
                    out.push((b[j].0, s));
                }
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let s = a[i].1.add(&b[j].1.mul(factor));
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (r, s) in &b[j..] {
        let s = s.mul(factor);
        if !s.is_zero() {
            out.push((*r, s));
        }
    }
    out
}

/// Samuel multiplicity of a cofinite monomial ideal in two variables: twice
/// the area between the axes and the Newton polygon. `None` when the ideal
/// misses a pure power on either axis.
pub fn newton_polygon_multiplicity(exponents: &[(u64, u64)]) -> Option<u64> {
    let px = exponents.iter().filter(|(_, y)| *y == 0).map(|(x, _)| *x).min()?;
    let qy = exponents.iter().filter(|(x, _)| *x == 0).map(|(_, y)| *y).min()?;
    let mut pts: Vec<(i64, i64)> = exponents
        .iter()
        .map(|&(x, y)| (x as i64, y as i64))
        .filter(|&(x, y)| {
            !exponents
                .iter()
                .any(|&(a, b)| (a as i64, b as i64) != (x, y) && a as i64 <= x && b as i64 <= y)
        })
        .collect();
    pts.sort();
    pts.dedup();
    // lower convex chain, scanned by increasing x
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut poly: Vec<(i64, i64)> = vec![(0, 0), (px as i64, 0)];
    for p in hull.iter().rev() {
        if *p != (px as i64, 0) && *p != (0, qy as i64) {
            poly.push(*p);
        }
    }
    poly.push((0, qy as i64));
    let mut twice_area: i64 = 0;
    for i in 0..poly.len() {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % poly.len()];
        twice_area += x1 * y2 - x2 * y1;
    }
    Some(twice_area.unsigned_abs())
}

/// Monomials outside the ideal generated by the given exponent vectors, via
/// inclusion-exclusion over the bounding box cut by pure powers. `None` when
/// infinite.
pub fn staircase_inclusion_exclusion(gens: &[Vec<u16>], nvars: usize) -> Option<u64> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Some(0);
    }
    if nvars == 0 {
        return Some(1);
    }
    assert!(gens.len() <= 20, "inclusion-exclusion oracle capped at 20 generators");
    let mut bound = vec![0u64; nvars];
    for v in 0..nvars {
        let pure = gens
            .iter()
            .filter(|g| g[v] > 0 && (0..nvars).all(|w| w == v || g[w] == 0))
            .map(|g| g[v] as u64)
            .min()?;
        bound[v] = pure;
    }
    let box_size: u64 = bound.iter().product();
    let mut outside: i128 = box_size as i128;
    for mask in 1u32..(1 << gens.len()) {
        let mut lcm = vec![0u16; nvars];
        for (i, g) in gens.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for v in 0..nvars {
                    lcm[v] = lcm[v].max(g[v]);
                }
            }
        }
        let mut cone: u64 = 1;
        for v in 0..nvars {
            cone = cone.saturating_mul(bound[v].saturating_sub(lcm[v] as u64));
        }
        let sign = if mask.count_ones() % 2 == 1 { -1i128 } else { 1 };
        outside += sign * cone as i128;
    }
    Some(outside as u64)
}

/// Milnor number of a quasihomogeneous isolated singularity with the given
/// weights and weighted degree: the product of `(degree - w) / w`.
pub fn milnor_quasihomogeneous(weights: &[u64], degree: u64) -> Option<u64> {
    let mut acc = BigRational::one();
    for &w in weights {
        if w == 0 || degree <= w {
            return None;
        }
        acc *= BigRational::new((degree - w).into(), w.into());
    }
    if !acc.denom().is_one() || acc.is_negative() {
        return None;
    }
    acc.to_integer().to_u64()
}

/// Weighted-degree check: if every term of `p` has the same weighted degree,
/// return it.
pub fn quasihomogeneous_degree(p: &Polynomial, weights: &[u64]) -> Option<u64> {
    let mut deg: Option<u64> = None;
    for (m, _) in p.terms() {
        let d: u64 = m
            .0
            .iter()
            .zip(weights.iter())
            .map(|(&e, &w)| e as u64 * w)
            .sum();
        match deg {
            None => deg = Some(d),
            Some(x) if x == d => {}
            _ => return None,
        }
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;
    use equising_core::parse::parse_poly;
    use equising_core::ring::Ring;
    use equising_core::scalar::FieldSpec;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.iter().map(|s| s.to_string()).collect(), FieldSpec::Q)
    }

    #[test]
    fn newton_examples() {
        assert_eq!(newton_polygon_multiplicity(&[(2, 0), (0, 2)]), Some(4));
        assert_eq!(newton_polygon_multiplicity(&[(3, 0), (2, 1), (1, 2), (0, 3)]), Some(9));
        assert_eq!(newton_polygon_multiplicity(&[(2, 0), (1, 1), (0, 3)]), Some(5));
        assert_eq!(newton_polygon_multiplicity(&[(5, 0), (4, 1), (1, 3), (0, 4)]), Some(19));
        assert_eq!(newton_polygon_multiplicity(&[(2, 0)]), None);
    }

    #[test]
    fn staircase_examples() {
        assert_eq!(staircase_inclusion_exclusion(&[vec![2, 0], vec![0, 3]], 2), Some(6));
        assert_eq!(
            staircase_inclusion_exclusion(&[vec![1, 1], vec![0, 2], vec![4, 0]], 2),
            Some(5)
        );
        assert_eq!(staircase_inclusion_exclusion(&[vec![2, 0]], 2), None);
    }

    #[test]
    fn quasihomogeneous_formula() {
        // x^2 + y^3: weights (3, 2), degree 6
        assert_eq!(milnor_quasihomogeneous(&[3, 2], 6), Some(2));
        // the degree-15 surface with weights (1, 2, 3)
        assert_eq!(milnor_quasihomogeneous(&[1, 2, 3], 15), Some(364));
    }

    #[test]
    fn macaulay_simple_colengths() {
        let r = ring(&["x", "y"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let g = vec![vec![p("x^2")], vec![p("y^3")]];
        assert_eq!(macaulay_colength(&g, 1, 2, &[], 12), Some(6));
        let g = vec![vec![p("x*y")], vec![p("y^2 - x^3")]];
        assert_eq!(macaulay_colength(&g, 1, 2, &[], 12), Some(5));
        // a quotient ring case: (x2) over O/(x1^2 + x2^2) has colength 2
        let r2 = ring(&["x1", "x2"]);
        let q = |s: &str| parse_poly(s, &r2).unwrap();
        let g = vec![vec![q("x2")]];
        assert_eq!(macaulay_colength(&g, 1, 2, &[q("x1^2 + x2^2")], 12), Some(2));
    }

    #[test]
    fn macaulay_module_case() {
        // {(t, 0), (0, t)} in rank 2 over one variable: colength 2
        let r = ring(&["t"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let g = vec![vec![p("t"), p("0")], vec![p("0"), p("t")]];
        assert_eq!(macaulay_colength(&g, 2, 1, &[], 10), Some(2));
    }
}
