//! Small exact linear algebra: determinants and minors of scalar and
//! polynomial matrices.

use crate::poly::Polynomial;
use crate::scalar::Scalar;
use itertools::Itertools;

/// Determinant of a square scalar matrix by cofactor expansion.
pub fn scalar_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<Scalar> = None;
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut term = entry.mul(&scalar_det(&minor));
        if j % 2 == 1 {
            term = term.neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.unwrap_or_else(|| {
        // all entries in the first row were zero
        m[0][0].field().scalar_from_i64(0)
    })
}

/// Determinant of a square polynomial matrix by cofactor expansion.
pub fn poly_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(nvars);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&poly_det(&minor));
        if j % 2 == 1 {
            acc = acc.sub(&term);
        } else {
            acc = acc.add(&term);
        }
    }
    acc
}

/// All `size`-by-`size` minors of a rectangular polynomial matrix, zero
/// minors omitted.
pub fn maximal_minors(m: &[Vec<Polynomial>], size: usize) -> Vec<Polynomial> {
    if m.is_empty() {
        return Vec::new();
    }
    let rows = m.len();
    let cols = m[0].len();
    if size > rows || size > cols {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rsel in (0..rows).combinations(size) {
        for csel in (0..cols).combinations(size) {
            let sub: Vec<Vec<Polynomial>> = rsel
                .iter()
                .map(|&r| csel.iter().map(|&c| m[r][c].clone()).collect())
                .collect();
            let d = poly_det(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// Invert a square scalar matrix by Gauss-Jordan; `None` when singular.
pub fn scalar_inverse(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let field = m[0][0].field();
    let one = field.scalar_from_i64(1);
    let zero = field.scalar_from_i64(0);
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { one.clone() } else { zero.clone() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = a[col][col].inv();
        for j in 0..n {
            a[col][j] = a[col][j].mul(&pinv);
            inv[col][j] = inv[col][j].mul(&pinv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = a[col][j].mul(&f);
                a[r][j] = a[r][j].sub(&t);
                let t = inv[col][j].mul(&f);
                inv[r][j] = inv[r][j].sub(&t);
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    #[test]
    fn det_2x2() {
        let q = |n: i64| FieldSpec::Q.scalar_from_i64(n);
        let m = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(scalar_det(&m), q(-2));
    }

    #[test]
    fn inverse_roundtrip() {
        let q = |n: i64| FieldSpec::Q.scalar_from_i64(n);
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = scalar_inverse(&m).unwrap();
        // m * inv = id
        for i in 0..2 {
            for j in 0..2 {
                let mut s = FieldSpec::Q.scalar_from_i64(0);
                for k in 0..2 {
                    s = s.add(&m[i][k].mul(&inv[k][j]));
                }
                assert_eq!(s, q(if i == j { 1 } else { 0 }));
            }
        }
    }
}
