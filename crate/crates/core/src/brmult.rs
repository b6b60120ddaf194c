//! Buchsbaum-Rim multiplicities by two routes, polar multiplicities, and the
//! polar-formula evaluator for `e(m M)`.
//!
//! The ground truth is the Hilbert route: the colength of the degree-n piece
//! of the Rees algebra inside the symmetric algebra grows like
//! `e * n^(d+r-1) / (d+r-1)!`, and `e` is read off as the eventually constant
//! `(d+r-1)`-th finite difference. The minors route applies when the module
//! has exactly `d + r - 1` generators; the polar formula is a cross-check
//! with a runtime binomial convention (see `BinomialConvention`).

use crate::error::{EngineError, Result};
use crate::germ::{self, IcisGerm, JacobianModule};
use crate::linalg::maximal_minors;
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Polynomial;
use crate::rng::{agree_twice, random_invertible_matrix, Seed};
use crate::sb::{colength, Colength, ModuleVector, Submodule};
use crate::{BinomialConvention, Config};
use std::collections::HashMap;

/// Ambient data of a multiplicity computation: base dimension `d` and free
/// rank `r`; the Buchsbaum-Rim polynomial has degree `d + r - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleContext {
    pub d: usize,
    pub r: usize,
}

impl ModuleContext {
    pub fn new(d: usize, r: usize) -> Self {
        assert!(r >= 1);
        ModuleContext { d, r }
    }

    pub fn degree(&self) -> usize {
        self.d + self.r - 1
    }

    /// Context of a fiber Jacobian module: `d = a - k`, `r = k + 1`.
    pub fn of_germ(g: &IcisGerm) -> Self {
        ModuleContext::new(g.dim(), g.k() + 1)
    }
}

/// Monomials of degree `n` in `r` symbols, in a fixed deterministic order.
fn sym_basis(r: usize, n: usize) -> Vec<Monomial> {
    fn rec(r: usize, n: usize, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() == r - 1 {
            let mut e = prefix.clone();
            e.push(n as u16);
            out.push(Monomial::from_exps(&e));
            return;
        }
        for i in (0..=n).rev() {
            prefix.push(i as u16);
            rec(r, n - i, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    rec(r, n, &mut Vec::new(), &mut out);
    out
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Colength of the degree-`n` piece of the Rees algebra of `m` inside the
/// symmetric algebra of `O^r`: generators are all n-fold products of the
/// module generators, living in the free module on the degree-`n` symbol
/// monomials.
pub fn graded_colength(m: &Submodule, ctx: ModuleContext, n: usize, cfg: &Config) -> Result<u64> {
    assert_eq!(m.rank, ctx.r);
    if n == 0 {
        return Ok(0);
    }
    let r = ctx.r;
    let basis = sym_basis(r, n);
    let index: HashMap<Monomial, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let rank_n = basis.len();
    let s = m.gens.len();
    let multisets = binom(s + n - 1, n);
    if multisets > cfg.max_pairs {
        return Err(EngineError::ResourceLimit {
            what: "Rees-degree generator multisets",
            cap: cfg.max_pairs,
        });
    }
    // DFS over non-decreasing generator index sequences, reusing prefix
    // products. A symmetric-power element is a map from symbol monomials to
    // polynomial coefficients.
    type SymElem = Vec<(Monomial, Polynomial)>;
    fn mul_gen(elem: &SymElem, gen: &ModuleVector, r: usize) -> SymElem {
        let mut acc: HashMap<Monomial, Polynomial> = HashMap::new();
        for (beta, poly) in elem {
            for c in 0..r {
                let pc = gen.component(c);
                if pc.is_zero() {
                    continue;
                }
                let nb = beta.mul(&Monomial::var(r, c));
                let prod = poly.mul(pc);
                if prod.is_zero() {
                    continue;
                }
                acc.entry(nb)
                    .and_modify(|q| *q = q.add(&prod))
                    .or_insert(prod);
            }
        }
        acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }
    let nvars = m.nvars;
    let field = m
        .gens
        .iter()
        .flat_map(|g| g.comps())
        .find_map(|p| p.any_scalar().map(|s| s.field()))
        .unwrap_or(crate::scalar::FieldSpec::Q);
    let mut out: Vec<ModuleVector> = Vec::new();
    let mut seen: std::collections::HashSet<String> = std::collections::HashSet::new();
    let start: SymElem = vec![(
        Monomial::one(r),
        Polynomial::one_of(nvars, &field),
    )];
    let mut stack: Vec<(usize, usize, SymElem)> = vec![(0, 0, start)];
    while let Some((depth, min_idx, elem)) = stack.pop() {
        if depth == n {
            // assemble into the rank_n free module
            let mut comps = vec![Polynomial::zero(nvars); rank_n];
            for (beta, poly) in &elem {
                comps[index[beta]] = comps[index[beta]].add(poly);
            }
            let mut v = ModuleVector::new(comps);
            if v.is_zero() {
                continue;
            }
            // normalize the first nonzero leading coefficient to 1 so scalar
            // multiples deduplicate
            if let Some(lc) = v
                .comps()
                .iter()
                .find(|p| !p.is_zero())
                .and_then(|p| p.leading_coeff_canonical())
                .cloned()
            {
                let inv = lc.inv();
                v = ModuleVector::new(v.comps().iter().map(|p| p.scale(&inv)).collect());
            }
            let key = v
                .comps()
                .iter()
                .map(|p| format!("{}", p))
                .collect::<Vec<_>>()
                .join("|");
            if seen.insert(key) {
                out.push(v);
            }
            continue;
        }
        for g in (min_idx..s).rev() {
            let next = mul_gen(&elem, &m.gens[g], r);
            if !next.is_empty() {
                stack.push((depth + 1, g, next));
            }
        }
    }
    let sub = Submodule::new(out, rank_n, nvars, m.ring_eqs.clone());
    colength(&sub, &TermOrder::local(nvars), cfg)?
        .expect_finite("graded piece of the Rees algebra")
}

/// The Hilbert-route multiplicity: graded colengths until three consecutive
/// `(d+r-1)`-th finite differences agree.
pub fn br_multiplicity_hilbert(m: &Submodule, ctx: ModuleContext, cfg: &Config) -> Result<u64> {
    // finiteness gate
    colength(m, &TermOrder::local(m.nvars), cfg)?.expect_finite("module colength")?;
    let dd = ctx.degree();
    let mut table: Vec<u64> = vec![0]; // degree-0 piece is all of O
    for n in 1..=cfg.nmax {
        table.push(graded_colength(m, ctx, n, cfg)?);
        if table.len() >= dd + 3 {
            let diffs: Vec<i128> = (0..table.len() - dd)
                .map(|start| {
                    (0..=dd)
                        .map(|i| {
                            let sign = if i % 2 == 0 { 1i128 } else { -1 };
                            sign * binom(dd, i) as i128 * table[start + dd - i] as i128
                        })
                        .sum()
                })
                .collect();
            let l = diffs.len();
            if l >= 3 && diffs[l - 1] == diffs[l - 2] && diffs[l - 2] == diffs[l - 3] && diffs[l - 1] > 0 {
                return Ok(diffs[l - 1] as u64);
            }
        }
    }
    Err(EngineError::NoStabilization { nmax: cfg.nmax, table })
}

/// The minors route, valid when the module has exactly `d + r - 1`
/// generators: the colength of the ideal of maximal minors of the generator
/// matrix (ring equations folded in).
pub fn br_multiplicity_minors(m: &Submodule, ctx: ModuleContext, cfg: &Config) -> Result<u64> {
    if m.gens.len() != ctx.degree() {
        return Err(EngineError::Precondition(format!(
            "minors route needs exactly d + r - 1 = {} generators, found {}",
            ctx.degree(),
            m.gens.len()
        )));
    }
    // generator matrix: r rows (components) by s columns (generators)
    let matrix: Vec<Vec<Polynomial>> = (0..m.rank)
        .map(|c| m.gens.iter().map(|g| g.component(c).clone()).collect())
        .collect();
    let minors = maximal_minors(&matrix, m.rank);
    let mut gens = m.ring_eqs.clone();
    gens.extend(minors);
    let sub = Submodule::ideal(gens, m.nvars, Vec::new());
    colength(&sub, &TermOrder::local(m.nvars), cfg)?
        .expect_finite("minors ideal colength")
}

/// Product submodule: all products of ideal generators with module generators.
pub fn ideal_times_module(ideal_gens: &[Polynomial], m: &Submodule) -> Submodule {
    let mut gens = Vec::with_capacity(ideal_gens.len() * m.gens.len());
    for q in ideal_gens {
        if q.is_zero() {
            continue;
        }
        for g in &m.gens {
            let v = ModuleVector::new(g.comps().iter().map(|p| p.mul(q)).collect());
            if !v.is_zero() {
                gens.push(v);
            }
        }
    }
    Submodule::new(gens, m.rank, m.nvars, m.ring_eqs.clone())
}

/// The maximal-ideal generators `x_1..x_a` of a fiber ring.
pub fn maximal_ideal_gens(nvars: usize, field: &crate::scalar::FieldSpec) -> Vec<Polynomial> {
    (0..nvars).map(|i| Polynomial::var(nvars, i, field)).collect()
}

/// Multiplicity of the `i`-dimensional polar variety of `(X, f)` with a
/// random pole: the colength of the germ equations, the maximal minors of the
/// Jacobian matrix augmented by the pole rows, and the pole's linear forms.
/// For `i = a - k` this is the multiplicity of `X` at the origin. Two
/// independent poles must agree.
pub fn polar_multiplicity(g: &IcisGerm, i: usize, seed: Seed, cfg: &Config) -> Result<u64> {
    let d = g.dim();
    if i > d {
        return Err(EngineError::Precondition(format!(
            "polar dimension {} exceeds dim X = {}",
            i, d
        )));
    }
    if i == d {
        return germ::multiplicity_at_origin(g, seed.child(0xb0), cfg);
    }
    let f = g
        .function
        .as_ref()
        .ok_or_else(|| EngineError::Precondition("polar varieties need a function".into()))?;
    let field = g.field().clone();
    let a = g.a;
    let k = g.k();
    agree_twice(seed.child(0x90 + i as u64), cfg.retries, "polar multiplicity", |s| {
        let mut rng = s.rng();
        // i independent linear forms: rows of an invertible a x a draw
        let mat = random_invertible_matrix(&mut rng, a, &field, cfg.height)?;
        let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(k + 1 + i);
        for p in g.equations.iter().chain(std::iter::once(f)) {
            rows.push((0..a).map(|v| p.derivative(v)).collect::<Result<Vec<_>>>()?);
        }
        let mut linear_forms = Vec::with_capacity(i);
        for row in mat.iter().take(i) {
            rows.push(
                row.iter()
                    .map(|c| Polynomial::constant(a, c.clone()))
                    .collect(),
            );
            let mut form = Polynomial::zero(a);
            for (v, c) in row.iter().enumerate() {
                form = form.add(&Polynomial::var(a, v, &field).scale(c));
            }
            linear_forms.push(form);
        }
        let minors = maximal_minors(&rows, k + 1 + i);
        let mut gens = g.equations.clone();
        gens.extend(minors);
        gens.extend(linear_forms);
        let sub = Submodule::ideal(gens, a, Vec::new());
        match colength(&sub, &TermOrder::local(a), cfg)? {
            Colength::Finite(n) => Ok(n),
            Colength::Infinite => Err(EngineError::NotIsolated(format!(
                "polar section of dimension {} is not zero-dimensional",
                i
            ))),
        }
    })
}

/// `e(m M)` by the direct Hilbert route on the product module.
pub fn e_mm_direct(jm: &JacobianModule, ctx: ModuleContext, cfg: &Config) -> Result<u64> {
    let field = jm
        .columns
        .iter()
        .flat_map(|g| g.comps())
        .find_map(|p| p.any_scalar().map(|s| s.field()))
        .unwrap_or(crate::scalar::FieldSpec::Q);
    let m = jm.as_submodule();
    let mm = ideal_times_module(&maximal_ideal_gens(jm.nvars, &field), &m);
    br_multiplicity_hilbert(&mm, ctx, cfg)
}

/// `e(m M)` by the polar formula: the binomial-weighted sum of sectional
/// Milnor pairs. The upper binomial index is a runtime convention.
pub fn e_mm_polar_formula(
    g: &IcisGerm,
    convention: BinomialConvention,
    seed: Seed,
    cfg: &Config,
) -> Result<u64> {
    let (mux, muz) = germ::sectional_sequences(g, seed, cfg)?;
    let upper = match convention {
        BinomialConvention::AMinusOne => g.a - 1,
        BinomialConvention::A => g.a,
    };
    let mut acc: u64 = 0;
    for i in 0..mux.len() {
        acc += binom(upper, i) as u64 * (mux[i] + muz[i]);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_basis_sizes() {
        assert_eq!(sym_basis(2, 3).len(), 4);
        assert_eq!(sym_basis(3, 2).len(), 6);
        assert_eq!(sym_basis(1, 5).len(), 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(3, 0), 1);
        assert_eq!(binom(2, 3), 0);
    }
}
