//! Integral dependence of an element on a module, tested along analytic test
//! paths by valuations of truncated power series.
//!
//! A WITNESS is a path along which the pullback of the element cannot lie in
//! the pullback of the module (a valuation gap); it certifies that the
//! element is not integrally dependent. The absence of witnesses over a path
//! budget is only ever reported as "dependent to the observed order" -- the
//! criterion quantifies over all paths and the sampler is a heuristic.

use crate::error::{EngineError, Result};
use crate::germ::FamilyGerm;
use crate::poly::Polynomial;
use crate::rng::{random_rational, Seed};
use crate::sb::{ModuleVector, Submodule};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::TruncSeries;
use crate::Config;
use std::collections::HashMap;

/// A map germ `(C,0) -> (X,0)`: one truncated series per ambient coordinate,
/// constant terms zero, satisfying the ambient equations to truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct TestPath {
    pub components: Vec<TruncSeries>,
    pub order: usize,
    /// Human-readable origin of the path (monomial data or lift notes).
    pub label: String,
}

impl TestPath {
    /// Monomial path `x_i = c_i u^{e_i}` (components with `e_i = 0` are zero).
    pub fn monomial(coeffs: &[(Scalar, usize)], order: usize) -> TestPath {
        let components = coeffs
            .iter()
            .map(|(c, e)| {
                if *e == 0 || c.is_zero() {
                    TruncSeries::zero(order)
                } else {
                    TruncSeries::monomial(c.clone(), *e, order)
                }
            })
            .collect();
        let label = coeffs
            .iter()
            .map(|(c, e)| {
                if *e == 0 || c.is_zero() {
                    "0".to_string()
                } else if *e == 1 {
                    format!("{}*u", c)
                } else {
                    format!("{}*u^{}", c, e)
                }
            })
            .collect::<Vec<_>>()
            .join(", ");
        TestPath { components, order, label: format!("({})", label) }
    }

    pub fn is_constant(&self) -> bool {
        self.components.iter().all(|s| s.is_zero())
    }

    /// All components vanish at 0 by construction; verify against equations.
    pub fn lies_on(&self, equations: &[Polynomial]) -> Result<bool> {
        for eq in equations {
            if !pullback_poly(eq, self)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Substitute the path into a polynomial, truncating at the path order.
pub fn pullback_poly(p: &Polynomial, path: &TestPath) -> Result<TruncSeries> {
    if p.nvars() != path.components.len() {
        return Err(EngineError::RingMismatch(format!(
            "polynomial in {} variables pulled back along a path with {} components",
            p.nvars(),
            path.components.len()
        )));
    }
    let order = path.order;
    let mut pow_cache: Vec<HashMap<u16, TruncSeries>> = vec![HashMap::new(); p.nvars()];
    let mut acc = TruncSeries::zero(order);
    for (m, c) in p.terms() {
        let mut term = TruncSeries::constant(c.clone(), order);
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if term.is_zero() {
                break;
            }
            let p = pow_cache[v]
                .entry(e)
                .or_insert_with(|| path.components[v].pow(e as u32, order))
                .clone();
            term = term.mul(&p);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Pull back every component of a module vector.
pub fn pullback(v: &ModuleVector, path: &TestPath) -> Result<Vec<TruncSeries>> {
    v.comps().iter().map(|p| pullback_poly(p, path)).collect()
}

/// The outcome of a membership test over the truncated series ring.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesMembership {
    MemberToOrder(usize),
    Witness {
        component: usize,
        element_valuation: usize,
        module_valuation: Option<usize>,
        gap: usize,
    },
    Inconclusive(String),
}

/// Decide whether `g` is a combination of `gens` over the truncated power
/// series ring, by valuation-pivot triangularization. Precision lost to pivot
/// divisions is tracked; membership is only claimed up to the safety margin.
pub fn membership_over_series(
    g: &[TruncSeries],
    gens: &[Vec<TruncSeries>],
    margin: usize,
) -> SeriesMembership {
    let rank = g.len();
    let mut target: Vec<TruncSeries> = g.to_vec();
    let mut work: Vec<Vec<TruncSeries>> = gens
        .iter()
        .filter(|w| w.len() == rank)
        .cloned()
        .collect();
    let mut active: Vec<bool> = vec![true; work.len()];
    let mut comp_active: Vec<bool> = vec![true; rank];
    let mut precision = target.iter().map(|s| s.prec).min().unwrap_or(0);
    for w in &work {
        for s in w {
            precision = precision.min(s.prec);
        }
    }
    if precision <= margin {
        return SeriesMembership::Inconclusive("truncation smaller than the safety margin".into());
    }
    loop {
        // pick the pivot of minimal valuation among active generators/components
        let mut pivot: Option<(usize, usize, usize)> = None; // (val, gen, comp)
        for (gi, w) in work.iter().enumerate() {
            if !active[gi] {
                continue;
            }
            for (c, s) in w.iter().enumerate() {
                if !comp_active[c] {
                    continue;
                }
                if let Some(v) = s.valuation() {
                    if pivot.map_or(true, |(pv, pg, pc)| (v, c, gi) < (pv, pc, pg)) {
                        pivot = Some((v, gi, c));
                    }
                }
            }
        }
        let Some((v, gi, c)) = pivot else { break };
        if v > precision.saturating_sub(margin) {
            break; // remaining data too deep to use reliably
        }
        // the target must be at least as deep at this component
        let tv = target[c].valuation();
        if let Some(tv) = tv {
            if tv < v {
                return SeriesMembership::Witness {
                    component: c,
                    element_valuation: tv,
                    module_valuation: Some(v),
                    gap: v - tv,
                };
            }
        }
        // eliminate component c from the other generators and the target
        let pivot_comp = work[gi][c].clone();
        let unit = pivot_comp.shift_down(v);
        for oj in 0..work.len() {
            if oj == gi || !active[oj] {
                continue;
            }
            if let Some(ov) = work[oj][c].valuation() {
                debug_assert!(ov >= v);
                let q = work[oj][c].shift_down(v).div_unit(&unit);
                let w = work[gi].clone();
                for cc in 0..rank {
                    let t = w[cc].mul(&q);
                    work[oj][cc] = work[oj][cc].sub(&t);
                }
                let _ = ov;
            }
        }
        if target[c].valuation().is_some() {
            let q = target[c].shift_down(v).div_unit(&unit);
            let w = work[gi].clone();
            for cc in 0..rank {
                let t = w[cc].mul(&q);
                target[cc] = target[cc].sub(&t);
            }
        }
        precision = precision.min(target.iter().map(|s| s.prec).min().unwrap_or(precision));
        active[gi] = false;
        comp_active[c] = false;
    }
    let usable = precision.saturating_sub(margin);
    if usable == 0 {
        return SeriesMembership::Inconclusive("precision exhausted by pivot divisions".into());
    }
    for (c, s) in target.iter().enumerate() {
        if let Some(tv) = s.valuation() {
            if tv <= usable {
                // no remaining generator touches this component at this depth
                let module_val = work
                    .iter()
                    .zip(active.iter())
                    .filter(|(_, a)| **a)
                    .filter_map(|(w, _)| w[c].valuation())
                    .min();
                match module_val {
                    Some(mv) if mv <= tv => {
                        return SeriesMembership::Inconclusive(
                            "reduction stalled below the safety margin".into(),
                        )
                    }
                    _ => {
                        return SeriesMembership::Witness {
                            component: c,
                            element_valuation: tv,
                            module_valuation: module_val,
                            gap: module_val.map_or(usable - tv, |mv| mv - tv),
                        }
                    }
                }
            }
        }
    }
    SeriesMembership::MemberToOrder(usable)
}

/// Per-path outcome inside a dependence report.
#[derive(Debug, Clone, PartialEq)]
pub struct PathOutcome {
    pub label: String,
    pub membership: SeriesMembership,
}

/// Aggregated verdict of the curve criterion over a list of paths.
#[derive(Debug, Clone, PartialEq)]
pub enum DependenceVerdict {
    DependentToOrder(usize),
    Witness { path: String, component: usize, gap: usize },
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct DependenceReport {
    pub verdict: DependenceVerdict,
    pub per_path: Vec<PathOutcome>,
    pub notices: Vec<String>,
}

/// Run the curve criterion: a WITNESS on any path certifies that `g` is not
/// integrally dependent on `m`; otherwise the report is a semidecision.
pub fn curve_criterion(
    g: &ModuleVector,
    m: &Submodule,
    paths: &[TestPath],
    cfg: &Config,
) -> Result<DependenceReport> {
    let mut per_path = Vec::new();
    let mut witness: Option<(String, usize, usize)> = None;
    let mut min_order: Option<usize> = None;
    for path in paths {
        if !path.lies_on(&m.ring_eqs)? {
            return Err(EngineError::InvalidPath(format!(
                "path {} does not lie on X to order {}",
                path.label, path.order
            )));
        }
        let gp = pullback(g, path)?;
        let gens: Vec<Vec<TruncSeries>> = m
            .gens
            .iter()
            .map(|w| pullback(w, path))
            .collect::<Result<Vec<_>>>()?;
        let outcome = membership_over_series(&gp, &gens, cfg.margin);
        match &outcome {
            SeriesMembership::Witness { component, gap, .. } => {
                if witness.is_none() {
                    witness = Some((path.label.clone(), *component, *gap));
                }
            }
            SeriesMembership::MemberToOrder(o) => {
                min_order = Some(min_order.map_or(*o, |m: usize| m.min(*o)));
            }
            SeriesMembership::Inconclusive(_) => {}
        }
        per_path.push(PathOutcome { label: path.label.clone(), membership: outcome });
    }
    let verdict = match witness {
        Some((path, component, gap)) => DependenceVerdict::Witness { path, component, gap },
        None => match min_order {
            Some(o) => DependenceVerdict::DependentToOrder(o),
            None => DependenceVerdict::Inconclusive,
        },
    };
    Ok(DependenceReport { verdict, per_path, notices: Vec::new() })
}

/// Sampled monomial paths on the total space of a family, filtered to lie on
/// X exactly; for nonzero codimension a Newton correction pass tries to lift
/// near-misses, and unliftable combinations are skipped with a notice.
pub fn default_paths(g: &FamilyGerm, budget: usize, seed: Seed, cfg: &Config) -> (Vec<TestPath>, Vec<String>) {
    let mut notices = Vec::new();
    if budget == 0 {
        notices.push("path budget 0: no test paths generated".into());
        return (Vec::new(), notices);
    }
    let n = g.a + g.b;
    let order = cfg.truncation;
    let field = g.ring.field.clone();
    let mut rng = seed.child(0xdef).rng();
    let mut paths = Vec::new();
    let mut skipped = 0usize;
    // exponent patterns: each component is off (0) or gets an exponent 1..=budget
    let mut pattern = vec![0usize; n];
    'outer: loop {
        if !pattern.iter().all(|&e| e == 0) {
            let mut candidates: Vec<Vec<Scalar>> = Vec::new();
            // deterministic small coefficients first (finds exact branches),
            // then one random draw
            candidates.push(vec![field.scalar_from_i64(1); n]);
            if g.k() > 0 {
                let mut signs = vec![field.scalar_from_i64(1); n];
                for flip in 0..n {
                    signs[flip] = field.scalar_from_i64(-1);
                    candidates.push(signs.clone());
                    signs[flip] = field.scalar_from_i64(1);
                }
            }
            let random: Vec<Scalar> = (0..n)
                .map(|_| {
                    field
                        .scalar_from_rat(&random_rational(&mut rng, cfg.height.min(5)))
                        .expect("small rationals embed")
                })
                .collect();
            candidates.push(random);
            let mut accepted = false;
            for coeffs in candidates {
                let data: Vec<(Scalar, usize)> = coeffs
                    .iter()
                    .cloned()
                    .zip(pattern.iter().cloned())
                    .collect();
                let path = TestPath::monomial(&data, order);
                if path.is_constant() {
                    continue;
                }
                match path.lies_on(&g.equations) {
                    Ok(true) => {
                        paths.push(path);
                        accepted = true;
                        break;
                    }
                    Ok(false) => {}
                    Err(_) => {}
                }
            }
            if !accepted && g.k() > 0 {
                // Newton correction attempt from the all-ones candidate
                let data: Vec<(Scalar, usize)> = (0..n)
                    .map(|i| (field.scalar_from_i64(1), pattern[i]))
                    .collect();
                let start = TestPath::monomial(&data, order);
                match newton_lift(&start, &g.equations, order) {
                    Some(p) => paths.push(p),
                    None => skipped += 1,
                }
            }
            if paths.len() >= cfg.max_pairs.min(512) {
                notices.push("path cap reached; enumeration truncated".into());
                break 'outer;
            }
        }
        // odometer over {0..budget}^n
        for slot in pattern.iter_mut() {
            *slot += 1;
            if *slot <= budget {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    if skipped > 0 {
        notices.push(format!(
            "{} exponent patterns had no liftable path on X and were skipped",
            skipped
        ));
    }
    (paths, notices)
}

/// One-variable Newton iteration: correct the path components one at a time
/// so the equations vanish to the full order. Succeeds only when a single
/// coordinate's partial derivative is a low-valuation unit along the path.
fn newton_lift(start: &TestPath, equations: &[Polynomial], order: usize) -> Option<TestPath> {
    if equations.len() != 1 {
        return None; // multi-equation correction is out of sampling scope
    }
    let eq = &equations[0];
    let n = start.components.len();
    let mut path = start.clone();
    for var in 0..n {
        let deriv = eq.derivative(var).ok()?;
        let dpull = pullback_poly(&deriv, &path).ok()?;
        let Some(dv) = dpull.valuation() else { continue };
        let mut current = path.clone();
        let mut improved = false;
        for _ in 0..order {
            let res = pullback_poly(eq, &current).ok()?;
            let Some(rv) = res.valuation() else {
                return Some(TestPath {
                    components: current.components,
                    order,
                    label: format!("{} (lifted in component {})", start.label, var + 1),
                });
            };
            if rv <= 2 * dv {
                break; // not in the convergence zone
            }
            // delta = -residual / derivative, applied to this component
            let dcur = pullback_poly(&deriv, &current).ok()?;
            let dval = dcur.valuation()?;
            if rv < dval {
                break;
            }
            let delta = res.shift_down(dval).div_unit(&dcur.shift_down(dval)).neg();
            // pad the correction back to full order (known to that precision)
            let mut padded = TruncSeries::zero(order);
            for (j, c) in delta.coeffs.iter().enumerate() {
                if let Some(c) = c {
                    if j <= order {
                        padded.coeffs[j] = Some(c.clone());
                    }
                }
            }
            current.components[var] = current.components[var].add(&padded);
            improved = true;
        }
        if improved {
            if let Ok(true) = current.lies_on(equations) {
                return Some(TestPath {
                    components: current.components,
                    order,
                    label: format!("{} (lifted in component {})", start.label, var + 1),
                });
            }
        }
        path = start.clone();
    }
    None
}

/// The fiberwise maximal-ideal multiples of a family module: generators
/// `x_i * v` for the curve test of the stricter Whitney-side dependence.
pub fn maximal_ideal_times(m: &Submodule, a: usize, field: &FieldSpec) -> Submodule {
    let gens = (0..a)
        .map(|i| Polynomial::var(m.nvars, i, field))
        .collect::<Vec<_>>();
    crate::brmult::ideal_times_module(&gens, m)
}
