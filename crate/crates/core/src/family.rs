//! Specialization of families, per-parameter invariant records, and the
//! numerical equisingularity checks.
//!
//! Constancy "in a neighborhood of 0" is decided exactly in GENERIC mode:
//! the parameters become transcendentals (coefficients in the fraction field
//! of the parameter ring) and constancy amounts to value-at-0 = generic
//! value, since every invariant here is upper semicontinuous. Finite
//! sampling is kept as a fallback and cross-check.

use crate::brmult::{self, ModuleContext};
use crate::error::{EngineError, Result};
use crate::germ::{self, FamilyGerm, IcisGerm};
use crate::linalg::maximal_minors;
use crate::monomial::TermOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::rng::Seed;
use crate::sb::{self, Colength, Submodule};
use crate::scalar::{FieldSpec, Scalar};
use crate::Config;
use num_rational::BigRational;
use num_traits::Zero;

/// A parameter value: a rational point of the parameter space, or the
/// generic point (parameters treated as transcendentals).
#[derive(Debug, Clone, PartialEq)]
pub enum ParameterPoint {
    Values(Vec<BigRational>),
    Generic,
}

impl ParameterPoint {
    pub fn origin(b: usize) -> Self {
        ParameterPoint::Values(vec![BigRational::zero(); b])
    }

    pub fn is_origin(&self) -> bool {
        matches!(self, ParameterPoint::Values(v) if v.iter().all(|x| x.is_zero()))
    }

    pub fn label(&self, param_names: &[String]) -> String {
        match self {
            ParameterPoint::Generic => "generic".to_string(),
            ParameterPoint::Values(v) => {
                if v.is_empty() {
                    return "(no parameters)".to_string();
                }
                v.iter()
                    .zip(param_names.iter())
                    .map(|(x, n)| format!("{}={}", n, x))
                    .collect::<Vec<_>>()
                    .join(",")
            }
        }
    }
}

/// Substitute a parameter point into the family, producing a fiber germ in
/// the `x` variables. GENERIC moves the parameters into the coefficient
/// field.
pub fn specialize(g: &FamilyGerm, at: &ParameterPoint) -> Result<IcisGerm> {
    let a = g.a;
    let b = g.b;
    let base = g.ring.field.clone();
    let (eqs, f, field) = match at {
        ParameterPoint::Values(vals) => {
            if vals.len() != b {
                return Err(EngineError::Invalid(format!(
                    "{} parameter values for {} parameters",
                    vals.len(),
                    b
                )));
            }
            let mut images: Vec<Polynomial> = (0..a).map(|i| Polynomial::var(a, i, &base)).collect();
            for v in vals {
                images.push(Polynomial::constant(a, base.scalar_from_rat(v)?));
            }
            let eqs = g
                .equations
                .iter()
                .map(|p| p.substitute(&images, a))
                .collect::<Result<Vec<_>>>()?;
            let f = g.function.substitute(&images, a)?;
            (eqs, f, base)
        }
        ParameterPoint::Generic => {
            let field = match &base {
                FieldSpec::Q => FieldSpec::FunQ { params: b },
                FieldSpec::Fp(p) => FieldSpec::FunFp { p: *p, params: b },
                other => {
                    return Err(EngineError::FieldMismatch(format!(
                        "family ring already has a function field: {:?}",
                        other
                    )))
                }
            };
            let eqs = g
                .equations
                .iter()
                .map(|p| generic_fiber_poly(p, a, b))
                .collect::<Vec<_>>();
            let f = generic_fiber_poly(&g.function, a, b);
            (eqs, f, field)
        }
    };
    for (i, e) in eqs.iter().enumerate() {
        if e.is_zero() {
            return Err(EngineError::NonReducedFiber(format!("equation {}", i + 1)));
        }
    }
    let ring = Ring::new(g.ring.vars[..a].to_vec(), field);
    IcisGerm::new(ring, eqs, Some(f))
}

/// Split each `(x, y)`-term into an `x`-monomial with a fraction-field
/// coefficient carrying the `y`-part.
fn generic_fiber_poly(p: &Polynomial, a: usize, b: usize) -> Polynomial {
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let xpart: Vec<u16> = m.0[..a].to_vec();
        let ypart: Vec<u16> = m.0[a..].to_vec();
        let num = Polynomial::monomial_term(b, &ypart, c.clone());
        let field = c.field();
        let den = Polynomial::one_of(b, &field);
        let coeff = Scalar::fun(num, den, b);
        terms.push((crate::monomial::Monomial::from_exps(&xpart), coeff));
    }
    Polynomial::from_terms(a, terms)
}

/// Which route produced `e(m M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmmRoute {
    Direct,
    PolarFormula,
}

/// Per-parameter-point invariants with per-field failure notes.
#[derive(Debug, Clone)]
pub struct InvariantRecord {
    pub at: ParameterPoint,
    pub x_icis: Option<bool>,
    pub z_isolated: Option<bool>,
    pub mu_x: Option<Vec<u64>>,
    pub mu_z: Option<Vec<u64>>,
    pub e_m: Option<u64>,
    pub e_mm: Option<u64>,
    pub e_mm_route: Option<EmmRoute>,
    pub e_prime: Option<u64>,
    pub polar: Option<Vec<u64>>,
    pub flags: Vec<String>,
    /// `e(M) = mu_0(X) + mu_0(Z)` whenever both sides were computed.
    pub consistent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecordScope {
    pub sequences: bool,
    pub e_m: bool,
    pub e_mm: bool,
    pub e_prime: bool,
    pub polar: bool,
}

impl RecordScope {
    pub fn full() -> Self {
        RecordScope { sequences: true, e_m: true, e_mm: true, e_prime: true, polar: true }
    }

    pub fn af() -> Self {
        RecordScope { sequences: false, e_m: true, e_mm: false, e_prime: true, polar: false }
    }

    pub fn wf() -> Self {
        RecordScope { sequences: false, e_m: true, e_mm: true, e_prime: true, polar: false }
    }

    pub fn milnor() -> Self {
        RecordScope { sequences: true, e_m: true, e_mm: false, e_prime: false, polar: false }
    }
}

/// Compute an invariant record at one parameter point. Failures are recorded
/// per field; the record is always returned.
pub fn invariant_record(g: &FamilyGerm, at: &ParameterPoint, seed: Seed, cfg: &Config) -> InvariantRecord {
    invariant_record_scoped(g, at, seed, cfg, RecordScope::full())
}

pub fn invariant_record_scoped(
    g: &FamilyGerm,
    at: &ParameterPoint,
    seed: Seed,
    cfg: &Config,
    scope: RecordScope,
) -> InvariantRecord {
    let mut rec = InvariantRecord {
        at: at.clone(),
        x_icis: None,
        z_isolated: None,
        mu_x: None,
        mu_z: None,
        e_m: None,
        e_mm: None,
        e_mm_route: None,
        e_prime: None,
        polar: None,
        flags: Vec::new(),
        consistent: true,
    };
    let fiber = match specialize(g, at) {
        Ok(f) => f,
        Err(e) => {
            rec.flags.push(format!("specialization failed: {}", e));
            rec.consistent = false;
            return rec;
        }
    };
    // isolation of X
    match germ::milnor_icis(&fiber, seed.child(1), cfg) {
        Ok(mu) => {
            rec.x_icis = Some(true);
            if scope.sequences {
                // mu_0(X) is reused below; nothing recorded yet
            }
            let _ = mu;
        }
        Err(e @ (EngineError::NotIcis(_) | EngineError::NotIsolated(_))) => {
            rec.x_icis = Some(false);
            rec.flags.push(format!("X is not an ICIS: {}", e));
        }
        Err(e) => {
            rec.flags.push(format!("mu(X) failed: {}", e));
        }
    }
    // e(M) by the minors route; the same colength witnesses isolation of Z
    if scope.e_m || scope.sequences {
        match e_m_of_fiber(&fiber, cfg) {
            Ok(Some(n)) => {
                rec.z_isolated = Some(true);
                rec.e_m = Some(n);
            }
            Ok(None) => {
                rec.z_isolated = Some(false);
                rec.flags.push("Z is not isolated at the origin".into());
            }
            Err(e) => rec.flags.push(format!("e(M) failed: {}", e)),
        }
    }
    if scope.sequences && rec.z_isolated == Some(true) && rec.x_icis == Some(true) {
        match germ::sectional_sequences(&fiber, seed.child(2), cfg) {
            Ok((mx, mz)) => {
                rec.mu_x = Some(mx);
                rec.mu_z = Some(mz);
            }
            Err(e) => rec.flags.push(format!("sectional sequences failed: {}", e)),
        }
    }
    if scope.e_mm && rec.z_isolated == Some(true) && rec.x_icis == Some(true) {
        let ctx = ModuleContext::of_germ(&fiber);
        match germ::jacobian_module(&fiber).and_then(|jm| brmult::e_mm_direct(&jm, ctx, cfg)) {
            Ok(n) => {
                rec.e_mm = Some(n);
                rec.e_mm_route = Some(EmmRoute::Direct);
            }
            Err(EngineError::ResourceLimit { .. }) | Err(EngineError::NoStabilization { .. }) => {
                match brmult::e_mm_polar_formula(&fiber, cfg.binomial, seed.child(3), cfg) {
                    Ok(n) => {
                        rec.e_mm = Some(n);
                        rec.e_mm_route = Some(EmmRoute::PolarFormula);
                        rec.flags.push(
                            "e(mM): direct route hit resource limits; polar formula used".into(),
                        );
                    }
                    Err(e) => rec.flags.push(format!("e(mM) failed on both routes: {}", e)),
                }
            }
            Err(e) => rec.flags.push(format!("e(mM) failed: {}", e)),
        }
    }
    if scope.polar && rec.z_isolated == Some(true) && rec.x_icis == Some(true) {
        let d = fiber.dim();
        let mut polar = Vec::with_capacity(d + 1);
        let mut ok = true;
        for i in 0..=d {
            match brmult::polar_multiplicity(&fiber, i, seed.child(4 + i as u64), cfg) {
                Ok(m) => polar.push(m),
                Err(e) => {
                    rec.flags.push(format!("polar multiplicity at i = {} failed: {}", i, e));
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            rec.polar = Some(polar);
        }
    }
    if scope.e_prime {
        match e_prime_of_fiber(&fiber, cfg) {
            Ok(Some(n)) => rec.e_prime = Some(n),
            Ok(None) => rec.flags.push("e': total critical fiber is not finite".into()),
            Err(e) => rec.flags.push(format!("e' failed: {}", e)),
        }
    }
    if let (Some(e_m), Some(mx), Some(mz)) = (rec.e_m, &rec.mu_x, &rec.mu_z) {
        if e_m != mx[0] + mz[0] {
            rec.consistent = false;
            rec.flags.push(format!(
                "inconsistent record: e(M) = {} but mu_0(X) + mu_0(Z) = {}",
                e_m,
                mx[0] + mz[0]
            ));
        }
    }
    rec
}

/// Colength of equations + maximal minors over the local ring: `e(M)` and
/// the isolation certificate for `Z`. `None` means not isolated.
fn e_m_of_fiber(fiber: &IcisGerm, cfg: &Config) -> Result<Option<u64>> {
    let jm = germ::jacobian_module(fiber)?;
    let minors = germ::minors_ideal(&jm);
    let mut gens = fiber.equations.clone();
    gens.extend(minors.generators);
    let sub = Submodule::ideal(gens, fiber.a, Vec::new());
    Ok(sb::colength(&sub, &TermOrder::local(fiber.a), cfg)?.finite())
}

/// Dimension of the whole critical fiber over the polynomial ring (a global
/// Groebner colength): counts every critical point of `f_y`, not only the
/// one at the origin.
fn e_prime_of_fiber(fiber: &IcisGerm, cfg: &Config) -> Result<Option<u64>> {
    let jm = germ::jacobian_module(fiber)?;
    let minors = germ::minors_ideal(&jm);
    let mut gens = fiber.equations.clone();
    gens.extend(minors.generators);
    let sub = Submodule::ideal(gens, fiber.a, Vec::new());
    match sb::colength(&sub, &TermOrder::global(fiber.a), cfg)? {
        Colength::Finite(n) => Ok(Some(n)),
        Colength::Infinite => Ok(None),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Thom-type condition, decided by constancy of `e(M_y)`.
    Af,
    /// Relative Whitney condition, decided by constancy of `e(m_y M_y)`.
    Wf,
    /// Constancy of the Milnor pair `(mu(X_y), mu(Z_y))`.
    AfViaMilnorPair,
    /// Constancy of the full sectional Milnor sequences.
    WfViaMilnorSequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
    Indeterminate,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub condition: Condition,
    pub outcome: Outcome,
    pub clause: String,
    pub records: Vec<InvariantRecord>,
}

fn hypotheses_ok(rec: &InvariantRecord) -> bool {
    rec.x_icis == Some(true) && rec.z_isolated == Some(true)
}

fn point_seed(seed: Seed, idx: usize) -> Seed {
    seed.child(0xf00 + idx as u64)
}

fn validate_points(g: &FamilyGerm, points: &[ParameterPoint]) -> Result<()> {
    if !points.iter().any(|p| p.is_origin()) {
        return Err(EngineError::Precondition(
            "parameter points must include the origin".into(),
        ));
    }
    if g.b > 0 && points.len() < 2 {
        return Err(EngineError::Precondition(
            "need the origin plus at least one more point or GENERIC".into(),
        ));
    }
    Ok(())
}

fn constancy_verdict(
    condition: Condition,
    clause_name: &str,
    records: Vec<InvariantRecord>,
    value: impl Fn(&InvariantRecord) -> Option<Vec<u64>>,
    param_names: &[String],
) -> Verdict {
    for rec in &records {
        if !hypotheses_ok(rec) {
            return Verdict {
                condition,
                outcome: Outcome::Indeterminate,
                clause: format!(
                    "hypotheses fail at {}: {}",
                    rec.at.label(param_names),
                    rec.flags.join("; ")
                ),
                records,
            };
        }
    }
    let mut values: Vec<(String, Option<Vec<u64>>)> = Vec::new();
    for rec in &records {
        values.push((rec.at.label(param_names), value(rec)));
    }
    if values.iter().any(|(_, v)| v.is_none()) {
        let missing: Vec<&str> = values
            .iter()
            .filter(|(_, v)| v.is_none())
            .map(|(l, _)| l.as_str())
            .collect();
        return Verdict {
            condition,
            outcome: Outcome::Indeterminate,
            clause: format!("{} could not be computed at {}", clause_name, missing.join(", ")),
            records,
        };
    }
    let first = values[0].1.clone().unwrap();
    let constant = values.iter().all(|(_, v)| v.as_ref() == Some(&first));
    if constant {
        Verdict {
            condition,
            outcome: Outcome::Holds,
            clause: format!("{} is constant across the sampled and generic points", clause_name),
            records,
        }
    } else {
        let table = values
            .iter()
            .map(|(l, v)| format!("{}: {:?}", l, v.as_ref().unwrap()))
            .collect::<Vec<_>>()
            .join("; ");
        Verdict {
            condition,
            outcome: Outcome::Fails,
            clause: format!("{} is not constant ({})", clause_name, table),
            records,
        }
    }
}

/// Thom-side check: constancy of `e(M_y)` plus isolation at every point.
pub fn check_af(g: &FamilyGerm, points: &[ParameterPoint], seed: Seed, cfg: &Config) -> Result<Verdict> {
    validate_points(g, points)?;
    let records: Vec<InvariantRecord> = points
        .iter()
        .enumerate()
        .map(|(i, at)| invariant_record_scoped(g, at, point_seed(seed, i), cfg, RecordScope::af()))
        .collect();
    let names = &g.ring.vars[g.a..];
    Ok(constancy_verdict(
        Condition::Af,
        "e(M_y)",
        records,
        |r| r.e_m.map(|n| vec![n]),
        names,
    ))
}

/// Whitney-side check: constancy of `e(m_y M_y)`; also recomputes the
/// Thom-side check and reports an internal inconsistency if the implication
/// "W_f constant implies A_f constant" is violated by the engine.
pub fn check_wf(g: &FamilyGerm, points: &[ParameterPoint], seed: Seed, cfg: &Config) -> Result<Verdict> {
    validate_points(g, points)?;
    let records: Vec<InvariantRecord> = points
        .iter()
        .enumerate()
        .map(|(i, at)| invariant_record_scoped(g, at, point_seed(seed, i), cfg, RecordScope::wf()))
        .collect();
    let names = &g.ring.vars[g.a..];
    let mut verdict = constancy_verdict(
        Condition::Wf,
        "e(m_y M_y)",
        records,
        |r| r.e_mm.map(|n| vec![n]),
        names,
    );
    if verdict.outcome == Outcome::Holds {
        let af = check_af(g, points, seed, cfg)?;
        if af.outcome != Outcome::Holds {
            verdict.outcome = Outcome::Indeterminate;
            verdict.clause = format!(
                "internal consistency failure: e(m_y M_y) constant but the Thom-side check returned {:?} ({})",
                af.outcome, af.clause
            );
        }
    }
    Ok(verdict)
}

/// The Milnor-number formulations: constancy of the pair `(mu(X_y), mu(Z_y))`
/// and of the full sectional sequences. These must agree with `check_af` and
/// `check_wf`; callers compare and report disagreement, never reconcile.
pub fn check_milnor_formulations(
    g: &FamilyGerm,
    points: &[ParameterPoint],
    seed: Seed,
    cfg: &Config,
) -> Result<(Verdict, Verdict)> {
    validate_points(g, points)?;
    let records: Vec<InvariantRecord> = points
        .iter()
        .enumerate()
        .map(|(i, at)| invariant_record_scoped(g, at, point_seed(seed, i), cfg, RecordScope::milnor()))
        .collect();
    let names = &g.ring.vars[g.a..];
    let pair = constancy_verdict(
        Condition::AfViaMilnorPair,
        "(mu(X_y), mu(Z_y))",
        records.clone(),
        |r| match (&r.mu_x, &r.mu_z) {
            (Some(mx), Some(mz)) => Some(vec![mx[0], mz[0]]),
            _ => None,
        },
        names,
    );
    let seq = constancy_verdict(
        Condition::WfViaMilnorSequence,
        "the sectional Milnor sequences",
        records,
        |r| match (&r.mu_x, &r.mu_z) {
            (Some(mx), Some(mz)) => {
                let mut v = mx.clone();
                v.extend(mz.iter().copied());
                Some(v)
            }
            _ => None,
        },
        names,
    );
    Ok((pair, seq))
}

/// Upper-semicontinuity audit: each sectional sum and `e(M)` at a sampled or
/// generic point must not exceed its value at the origin.
#[derive(Debug, Clone)]
pub struct SemicontReport {
    pub violations: Vec<String>,
}

impl SemicontReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn semicontinuity_check(records: &[InvariantRecord], param_names: &[String]) -> SemicontReport {
    let mut violations = Vec::new();
    let Some(base) = records.iter().find(|r| r.at.is_origin()) else {
        return SemicontReport {
            violations: vec!["no origin record supplied".into()],
        };
    };
    for rec in records {
        if rec.at.is_origin() {
            continue;
        }
        if let (Some(e0), Some(ey)) = (base.e_m, rec.e_m) {
            if ey > e0 {
                violations.push(format!(
                    "e(M) rises from {} at the origin to {} at {}",
                    e0,
                    ey,
                    rec.at.label(param_names)
                ));
            }
        }
        if let (Some(bx), Some(bz), Some(rx), Some(rz)) = (&base.mu_x, &base.mu_z, &rec.mu_x, &rec.mu_z) {
            for i in 0..bx.len().min(rx.len()) {
                if rx[i] + rz[i] > bx[i] + bz[i] {
                    violations.push(format!(
                        "mu_{}(X)+mu_{}(Z) rises from {} to {} at {}",
                        i,
                        i,
                        bx[i] + bz[i],
                        rx[i] + rz[i],
                        rec.at.label(param_names)
                    ));
                }
            }
        }
    }
    SemicontReport { violations }
}

/// Set-theoretic comparison of the two critical loci and the parameter axis,
/// by radical membership over the family ring.
#[derive(Debug, Clone)]
pub struct SupportReport {
    /// Every generator of the fiberwise critical ideal vanishes on `{x = 0}`.
    pub y_subset_of_sigma_y: bool,
    /// Each `x_i` vanishes on the fiberwise critical locus.
    pub sigma_y_subset_of_y: bool,
    pub sigma_y_equals_y: bool,
    /// The total critical locus coincides with the fiberwise one as a set.
    pub supports_coincide: bool,
}

pub fn support_equality(g: &FamilyGerm, cfg: &Config) -> Result<SupportReport> {
    let nv = g.a + g.b;
    let field = &g.ring.field;
    let k = g.k();
    // fiberwise critical ideal: equations + maximal minors of the x-Jacobian
    let mut rows_x: Vec<Vec<Polynomial>> = Vec::new();
    let mut rows_full: Vec<Vec<Polynomial>> = Vec::new();
    for p in g.equations.iter().chain(std::iter::once(&g.function)) {
        rows_x.push((0..g.a).map(|v| p.derivative(v)).collect::<Result<Vec<_>>>()?);
        rows_full.push((0..nv).map(|v| p.derivative(v)).collect::<Result<Vec<_>>>()?);
    }
    let minors_x = maximal_minors(&rows_x, k + 1);
    let minors_full = maximal_minors(&rows_full, k + 1);
    let mut sigma_y_gens = g.equations.clone();
    sigma_y_gens.extend(minors_x.iter().cloned());
    let sigma_y = Submodule::ideal(sigma_y_gens.clone(), nv, Vec::new());
    // Y inside Sigma_Y(f): every generator vanishes identically on {x = 0}
    let y_subset_of_sigma_y = sigma_y_gens.iter().all(|p| {
        p.terms()
            .iter()
            .all(|(m, _)| m.0.iter().take(g.a).any(|&e| e > 0))
    });
    let mut sigma_y_subset_of_y = true;
    for i in 0..g.a {
        let xi = Polynomial::var(nv, i, field);
        if !sb::radical_membership(&xi, &sigma_y, cfg)? {
            sigma_y_subset_of_y = false;
            break;
        }
    }
    // V(sigma_y) inside V(sigma): test the extra minors on the smaller ideal
    let mut supports_coincide = true;
    for m in &minors_full {
        if !sb::radical_membership(m, &sigma_y, cfg)? {
            supports_coincide = false;
            break;
        }
    }
    Ok(SupportReport {
        y_subset_of_sigma_y,
        sigma_y_subset_of_y,
        sigma_y_equals_y: y_subset_of_sigma_y && sigma_y_subset_of_y,
        supports_coincide,
    })
}
