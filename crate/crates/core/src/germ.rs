//! Germs of complete intersections with a function, their Jacobian modules,
//! and Milnor-number invariants.
//!
//! A family lives in variables `x_1..x_a` and parameters `y_1..y_b`; a fiber
//! germ lives in the `x` variables alone (with parameters, if any, moved into
//! the coefficient field). Milnor numbers of ICIS germs are computed by the
//! Le-Greuel recursion over a random constant recombination of the equations,
//! with every intermediate verified to be an ICIS. Zero-dimensional germs use
//! the convention `mu = dim O - 1`, which keeps the recursion bookkeeping
//! exact in the lowest dimension.

use crate::error::{EngineError, Result};
use crate::linalg::{maximal_minors, scalar_det};
use crate::monomial::TermOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::rng::{agree_twice, random_invertible_matrix, random_linear_form, Seed};
use crate::sb::{colength, Colength, ModuleVector, Submodule};
use crate::scalar::FieldSpec;
use crate::Config;

/// A family of germs: `k` equations and a function in `(x, y)`, all vanishing
/// on `Y = {x = 0}`.
#[derive(Debug, Clone)]
pub struct FamilyGerm {
    pub a: usize,
    pub b: usize,
    pub equations: Vec<Polynomial>,
    pub function: Polynomial,
    pub ring: Ring,
}

impl FamilyGerm {
    /// Validates `k < a` and that the equations and the function vanish on
    /// `{x = 0}` identically in the parameters.
    pub fn new(ring: Ring, a: usize, b: usize, equations: Vec<Polynomial>, function: Polynomial) -> Result<Self> {
        if ring.nvars() != a + b {
            return Err(EngineError::RingMismatch(format!(
                "family ring has {} variables, expected a + b = {}",
                ring.nvars(),
                a + b
            )));
        }
        if equations.len() >= a {
            return Err(EngineError::Invalid(format!(
                "k = {} equations require k < a = {}",
                equations.len(),
                a
            )));
        }
        for (i, p) in equations.iter().chain(std::iter::once(&function)).enumerate() {
            if !vanishes_on_parameter_axis(p, a) {
                let what = if i < equations.len() {
                    format!("equation {}", i + 1)
                } else {
                    "the function".to_string()
                };
                return Err(EngineError::Invalid(format!(
                    "{} does not vanish on the parameter axis x = 0",
                    what
                )));
            }
        }
        Ok(FamilyGerm { a, b, equations, function, ring })
    }

    pub fn k(&self) -> usize {
        self.equations.len()
    }
}

/// Every term must involve some `x` variable.
fn vanishes_on_parameter_axis(p: &Polynomial, a: usize) -> bool {
    p.terms()
        .iter()
        .all(|(m, _)| m.0.iter().take(a).any(|&e| e > 0))
}

/// One fiber: equations (and optionally the function) in the `x` variables.
#[derive(Debug, Clone)]
pub struct IcisGerm {
    pub a: usize,
    pub equations: Vec<Polynomial>,
    pub function: Option<Polynomial>,
    pub ring: Ring,
}

impl IcisGerm {
    pub fn new(ring: Ring, equations: Vec<Polynomial>, function: Option<Polynomial>) -> Result<Self> {
        let a = ring.nvars();
        if equations.len() >= a && !(equations.is_empty() && a == 0) {
            return Err(EngineError::Invalid(format!(
                "k = {} equations require k < a = {}",
                equations.len(),
                a
            )));
        }
        Ok(IcisGerm { a, equations, function, ring })
    }

    pub fn k(&self) -> usize {
        self.equations.len()
    }

    /// Dimension of the germ, `a - k`.
    pub fn dim(&self) -> usize {
        self.a - self.k()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ring.field
    }

    fn function_ref(&self) -> Result<&Polynomial> {
        self.function
            .as_ref()
            .ok_or_else(|| EngineError::Precondition("germ carries no function".into()))
    }
}

/// The Jacobian module presentation: the `(k+1) x a` matrix of partials of
/// the equations and the function with respect to the `x` variables, its
/// columns, and (for families) the extra parameter columns.
#[derive(Debug, Clone)]
pub struct JacobianModule {
    /// Rows: equations then the function; columns: x-variables.
    pub matrix: Vec<Vec<Polynomial>>,
    /// The `a` columns as rank-`k+1` vectors.
    pub columns: Vec<ModuleVector>,
    /// Partials with respect to the parameters (one column per parameter).
    pub extra_columns: Vec<ModuleVector>,
    pub ring_eqs: Vec<Polynomial>,
    pub rank: usize,
    pub nvars: usize,
}

impl JacobianModule {
    pub fn as_submodule(&self) -> Submodule {
        Submodule::new(self.columns.clone(), self.rank, self.nvars, self.ring_eqs.clone())
    }
}

/// Ideal of maximal minors of the Jacobian matrix, over the germ's equations.
#[derive(Debug, Clone)]
pub struct MinorsIdeal {
    pub generators: Vec<Polynomial>,
    pub ring_eqs: Vec<Polynomial>,
    pub nvars: usize,
}

impl MinorsIdeal {
    pub fn as_submodule(&self) -> Submodule {
        Submodule::ideal(self.generators.clone(), self.nvars, self.ring_eqs.clone())
    }
}

fn jacobian_rows(
    eqs: &[Polynomial],
    function: Option<&Polynomial>,
    nxvars: usize,
) -> Result<Vec<Vec<Polynomial>>> {
    let mut rows = Vec::new();
    for p in eqs.iter().chain(function.into_iter()) {
        let mut row = Vec::with_capacity(nxvars);
        for v in 0..nxvars {
            row.push(p.derivative(v)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Jacobian module of a fiber germ with a function.
pub fn jacobian_module(g: &IcisGerm) -> Result<JacobianModule> {
    let f = g.function_ref()?;
    let matrix = jacobian_rows(&g.equations, Some(f), g.a)?;
    let rank = matrix.len();
    let columns = columns_of(&matrix, rank);
    Ok(JacobianModule {
        matrix,
        columns,
        extra_columns: Vec::new(),
        ring_eqs: g.equations.clone(),
        rank,
        nvars: g.a,
    })
}

/// Jacobian module of a family: partials in `x` give the columns, partials
/// in the parameters give the extra columns.
pub fn family_jacobian_module(g: &FamilyGerm) -> Result<JacobianModule> {
    let nv = g.a + g.b;
    let matrix = jacobian_rows(&g.equations, Some(&g.function), g.a)?;
    let rank = matrix.len();
    let columns = columns_of(&matrix, rank);
    let mut extra = Vec::new();
    for j in 0..g.b {
        let mut col = Vec::with_capacity(rank);
        for p in g.equations.iter().chain(std::iter::once(&g.function)) {
            col.push(p.derivative(g.a + j)?);
        }
        extra.push(ModuleVector::new(col));
    }
    Ok(JacobianModule {
        matrix,
        columns,
        extra_columns: extra,
        ring_eqs: g.equations.clone(),
        rank,
        nvars: nv,
    })
}

fn columns_of(matrix: &[Vec<Polynomial>], rank: usize) -> Vec<ModuleVector> {
    let ncols = matrix[0].len();
    (0..ncols)
        .map(|j| ModuleVector::new((0..rank).map(|i| matrix[i][j].clone()).collect()))
        .collect()
}

/// All `(k+1) x (k+1)` minors of the Jacobian matrix.
pub fn minors_ideal(jm: &JacobianModule) -> MinorsIdeal {
    let size = jm.rank;
    MinorsIdeal {
        generators: maximal_minors(&jm.matrix, size),
        ring_eqs: jm.ring_eqs.clone(),
        nvars: jm.nvars,
    }
}

pub(crate) fn local_colength(
    gens: Vec<Polynomial>,
    nvars: usize,
    ring_eqs: Vec<Polynomial>,
    cfg: &Config,
) -> Result<Colength> {
    let m = Submodule::ideal(gens, nvars, ring_eqs);
    colength(&m, &TermOrder::local(nvars), cfg)
}

/// Milnor number of an ICIS `V(f_1..f_k)` by the Le-Greuel recursion after a
/// random invertible constant recombination of the equations. `k = 0` gives 0.
pub fn milnor_icis(g: &IcisGerm, seed: Seed, cfg: &Config) -> Result<u64> {
    let k = g.k();
    if k == 0 {
        return Ok(0);
    }
    let field = g.field().clone();
    let mut last_err = None;
    for round in 0..cfg.retries.max(1) {
        let mut rng = seed.child(round as u64).rng();
        let eqs: Vec<Polynomial> = if k == 1 {
            g.equations.clone()
        } else {
            let a = random_invertible_matrix(&mut rng, k, &field, cfg.height)?;
            (0..k)
                .map(|i| {
                    let mut p = Polynomial::zero(g.a);
                    for (j, e) in g.equations.iter().enumerate() {
                        p = p.add(&e.scale(&a[i][j]));
                    }
                    p
                })
                .collect()
        };
        match le_greuel_chain(&eqs, g.a, cfg) {
            Ok(mu) => return Ok(mu),
            Err(e @ (EngineError::NotIcis(_) | EngineError::NotIsolated(_) | EngineError::Infinite(_))) => {
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(EngineError::NotIcis(format!(
        "no recombination produced an ICIS flag after {} retries ({})",
        cfg.retries,
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// mu of the flag `V(g_1..g_j)` for j = 1..k via colengths of flag ideals;
/// every intermediate must itself be an ICIS.
fn le_greuel_chain(eqs: &[Polynomial], a: usize, cfg: &Config) -> Result<u64> {
    let mut mu_prev: i64 = 0;
    for j in 1..=eqs.len() {
        let head = &eqs[..j];
        let jac = jacobian_rows(head, None, a)?;
        let minors = maximal_minors(&jac, j);
        let mut flag_gens: Vec<Polynomial> = eqs[..j - 1].to_vec();
        flag_gens.extend(minors.iter().cloned());
        let c = local_colength(flag_gens, a, Vec::new(), cfg)?
            .finite()
            .ok_or_else(|| EngineError::NotIcis(format!("flag ideal at step {} has infinite colength", j)))?;
        // the intermediate itself must have an isolated singularity
        let mut sing_gens: Vec<Polynomial> = head.to_vec();
        sing_gens.extend(minors);
        local_colength(sing_gens, a, Vec::new(), cfg)?
            .finite()
            .ok_or_else(|| EngineError::NotIcis(format!("V(g_1..g_{}) is not an ICIS", j)))?;
        let mu = c as i64 - mu_prev;
        if mu < 0 {
            return Err(EngineError::NotIcis(format!(
                "negative Milnor number at step {} (non-generic recombination)",
                j
            )));
        }
        mu_prev = mu;
    }
    Ok(mu_prev as u64)
}

/// `(mu(X), mu(Z))` for an ICIS germ with function: `mu(X)` by the recursion
/// and `mu(Z)` from the colength of the equations plus the maximal minors of
/// the full Jacobian matrix. For zero-dimensional `Z` this realizes the
/// convention `mu(Z) = dim O_Z - 1`.
pub fn milnor_pair(g: &IcisGerm, seed: Seed, cfg: &Config) -> Result<(u64, u64)> {
    g.function_ref()?;
    let jm = jacobian_module(g)?;
    let minors = minors_ideal(&jm);
    let mut gens = g.equations.clone();
    gens.extend(minors.generators.iter().cloned());
    let total = local_colength(gens, g.a, Vec::new(), cfg)?
        .finite()
        .ok_or_else(|| EngineError::NotIsolated("Z does not have an isolated singularity at 0".into()))?;
    let mu_x = milnor_icis(g, seed.child(0x9a17), cfg)?;
    if total < mu_x {
        return Err(EngineError::NotIcis(
            "mu(X) exceeds the total colength; germ data is degenerate".into(),
        ));
    }
    Ok((mu_x, total - mu_x))
}

/// Slice a germ: substitute `x = B * xhat` and set the last `i` new
/// coordinates to zero.
fn slice_germ(g: &IcisGerm, i: usize, b: &[Vec<crate::scalar::Scalar>]) -> Result<IcisGerm> {
    let a = g.a;
    let new_a = a - i;
    let field = g.field().clone();
    let images: Vec<Polynomial> = (0..a)
        .map(|t| {
            let mut p = Polynomial::zero(new_a);
            for s in 0..new_a {
                p = p.add(&Polynomial::var(new_a, s, &field).scale(&b[t][s]));
            }
            p
        })
        .collect();
    let eqs = g
        .equations
        .iter()
        .map(|p| p.substitute(&images, new_a))
        .collect::<Result<Vec<_>>>()?;
    let f = match &g.function {
        Some(f) => Some(f.substitute(&images, new_a)?),
        None => None,
    };
    let ring = Ring::new((0..new_a).map(|s| format!("s{}", s + 1)).collect(), field);
    Ok(IcisGerm { a: new_a, equations: eqs, function: f, ring })
}

/// Sectional Milnor pair `(mu_i(X), mu_i(Z))`: slice by a generic linear
/// subspace of codimension `i` and recurse, with the top conventions
/// `mu_{a-k}(X) = mult(X) - 1` and `mu_{a-k}(Z) = 1`. Two independent draws
/// of the slicing matrix must agree.
pub fn sectional_milnor(g: &IcisGerm, i: usize, seed: Seed, cfg: &Config) -> Result<(u64, u64)> {
    let d = g.dim();
    if i > d {
        return Err(EngineError::Precondition(format!(
            "section codimension {} exceeds dim X = {}",
            i, d
        )));
    }
    if i == 0 {
        return milnor_pair(g, seed, cfg);
    }
    let field = g.field().clone();
    agree_twice(seed.child(i as u64), cfg.retries, "sectional Milnor numbers", |s| {
        let mut rng = s.rng();
        let b = random_invertible_matrix(&mut rng, g.a, &field, cfg.height)?;
        let sliced = slice_germ(g, i, &b)?;
        if i < d {
            milnor_pair(&sliced, s.child(1), cfg)
        } else {
            // dimension-0 slice: k equations in k variables
            let c = local_colength(sliced.equations.clone(), sliced.a, Vec::new(), cfg)?
                .finite()
                .ok_or_else(|| EngineError::NotIsolated("top section is not zero-dimensional".into()))?;
            if c == 0 {
                return Err(EngineError::NotIcis("top section is empty".into()));
            }
            Ok((c - 1, 1))
        }
    })
}

/// The full sequences `mu_0..mu_{a-k}` of X and Z.
pub fn sectional_sequences(g: &IcisGerm, seed: Seed, cfg: &Config) -> Result<(Vec<u64>, Vec<u64>)> {
    let d = g.dim();
    let mut mux = Vec::with_capacity(d + 1);
    let mut muz = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let (a, b) = sectional_milnor(g, i, seed.child(0x5ec + i as u64), cfg)?;
        mux.push(a);
        muz.push(b);
    }
    Ok((mux, muz))
}

/// Multiplicity at the origin: colength of the equations plus `dim X` random
/// linear forms; two independent draws must agree.
pub fn multiplicity_at_origin(g: &IcisGerm, seed: Seed, cfg: &Config) -> Result<u64> {
    let d = g.dim();
    let field = g.field().clone();
    agree_twice(seed.child(0x317), cfg.retries, "multiplicity at the origin", |s| {
        let mut rng = s.rng();
        let mut gens = g.equations.clone();
        for _ in 0..d {
            gens.push(random_linear_form(&mut rng, g.a, &field, cfg.height)?);
        }
        local_colength(gens, g.a, Vec::new(), cfg)?
            .finite()
            .ok_or_else(|| EngineError::GenericityFailure {
                what: "linear section is not zero-dimensional".into(),
                retries: 0,
            })
    })
}

/// Is the critical structure of `(X, f)` isolated at the origin?
pub fn z_isolated(g: &IcisGerm, cfg: &Config) -> Result<bool> {
    let jm = jacobian_module(g)?;
    let minors = minors_ideal(&jm);
    let mut gens = g.equations.clone();
    gens.extend(minors.generators);
    Ok(local_colength(gens, g.a, Vec::new(), cfg)?.finite().is_some())
}

pub fn is_invertible(m: &[Vec<crate::scalar::Scalar>]) -> bool {
    !scalar_det(m).is_zero()
}
