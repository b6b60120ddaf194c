//! Buchsbaum-Rim multiplicities: closed-form graded colengths, agreement of
//! the Hilbert and minors routes, Newton-polygon cross-checks, polar
//! multiplicities, and the two binomial conventions for `e(m M)`.

use equising_core::brmult::{
    br_multiplicity_hilbert, br_multiplicity_minors, e_mm_direct, e_mm_polar_formula,
    graded_colength, ideal_times_module, maximal_ideal_gens, polar_multiplicity, ModuleContext,
};
use equising_core::germ::{jacobian_module, sectional_sequences, IcisGerm};
use equising_core::parse::parse_poly;
use equising_core::ring::Ring;
use equising_core::rng::Seed;
use equising_core::sb::{ModuleVector, Submodule};
use equising_core::scalar::FieldSpec;
use equising_core::{BinomialConvention, Config, Polynomial};
use equising_oracles::newton_polygon_multiplicity;

fn qring(names: &[&str]) -> Ring {
    Ring::new(names.iter().map(|s| s.to_string()).collect(), FieldSpec::Q)
}

fn p(s: &str, r: &Ring) -> Polynomial {
    parse_poly(s, r).unwrap()
}

/// {(t, 0), (0, t)} in rank 2 over one variable.
fn diag_t_t() -> Submodule {
    let r = qring(&["t"]);
    Submodule::new(
        vec![
            ModuleVector::new(vec![p("t", &r), p("0", &r)]),
            ModuleVector::new(vec![p("0", &r), p("t", &r)]),
        ],
        2,
        1,
        vec![],
    )
}

/// {(t^2, 0), (0, t)} in rank 2 over one variable.
fn diag_t2_t() -> Submodule {
    let r = qring(&["t"]);
    Submodule::new(
        vec![
            ModuleVector::new(vec![p("t^2", &r), p("0", &r)]),
            ModuleVector::new(vec![p("0", &r), p("t", &r)]),
        ],
        2,
        1,
        vec![],
    )
}

#[test]
fn graded_colengths_match_closed_forms() {
    let cfg = Config::default();
    let ctx = ModuleContext::new(1, 2);
    let m = diag_t_t();
    for n in 1..=4usize {
        assert_eq!(
            graded_colength(&m, ctx, n, &cfg).unwrap(),
            (n * (n + 1)) as u64,
            "n = {}",
            n
        );
    }
    let m = diag_t2_t();
    for (n, expect) in [(1usize, 3u64), (2, 9), (3, 18), (4, 30)] {
        assert_eq!(graded_colength(&m, ctx, n, &cfg).unwrap(), expect, "n = {}", n);
    }
    // rank-1: the ideal (x) has n-th graded colength n
    let r = qring(&["x"]);
    let m = Submodule::ideal(vec![p("x", &r)], 1, vec![]);
    let ctx1 = ModuleContext::new(1, 1);
    for n in 1..=5usize {
        assert_eq!(graded_colength(&m, ctx1, n, &cfg).unwrap(), n as u64);
    }
}

#[test]
fn hilbert_multiplicities() {
    let cfg = Config::default();
    assert_eq!(
        br_multiplicity_hilbert(&diag_t_t(), ModuleContext::new(1, 2), &cfg).unwrap(),
        2
    );
    assert_eq!(
        br_multiplicity_hilbert(&diag_t2_t(), ModuleContext::new(1, 2), &cfg).unwrap(),
        3
    );
    let r = qring(&["x", "y"]);
    let m = Submodule::ideal(vec![p("x^2", &r), p("y^2", &r)], 2, vec![]);
    assert_eq!(
        br_multiplicity_hilbert(&m, ModuleContext::new(2, 1), &cfg).unwrap(),
        4
    );
}

#[test]
fn minors_route_agrees_with_hilbert() {
    let cfg = Config::default();
    // {(t,0),(0,t)}: generator matrix has determinant t^2, colength 2
    let ctx = ModuleContext::new(1, 2);
    assert_eq!(br_multiplicity_minors(&diag_t_t(), ctx, &cfg).unwrap(), 2);

    // the node germ with f = x1
    let r = qring(&["x1", "x2"]);
    let g = IcisGerm::new(r, vec![p("x1^2 + x2^2", &qring(&["x1", "x2"]))], Some(p("x1", &qring(&["x1", "x2"])))).unwrap();
    let jm = jacobian_module(&g).unwrap();
    let ctx = ModuleContext::of_germ(&g);
    let minors = br_multiplicity_minors(&jm.as_submodule(), ctx, &cfg).unwrap();
    let hilbert = br_multiplicity_hilbert(&jm.as_submodule(), ctx, &cfg).unwrap();
    assert_eq!(minors, 2);
    assert_eq!(minors, hilbert);

    // k = 0 cubic: the Jacobian ideal (3x^2, 3y^2)
    let r = qring(&["x", "y"]);
    let g = IcisGerm::new(r.clone(), vec![], Some(p("x^3 + y^3", &r))).unwrap();
    let jm = jacobian_module(&g).unwrap();
    let ctx = ModuleContext::of_germ(&g);
    let minors = br_multiplicity_minors(&jm.as_submodule(), ctx, &cfg).unwrap();
    let hilbert = br_multiplicity_hilbert(&jm.as_submodule(), ctx, &cfg).unwrap();
    assert_eq!(minors, 4);
    assert_eq!(minors, hilbert);
}

#[test]
fn minors_route_precondition() {
    let cfg = Config::default();
    // one generator in rank 2 over one variable: d + r - 1 = 2 generators required
    let r = qring(&["t"]);
    let m = Submodule::new(
        vec![ModuleVector::new(vec![p("t", &r), p("0", &r)])],
        2,
        1,
        vec![],
    );
    assert!(matches!(
        br_multiplicity_minors(&m, ModuleContext::new(1, 2), &cfg),
        Err(equising_core::EngineError::Precondition(_))
    ));
}

#[test]
fn ideal_product_examples() {
    let r = qring(&["x", "y"]);
    let m = Submodule::ideal(vec![p("x", &r), p("y^2", &r)], 2, vec![]);
    let mm = ideal_times_module(&maximal_ideal_gens(2, &FieldSpec::Q), &m);
    // products: x^2, xy^2, xy, y^3
    let expect: Vec<Polynomial> = ["x^2", "x*y^2", "x*y", "y^3"]
        .iter()
        .map(|s| p(s, &r))
        .collect();
    assert_eq!(mm.gens.len(), 4);
    for e in &expect {
        assert!(mm.gens.iter().any(|g| g.component(0) == e));
    }
}

#[test]
fn samuel_multiplicities_match_newton_oracle() {
    let cfg = Config::default();
    let r = qring(&["x", "y"]);
    let cases: Vec<(Vec<&str>, Vec<(u64, u64)>)> = vec![
        (vec!["x^2", "y^2"], vec![(2, 0), (0, 2)]),
        (vec!["x^3", "x^2*y", "x*y^2", "y^3"], vec![(3, 0), (2, 1), (1, 2), (0, 3)]),
        (vec!["x^2", "x*y", "y^3"], vec![(2, 0), (1, 1), (0, 3)]),
    ];
    for (gens, exps) in cases {
        let m = Submodule::ideal(gens.iter().map(|s| p(s, &r)).collect(), 2, vec![]);
        let engine = br_multiplicity_hilbert(&m, ModuleContext::new(2, 1), &cfg).unwrap();
        let oracle = newton_polygon_multiplicity(&exps).unwrap();
        assert_eq!(engine, oracle, "gens {:?}", gens);
    }
}

#[test]
fn polar_multiplicities_of_plane_curves() {
    let cfg = Config::default();
    let seed = Seed(101);
    let r = qring(&["x", "y"]);
    let g = IcisGerm::new(r.clone(), vec![], Some(p("x^3 + y^3", &r))).unwrap();
    let polars: Vec<u64> = (0..=2)
        .map(|i| polar_multiplicity(&g, i, seed, &cfg).unwrap())
        .collect();
    assert_eq!(polars, vec![4, 2, 1]);

    let g = IcisGerm::new(r.clone(), vec![], Some(p("x^2 + y^3", &r))).unwrap();
    let polars: Vec<u64> = (0..=2)
        .map(|i| polar_multiplicity(&g, i, seed, &cfg).unwrap())
        .collect();
    assert_eq!(polars, vec![2, 1, 1]);
}

#[test]
fn unit_polar_ideal_gives_zero() {
    // smooth X = V(x1) with f = x2: the augmented Jacobian has a constant
    // 2x2 minor, so the polar ideal is the unit ideal
    let cfg = Config::default();
    let r = qring(&["x1", "x2"]);
    let g = IcisGerm::new(r.clone(), vec![p("x1", &r)], Some(p("x2", &r))).unwrap();
    assert_eq!(polar_multiplicity(&g, 0, Seed(103), &cfg).unwrap(), 0);
}

#[test]
fn polar_equals_sectional_sums() {
    // m(Pi^i) = mu_i(X) + mu_i(Z) for i < dim X
    let cfg = Config::default();
    let seed = Seed(107);
    let r = qring(&["x", "y"]);
    for f in ["x^3 + y^3", "x^2 + y^3", "x^5 + y^4", "x^2 + y^4"] {
        let g = IcisGerm::new(r.clone(), vec![], Some(p(f, &r))).unwrap();
        let (mux, muz) = sectional_sequences(&g, seed, &cfg).unwrap();
        for i in 0..g.dim() {
            let m = polar_multiplicity(&g, i, seed.child(i as u64), &cfg).unwrap();
            assert_eq!(m, mux[i] + muz[i], "f = {}, i = {}", f, i);
        }
    }
    // and a k = 1 case
    let r = qring(&["x1", "x2"]);
    let g = IcisGerm::new(r.clone(), vec![p("x1^2 + x2^2", &r)], Some(p("x1", &r))).unwrap();
    let (mux, muz) = sectional_sequences(&g, seed, &cfg).unwrap();
    let m = polar_multiplicity(&g, 0, seed, &cfg).unwrap();
    assert_eq!(m, mux[0] + muz[0]);
}

#[test]
fn e_mm_direct_values() {
    let cfg = Config::default();
    let r = qring(&["x", "y"]);
    // cusp: e(m * (x, y^2)) = 5
    let g = IcisGerm::new(r.clone(), vec![], Some(p("x^2 + y^3", &r))).unwrap();
    let jm = jacobian_module(&g).unwrap();
    assert_eq!(e_mm_direct(&jm, ModuleContext::of_germ(&g), &cfg).unwrap(), 5);
    // cubic: e(m^3) = 9
    let g = IcisGerm::new(r.clone(), vec![], Some(p("x^3 + y^3", &r))).unwrap();
    let jm = jacobian_module(&g).unwrap();
    assert_eq!(e_mm_direct(&jm, ModuleContext::of_germ(&g), &cfg).unwrap(), 9);
    // node with f = x1: e(m M) = 6
    let r2 = qring(&["x1", "x2"]);
    let g = IcisGerm::new(r2.clone(), vec![p("x1^2 + x2^2", &r2)], Some(p("x1", &r2))).unwrap();
    let jm = jacobian_module(&g).unwrap();
    assert_eq!(e_mm_direct(&jm, ModuleContext::of_germ(&g), &cfg).unwrap(), 6);
}

#[test]
fn binomial_conventions_bracket_the_direct_value() {
    let cfg = Config::default();
    let seed = Seed(109);
    let r = qring(&["x", "y"]);
    let g = IcisGerm::new(r.clone(), vec![], Some(p("x^3 + y^3", &r))).unwrap();
    let with_a =
        e_mm_polar_formula(&g, BinomialConvention::A, seed, &cfg).unwrap();
    let with_a_minus_1 =
        e_mm_polar_formula(&g, BinomialConvention::AMinusOne, seed, &cfg).unwrap();
    assert_eq!(with_a, 9);
    assert_eq!(with_a_minus_1, 6);
    let g = IcisGerm::new(r.clone(), vec![], Some(p("x^2 + y^3", &r))).unwrap();
    assert_eq!(
        e_mm_polar_formula(&g, BinomialConvention::A, seed, &cfg).unwrap(),
        5
    );
}

#[test]
fn e_mm_invariant_under_linear_change() {
    let cfg = Config::default();
    let r = qring(&["x", "y"]);
    let f = p("x^2 + y^3", &r);
    let change = [p("x + y", &r), p("2*x - y", &r)];
    let fc = f.substitute(&change, 2).unwrap();
    let g1 = IcisGerm::new(r.clone(), vec![], Some(f)).unwrap();
    let g2 = IcisGerm::new(r.clone(), vec![], Some(fc)).unwrap();
    let e1 = e_mm_direct(&jacobian_module(&g1).unwrap(), ModuleContext::of_germ(&g1), &cfg).unwrap();
    let e2 = e_mm_direct(&jacobian_module(&g2).unwrap(), ModuleContext::of_germ(&g2), &cfg).unwrap();
    assert_eq!(e1, e2);
}
