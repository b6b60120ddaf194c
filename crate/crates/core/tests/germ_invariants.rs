//! Milnor numbers, sectional sequences, and multiplicities on classical
//! germs, cross-checked against independent oracles.

use equising_core::germ::{
    self, jacobian_module, milnor_icis, milnor_pair, minors_ideal, multiplicity_at_origin,
    sectional_milnor, sectional_sequences, IcisGerm,
};
use equising_core::parse::parse_poly;
use equising_core::ring::Ring;
use equising_core::rng::Seed;
use equising_core::scalar::FieldSpec;
use equising_core::{Config, Polynomial};
use equising_oracles::{macaulay_colength, staircase_inclusion_exclusion};

fn qring(names: &[&str]) -> Ring {
    Ring::new(names.iter().map(|s| s.to_string()).collect(), FieldSpec::Q)
}

fn germ_q(names: &[&str], eqs: &[&str], f: Option<&str>) -> IcisGerm {
    let r = qring(names);
    let eqs: Vec<Polynomial> = eqs.iter().map(|e| parse_poly(e, &r).unwrap()).collect();
    let f = f.map(|f| parse_poly(f, &r).unwrap());
    IcisGerm::new(r, eqs, f).unwrap()
}

#[test]
fn jacobian_module_shapes() {
    // plane curve: a 1 x 2 matrix of partials
    let g = germ_q(&["x", "y"], &[], Some("x^3 + y^3"));
    let jm = jacobian_module(&g).unwrap();
    assert_eq!(jm.rank, 1);
    assert_eq!(jm.columns.len(), 2);
    let r = qring(&["x", "y"]);
    assert_eq!(jm.matrix[0][0], parse_poly("3*x^2", &r).unwrap());
    assert_eq!(jm.matrix[0][1], parse_poly("3*y^2", &r).unwrap());

    // one equation and a function: a 2 x 2 matrix
    let g = germ_q(&["x1", "x2"], &["x1^2 + x2^2"], Some("x1"));
    let jm = jacobian_module(&g).unwrap();
    let r = qring(&["x1", "x2"]);
    assert_eq!(jm.matrix[0][0], parse_poly("2*x1", &r).unwrap());
    assert_eq!(jm.matrix[1][0], parse_poly("1", &r).unwrap());
    assert_eq!(jm.matrix[1][1], parse_poly("0", &r).unwrap());
}

#[test]
fn family_jacobian_extra_columns() {
    // f = x^4 - y*x^2 over one fiber variable and one parameter
    let ring = qring(&["x", "y"]);
    let f = parse_poly("x^4 - y*x^2", &ring).unwrap();
    let fam = germ::FamilyGerm::new(ring.clone(), 1, 1, vec![], f).unwrap();
    let jm = germ::family_jacobian_module(&fam).unwrap();
    assert_eq!(jm.columns.len(), 1);
    assert_eq!(jm.extra_columns.len(), 1);
    assert_eq!(jm.columns[0].component(0), &parse_poly("4*x^3 - 2*y*x", &ring).unwrap());
    assert_eq!(jm.extra_columns[0].component(0), &parse_poly("-x^2", &ring).unwrap());
}

#[test]
fn minors_of_augmented_matrix() {
    let g = germ_q(&["x1", "x2"], &["x1^2 + x2^2"], Some("x1"));
    let jm = jacobian_module(&g).unwrap();
    let mi = minors_ideal(&jm);
    let r = qring(&["x1", "x2"]);
    assert_eq!(mi.generators.len(), 1);
    assert_eq!(mi.generators[0], parse_poly("-2*x2", &r).unwrap());

    // 2 x 3 Jacobian of (x^2+y^2+z^2, x*y)
    let g = germ_q(&["x", "y", "z"], &["x^2 + y^2 + z^2"], Some("x*y"));
    let jm = jacobian_module(&g).unwrap();
    let mi = minors_ideal(&jm);
    let r3 = qring(&["x", "y", "z"]);
    let expect = [
        parse_poly("2*x^2 - 2*y^2", &r3).unwrap(),
        parse_poly("-2*y*z", &r3).unwrap(),
        parse_poly("-2*x*z", &r3).unwrap(),
    ];
    assert_eq!(mi.generators.len(), 3);
    for e in &expect {
        assert!(
            mi.generators.iter().any(|g| g == e || g == &e.neg()),
            "missing minor {}",
            e
        );
    }
}

#[test]
fn milnor_numbers_of_plane_curves() {
    let cfg = Config::default();
    let seed = Seed(7);
    // node
    let g = germ_q(&["x", "y"], &["x^2 + y^2"], None);
    assert_eq!(milnor_icis(&g, seed, &cfg).unwrap(), 1);
    // cusp
    let g = germ_q(&["x", "y"], &["x^2 + y^3"], None);
    assert_eq!(milnor_icis(&g, seed, &cfg).unwrap(), 2);
    // k = 0 gives 0
    let g = germ_q(&["x", "y"], &[], Some("x^3 + y^3"));
    assert_eq!(milnor_icis(&g, seed, &cfg).unwrap(), 0);
}

#[test]
fn quasihomogeneous_grid_matches_staircase_oracle() {
    let cfg = Config::default();
    let seed = Seed(11);
    for p in 2..=6u16 {
        for q in 2..=6u16 {
            let r = qring(&["x", "y"]);
            let f = parse_poly(&format!("x^{} + y^{}", p, q), &r).unwrap();
            let g = IcisGerm::new(r, vec![], Some(f)).unwrap();
            let (mu_x, mu_z) = milnor_pair(&g, seed, &cfg).unwrap();
            assert_eq!(mu_x, 0);
            // oracle: the Jacobian ideal is monomial, (x^(p-1), y^(q-1))
            let oracle =
                staircase_inclusion_exclusion(&[vec![p - 1, 0], vec![0, q - 1]], 2).unwrap();
            assert_eq!(mu_z, oracle);
            assert_eq!(mu_z, (p as u64 - 1) * (q as u64 - 1));
        }
    }
}

#[test]
fn milnor_pair_on_icis_with_function() {
    let cfg = Config::default();
    let seed = Seed(3);
    // X the plane node curve, f the first coordinate
    let g = germ_q(&["x1", "x2"], &["x1^2 + x2^2"], Some("x1"));
    let (mu_x, mu_z) = milnor_pair(&g, seed, &cfg).unwrap();
    assert_eq!((mu_x, mu_z), (1, 1));
    // Morse point
    let g = germ_q(&["x", "y"], &[], Some("x^2 + y^2"));
    assert_eq!(milnor_pair(&g, seed, &cfg).unwrap(), (0, 1));
    // Fermat cubic
    let g = germ_q(&["x", "y"], &[], Some("x^3 + y^3"));
    assert_eq!(milnor_pair(&g, seed, &cfg).unwrap(), (0, 4));
}

#[test]
fn space_curve_le_greuel_cross_check() {
    // V(x^2+y^2+z^2, x*y) in C^3: mu from the recursion must satisfy
    // 1 + mu = colength((x^2+y^2+z^2) + 2x2 minors), checked by the
    // Macaulay oracle on the same ideal.
    let cfg = Config::default();
    let seed = Seed(5);
    let r = qring(&["x", "y", "z"]);
    let eqs = [
        parse_poly("x^2 + y^2 + z^2", &r).unwrap(),
        parse_poly("x*y", &r).unwrap(),
    ];
    let g = IcisGerm::new(r.clone(), eqs.to_vec(), None).unwrap();
    let mu = milnor_icis(&g, seed, &cfg).unwrap();

    // oracle colength of (g1) + maximal minors of Jac(g1, g2)
    let jac: Vec<Vec<Polynomial>> = eqs
        .iter()
        .map(|p| (0..3).map(|v| p.derivative(v).unwrap()).collect())
        .collect();
    let minors = equising_core::linalg::maximal_minors(&jac, 2);
    let mut gens: Vec<Vec<Polynomial>> = vec![vec![eqs[0].clone()]];
    gens.extend(minors.into_iter().map(|m| vec![m]));
    let colength = macaulay_colength(&gens, 1, 3, &[], 10).expect("oracle stabilizes");
    // mu(X_1) = 1 for the A1 quadric, and the recursion gives mu(X_1) + mu = colength
    assert_eq!(1 + mu, colength);
}

#[test]
fn sectional_sequences_classics() {
    let cfg = Config::default();
    let seed = Seed(13);
    // x^3 + y^3: (mu_0, mu_1, mu_2)(Z) = (4, 2, 1)
    let g = germ_q(&["x", "y"], &[], Some("x^3 + y^3"));
    let (mux, muz) = sectional_sequences(&g, seed, &cfg).unwrap();
    assert_eq!(mux, vec![0, 0, 0]);
    assert_eq!(muz, vec![4, 2, 1]);
    // x^2 + y^3: (2, 1, 1)
    let g = germ_q(&["x", "y"], &[], Some("x^2 + y^3"));
    let (mux, muz) = sectional_sequences(&g, seed, &cfg).unwrap();
    assert_eq!(mux, vec![0, 0, 0]);
    assert_eq!(muz, vec![2, 1, 1]);
    // the node curve with f = x1: both sequences (1, 1)
    let g = germ_q(&["x1", "x2"], &["x1^2 + x2^2"], Some("x1"));
    let (mux, muz) = sectional_sequences(&g, seed, &cfg).unwrap();
    assert_eq!(mux, vec![1, 1]);
    assert_eq!(muz, vec![1, 1]);
}

#[test]
fn sectional_zero_codimension_equals_pair() {
    let cfg = Config::default();
    let seed = Seed(17);
    let g = germ_q(&["x", "y"], &[], Some("x^5 + y^4"));
    let pair = milnor_pair(&g, seed, &cfg).unwrap();
    let sec = sectional_milnor(&g, 0, seed, &cfg).unwrap();
    assert_eq!(pair, sec);
}

#[test]
fn multiplicities_at_origin() {
    let cfg = Config::default();
    let seed = Seed(19);
    let smooth = germ_q(&["x1", "x2"], &["x1"], None);
    assert_eq!(multiplicity_at_origin(&smooth, seed, &cfg).unwrap(), 1);
    let node = germ_q(&["x", "y"], &["x^2 + y^2"], None);
    assert_eq!(multiplicity_at_origin(&node, seed, &cfg).unwrap(), 2);
    let cusp = germ_q(&["x", "y"], &["x^2 + y^3"], None);
    assert_eq!(multiplicity_at_origin(&cusp, seed, &cfg).unwrap(), 2);
}

#[test]
fn invariance_under_linear_change_and_units() {
    let cfg = Config::default();
    // mu is invariant under a linear change of coordinates and under
    // multiplying an equation by a unit 1 + (linear form)
    let r = qring(&["x", "y"]);
    let f = parse_poly("x^2 + y^3", &r).unwrap();
    let g = IcisGerm::new(r.clone(), vec![f.clone()], None).unwrap();
    let base = milnor_icis(&g, Seed(23), &cfg).unwrap();

    let change = [
        parse_poly("x + 2*y", &r).unwrap(),
        parse_poly("3*x - y", &r).unwrap(),
    ];
    let fc = f.substitute(&change, 2).unwrap();
    let gc = IcisGerm::new(r.clone(), vec![fc], None).unwrap();
    assert_eq!(milnor_icis(&gc, Seed(29), &cfg).unwrap(), base);

    let unit = parse_poly("1 + x - 2*y", &r).unwrap();
    let gu = IcisGerm::new(r.clone(), vec![f.mul(&unit)], None).unwrap();
    assert_eq!(milnor_icis(&gu, Seed(31), &cfg).unwrap(), base);
}

#[test]
fn non_isolated_is_rejected() {
    let cfg = Config::default();
    // x^2*y has non-isolated critical locus
    let g = germ_q(&["x", "y"], &[], Some("x^2*y"));
    assert!(milnor_pair(&g, Seed(37), &cfg).is_err());
    // the whole Jacobian ideal (2xy, x^2) is not zero-dimensional
    let g2 = germ_q(&["x", "y"], &["x^2*y"], None);
    assert!(milnor_icis(&g2, Seed(41), &cfg).is_err());
}

#[test]
fn prime_field_recomputation_agrees() {
    // mu over Q and over two independent primes
    let cfg = Config::default();
    let seed = Seed(43);
    let over_q = {
        let g = germ_q(&["x", "y"], &[], Some("x^4 + x^2*y^2 + y^5"));
        milnor_pair(&g, seed, &cfg).unwrap()
    };
    for p in [
        equising_core::scalar::next_prime(1 << 30),
        equising_core::scalar::next_prime((1 << 30) + 1000),
    ] {
        let r = Ring::new(vec!["x".into(), "y".into()], FieldSpec::Fp(p));
        let f = parse_poly("x^4 + x^2*y^2 + y^5", &r).unwrap();
        let g = IcisGerm::new(r, vec![], Some(f)).unwrap();
        assert_eq!(milnor_pair(&g, seed, &cfg).unwrap(), over_q, "prime {}", p);
    }
}
