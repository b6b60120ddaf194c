//! Scratch profiler for the Rees-degree computations.

use equising_core::brmult::{graded_colength, ideal_times_module, maximal_ideal_gens, ModuleContext};
use equising_core::germ::{jacobian_module, IcisGerm};
use equising_core::parse::parse_poly;
use equising_core::ring::Ring;
use equising_core::scalar::FieldSpec;
use equising_core::Config;
use std::time::Instant;

fn main() {
    let cfg = Config::default();
    let r = Ring::new(vec!["x".into(), "y".into()], FieldSpec::Q);
    let f = parse_poly("x^2 + y^3", &r).unwrap();
    let change = [
        parse_poly("x + y", &r).unwrap(),
        parse_poly("2*x - y", &r).unwrap(),
    ];
    let fc = f.substitute(&change, 2).unwrap();
    let g = IcisGerm::new(r.clone(), vec![], Some(fc)).unwrap();
    let jm = jacobian_module(&g).unwrap();
    let m = jm.as_submodule();
    let mm = ideal_times_module(&maximal_ideal_gens(2, &FieldSpec::Q), &m);
    let ctx = ModuleContext::of_germ(&g);
    for n in 1..=6 {
        let t = Instant::now();
        let c = graded_colength(&mm, ctx, n, &cfg);
        println!("n = {}: c = {:?}  ({:?})", n, c, t.elapsed());
    }
}
