//! Eleven equivalent characterizations of a prime subcomplex, evaluated
//! independently on one example and confirmed to agree.

use num_bigint::BigInt;
use prime_subcomplex::complex::{
    equivalence_audit, is_maximal_subcomplex, is_prime_subcomplex, is_pure_subcomplex, Complex,
    Subcomplex,
};
use prime_subcomplex::module::{FgModule, Submodule};
use prime_subcomplex::ring::{RingCtx, DEFAULT_FACTOR_CAP};

fn main() {
    let ctx = RingCtx::integers();
    let m = FgModule::from_invariants(ctx.clone(), vec![BigInt::from(10)], 0).unwrap();
    let c = Complex::concentrated(m.clone());
    let s = Subcomplex::new(
        c,
        vec![Submodule::full(m.clone()).scale_by(&BigInt::from(5))],
    )
    .unwrap();
    let rep = is_prime_subcomplex(&s, DEFAULT_FACTOR_CAP).unwrap();
    println!("S = 5·Z/10 inside Z/10: {}", rep.verdict);

    // Conditions 1, 2, 4, 6, 8, 9, 10 are decided exactly; 3, 5, 7, 11
    // quantify over infinite families and are sampled within a budget.
    let trace = equivalence_audit(&s, 40, 7, DEFAULT_FACTOR_CAP).unwrap();
    for (name, holds) in &trace {
        println!("  {name}: {holds}");
    }
    assert!(trace.values().all(|&b| b), "all conditions agree on a prime");

    println!(
        "pure: {}, maximal: {}",
        is_pure_subcomplex(&s, 6, DEFAULT_FACTOR_CAP).unwrap(),
        is_maximal_subcomplex(&s, DEFAULT_FACTOR_CAP).unwrap()
    );
}
