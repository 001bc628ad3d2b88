//! Decide primeness of a subcomplex and replay the refutation witness.
//!
//! The complex is 0 → Z --2--> Z/4 → 0 over Z.  The subcomplex
//! S = (2·Z/4, Z) is prime with colon ideal (2); shrinking it to
//! (0, 2·Z) makes it merely primary, and the decider hands back a pair
//! (r, m) with r·m ∈ S, m ∉ S, r outside the colon.

use num_bigint::BigInt;
use prime_subcomplex::complex::{is_primary_subcomplex, is_prime_subcomplex, Complex, Subcomplex};
use prime_subcomplex::module::{FgModule, ModuleMap, Submodule};
use prime_subcomplex::ring::{RingCtx, DEFAULT_FACTOR_CAP};
use prime_subcomplex::Mat;

fn main() {
    let ctx = RingCtx::integers();
    let z4 = FgModule::from_invariants(ctx.clone(), vec![BigInt::from(4)], 0).unwrap();
    let z = FgModule::free(ctx.clone(), 1);
    let d = ModuleMap::new(z.clone(), z4.clone(), Mat::from_int_rows(&[&[2]])).unwrap();
    let c = Complex::new(ctx, 0, vec![z4.clone(), z.clone()], vec![d]).unwrap();
    println!("complex: {c}");

    let two = z4.element_from_ints(&[2]).unwrap();
    let s = Subcomplex::new(
        c.clone(),
        vec![
            Submodule::from_elements(z4.clone(), &[two]),
            Submodule::full(z.clone()),
        ],
    )
    .unwrap();
    let rep = is_prime_subcomplex(&s, DEFAULT_FACTOR_CAP).unwrap();
    println!("S = (2·Z/4, Z): {}", rep.verdict);
    for (i, p) in &rep.per_index_ideals {
        println!("  (S_{i} : C_{i}) radical = {p}");
    }

    // Shrink to S = (0, 2·Z): closed, since d(2·Z) = 4·Z/4 = 0.  The
    // degree-0 quotient Z/4 is not a prime quotient.
    let two_z = z.element_from_ints(&[2]).unwrap();
    let s0 = Subcomplex::new(
        c.clone(),
        vec![
            Submodule::zero(z4.clone()),
            Submodule::from_elements(z.clone(), &[two_z]),
        ],
    )
    .unwrap();
    let rep = is_prime_subcomplex(&s0, DEFAULT_FACTOR_CAP).unwrap();
    println!("S = (0, 2·Z): {}", rep.verdict);
    let w = rep.witness.expect("refutation carries a witness");
    let rm = z4.scale_elem(&w.r, &w.m);
    println!(
        "  witness: {} * {} = {} ∈ S_{}, but {} ∉ S_{}",
        w.r, w.m, rm, w.index, w.m, w.index
    );
    assert!(s0.part(w.index).contains(&rm));
    assert!(!s0.part(w.index).contains(&w.m));

    let rep = is_primary_subcomplex(&s0, DEFAULT_FACTOR_CAP).unwrap();
    println!("primary verdict for S = (0, 2·Z): {}", rep.verdict);
}
