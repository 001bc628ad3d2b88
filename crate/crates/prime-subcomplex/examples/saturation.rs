//! Saturating a subcomplex at a prime ideal.
//!
//! The saturation of S at p collects every m with t·m ∈ S for some t ∉ p.
//! When every proper colon (S_i : C_i) equals p, the result is a prime
//! subcomplex; the report carries that hypothesis flag either way.

use num_bigint::BigInt;
use prime_subcomplex::complex::{is_prime_subcomplex, saturate_subcomplex, Complex, Subcomplex};
use prime_subcomplex::module::{FgModule, Submodule};
use prime_subcomplex::ring::{Ideal, RingCtx, DEFAULT_FACTOR_CAP};

fn main() {
    let ctx = RingCtx::integers();
    let m = FgModule::from_invariants(ctx.clone(), vec![BigInt::from(4)], 1).unwrap();
    let c = Complex::concentrated(m.clone());

    // S = 2·(Z/4 ⊕ Z): the colon is exactly (2), so the hypothesis holds.
    // Odd scalars cannot pull anything new into S here, so S is already
    // saturated, and its quotient Z/2 ⊕ Z/2 is elementary — prime.
    let s = Subcomplex::new(
        c.clone(),
        vec![Submodule::full(m.clone()).scale_by(&BigInt::from(2))],
    )
    .unwrap();
    let p = Ideal::new(2, &ctx);
    let sat = saturate_subcomplex(&s, &p, DEFAULT_FACTOR_CAP).unwrap();
    println!(
        "saturate(2·(Z/4 ⊕ Z), (2)): proper = {}, hypothesis (all proper colons = p) = {}",
        sat.proper, sat.hypothesis_ok
    );
    let rep = is_prime_subcomplex(&sat.subcomplex, DEFAULT_FACTOR_CAP).unwrap();
    println!("  verdict after saturation: {}", rep.verdict);

    // S = 0 inside Z/4 (no free part): the colon is (4), not (2), so the
    // hypothesis is violated.  The operation still computes — odd scalars
    // are units modulo 4, so nothing new lands in S and the non-prime
    // quotient Z/4 survives.
    let m4 = FgModule::from_invariants(ctx.clone(), vec![BigInt::from(4)], 0).unwrap();
    let c4 = Complex::concentrated(m4.clone());
    let s0 = Subcomplex::new(c4, vec![Submodule::zero(m4)]).unwrap();
    let sat = saturate_subcomplex(&s0, &p, DEFAULT_FACTOR_CAP).unwrap();
    println!(
        "saturate(0 ⊆ Z/4, (2)): proper = {}, hypothesis = {}",
        sat.proper, sat.hypothesis_ok
    );
    let rep = is_prime_subcomplex(&sat.subcomplex, DEFAULT_FACTOR_CAP).unwrap();
    println!("  verdict after saturation: {}", rep.verdict);

    // Saturating the same S at (3) absorbs everything: each element of Z/4
    // is killed by a power of 2, and 2 ∉ (3).  The result is the whole
    // complex, hence not proper.
    let q = Ideal::new(3, &ctx);
    let sat = saturate_subcomplex(&s0, &q, DEFAULT_FACTOR_CAP).unwrap();
    println!(
        "saturate(0 ⊆ Z/4, (3)): proper = {}, hypothesis = {}",
        sat.proper, sat.hypothesis_ok
    );
}
