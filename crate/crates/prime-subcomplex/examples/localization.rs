//! Localizing a complex: base change from Z[1/u] to Z[1/(u·a)].
//!
//! When a is coprime to every proper colon ideal of S (the transfer flag),
//! the prime verdict is both preserved and reflected by localization.

use num_bigint::BigInt;
use prime_subcomplex::complex::{is_prime_subcomplex, localize_complex, Complex, Subcomplex};
use prime_subcomplex::module::{FgModule, Submodule};
use prime_subcomplex::ring::{RingCtx, DEFAULT_FACTOR_CAP};

fn main() {
    let ctx = RingCtx::integers();
    let m = FgModule::from_invariants(ctx.clone(), vec![BigInt::from(6)], 0).unwrap();
    let c = Complex::concentrated(m.clone());
    // S = 2·Z/6 has colon (2); the quotient Z/2 is simple, so S is prime.
    let s = Subcomplex::new(
        c.clone(),
        vec![Submodule::full(m.clone()).scale_by(&BigInt::from(2))],
    )
    .unwrap();
    let before = is_prime_subcomplex(&s, DEFAULT_FACTOR_CAP).unwrap();
    println!("over Z: S = 2·Z/6 is {}", before.verdict);

    // Invert 5 (coprime to the colon (2)): the flag holds, verdict transfers.
    let (lc, ls, flag) = localize_complex(&c, &s, 5).unwrap();
    let after = is_prime_subcomplex(&ls, DEFAULT_FACTOR_CAP).unwrap();
    println!(
        "over Z[1/5]: complex is {lc}, transfer hypothesis = {flag}, verdict {}",
        after.verdict
    );
    assert!(flag);
    assert_eq!(before.verdict, after.verdict);

    // Invert 3: gcd(3, colon) = 1 still, but 3 kills part of Z/6 — the
    // module shrinks to Z/2 while the verdict is again preserved.
    let (lc, ls, flag) = localize_complex(&c, &s, 3).unwrap();
    println!(
        "over Z[1/3]: complex is {lc}, transfer hypothesis = {flag}, verdict {}",
        is_prime_subcomplex(&ls, DEFAULT_FACTOR_CAP).unwrap().verdict
    );

    // Invert 2: the flag drops — the colon meets (2) and no transfer is
    // promised.  Here S becomes the full subcomplex (not proper).
    let (_, ls, flag) = localize_complex(&c, &s, 2).unwrap();
    println!(
        "over Z[1/2]: transfer hypothesis = {flag}, verdict {}",
        is_prime_subcomplex(&ls, DEFAULT_FACTOR_CAP).unwrap().verdict
    );
}
