//! Constructing prime subcomplexes of a free complex from basis selections.
//!
//! On a free complex F, pick per-degree subsets of basis columns (closed
//! under the differentials), add p·F, and saturate at the prime p.  The
//! result is always a prime subcomplex when proper.

use prime_subcomplex::complex::{construct_free_prime, is_prime_subcomplex, Complex, Verdict};
use prime_subcomplex::module::{FgModule, ModuleMap};
use prime_subcomplex::ring::{Ideal, RingCtx, DEFAULT_FACTOR_CAP};
use prime_subcomplex::Mat;

fn main() {
    // F: 0 → Z² --[[1,0],[0,0]]--> Z² → 0; the differential sends the first
    // basis vector to the first, kills the second.
    let ctx = RingCtx::integers();
    let f0 = FgModule::free(ctx.clone(), 2);
    let f1 = FgModule::free(ctx.clone(), 2);
    let d = ModuleMap::new(
        f1.clone(),
        f0.clone(),
        Mat::from_int_rows(&[&[1, 0], &[0, 0]]),
    )
    .unwrap();
    let f = Complex::new(ctx.clone(), 0, vec![f0, f1], vec![d]).unwrap();
    let p = Ideal::new(3, &ctx);

    // Select column 0 at both degrees: closed, since d(e_0) = e_0.
    let built = construct_free_prime(&f, &p, &[vec![0], vec![0]], DEFAULT_FACTOR_CAP).unwrap();
    let rep = is_prime_subcomplex(&built.subcomplex, DEFAULT_FACTOR_CAP).unwrap();
    println!(
        "selection {{e_0}}, {{e_0}} with p = (3): proper = {}, verdict {}",
        built.proper, rep.verdict
    );
    assert_eq!(rep.verdict, Verdict::Prime);

    // Selecting column 0 only at degree 1 is not closed (d(e_0) = e_0 must
    // be selected at degree 0 too): the constructor reports which degree.
    let err = construct_free_prime(&f, &p, &[vec![], vec![0]], DEFAULT_FACTOR_CAP).unwrap_err();
    println!("non-closed selection rejected: {err}");
}
