//! Colon ideals, annihilators, zero divisors, and the torsion subcomplex.

use num_bigint::BigInt;
use prime_subcomplex::complex::Complex;
use prime_subcomplex::module::{FgModule, ModuleMap};
use prime_subcomplex::ring::{RingCtx, DEFAULT_FACTOR_CAP};
use prime_subcomplex::Mat;

fn main() {
    // 0 → Z --(3,0)--> Z/12 ⊕ Z → 0 over Z.
    let ctx = RingCtx::integers();
    let m0 = FgModule::from_invariants(ctx.clone(), vec![BigInt::from(12)], 1).unwrap();
    let m1 = FgModule::free(ctx.clone(), 1);
    let d = ModuleMap::new(m1.clone(), m0.clone(), Mat::from_int_rows(&[&[3], &[0]])).unwrap();
    let c = Complex::new(ctx, 0, vec![m0.clone(), m1.clone()], vec![d]).unwrap();
    println!("complex: {c}");

    println!("ann(C) = {}", c.annihilator());
    let z = c.zero_divisors(DEFAULT_FACTOR_CAP).unwrap();
    println!(
        "Z(C): primes common to all components = {:?}, zero included: {}",
        z.primes, z.includes_zero
    );

    // Colon ideals of S = 4·C (closed automatically, being a scaled copy).
    let s = c.scale_by_ideal(&prime_subcomplex::Ideal::new(4, c.ctx()));
    for i in c.indices() {
        println!("(S_{i} : C_{i}) = {}", s.part(i).colon());
    }

    // The torsion subcomplex keeps Z/12 at degree 0 and nothing free.
    let t = c.torsion_subcomplex();
    for i in c.indices() {
        let (q, _) = t.part(i).quotient();
        println!("torsion part at degree {i}: C_{i}/T_{i} = {q}");
    }
}
