//! Tensoring with a free complex of rank k preserves prime verdicts.

use num_bigint::BigInt;
use prime_subcomplex::complex::{
    is_prime_subcomplex, tensor_complex_with_free, Complex, Subcomplex,
};
use prime_subcomplex::module::{FgModule, ModuleMap, Submodule};
use prime_subcomplex::ring::{RingCtx, DEFAULT_FACTOR_CAP};
use prime_subcomplex::Mat;

fn main() {
    let ctx = RingCtx::integers();
    let z9 = FgModule::from_invariants(ctx.clone(), vec![BigInt::from(9)], 0).unwrap();
    let z = FgModule::free(ctx.clone(), 1);
    let d = ModuleMap::new(z.clone(), z9.clone(), Mat::from_int_rows(&[&[3]])).unwrap();
    let c = Complex::new(ctx, 0, vec![z9.clone(), z.clone()], vec![d]).unwrap();
    let s = Subcomplex::new(
        c.clone(),
        vec![
            Submodule::full(z9.clone()).scale_by(&BigInt::from(3)),
            Submodule::full(z.clone()),
        ],
    )
    .unwrap();
    let base = is_prime_subcomplex(&s, DEFAULT_FACTOR_CAP).unwrap();
    println!("base complex {c}; S = (3·Z/9, Z) is {}", base.verdict);

    for k in 1..=3usize {
        let (tc, ts) = tensor_complex_with_free(&c, &s, k);
        let rep = is_prime_subcomplex(&ts, DEFAULT_FACTOR_CAP).unwrap();
        println!("⊗ R^{k}: {tc}; verdict {}", rep.verdict);
        assert_eq!(rep.verdict, base.verdict);
    }
}
