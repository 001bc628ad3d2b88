//! Cross-checking the structural deciders against brute-force enumeration.
//!
//! On a finite module every question can be settled by trying all elements
//! and scalars; the fast deciders must agree with that.

use num_bigint::BigInt;
use prime_subcomplex::module::{
    is_primary_submodule, is_prime_submodule, FgModule, Submodule, SubmoduleVerdict,
};
use prime_subcomplex::oracle::{
    brute_colon, brute_is_primary_submodule, brute_is_prime_submodule, BruteDecision, SearchBox,
};
use prime_subcomplex::ring::{RingCtx, DEFAULT_FACTOR_CAP};

fn main() {
    let ctx = RingCtx::integers();
    let m = FgModule::from_invariants(ctx, vec![BigInt::from(2), BigInt::from(12)], 0).unwrap();
    let b = SearchBox::default();

    // Every cyclic submodule of Z/2 ⊕ Z/12, decided both ways.
    let mut agreements = 0;
    for e in m.enumerate_elements().unwrap() {
        let s = Submodule::from_elements(m.clone(), &[e.clone()]);
        let fast = is_prime_submodule(&s, DEFAULT_FACTOR_CAP).unwrap();
        let brute = brute_is_prime_submodule(&s, &b);
        let ok = matches!(
            (&brute, fast.verdict),
            (BruteDecision::Holds, SubmoduleVerdict::Prime)
                | (BruteDecision::Fails { .. }, SubmoduleVerdict::NotPrime)
                | (BruteDecision::NotProper, SubmoduleVerdict::NotProper)
        );
        assert!(ok, "disagreement on <{e}>");

        let fast = is_primary_submodule(&s, DEFAULT_FACTOR_CAP).unwrap();
        let brute = brute_is_primary_submodule(&s, &b);
        assert!(matches!(
            (&brute, fast.verdict),
            (BruteDecision::Holds, SubmoduleVerdict::Primary)
                | (BruteDecision::Fails { .. }, SubmoduleVerdict::NotPrimary)
                | (BruteDecision::NotProper, SubmoduleVerdict::NotProper)
        ));

        let (oracle_colon, exact) = brute_colon(&s, &b);
        assert!(exact, "finite module: oracle colon is exact");
        assert_eq!(oracle_colon, s.colon());
        agreements += 1;
    }
    println!(
        "fast and brute-force deciders agreed on all {agreements} cyclic submodules of {m}"
    );
}
