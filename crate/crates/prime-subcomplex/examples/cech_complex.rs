//! The Čech complex of Z on pairwise-coprime elements, and primeness of
//! its diagonal ideal subcomplexes.

use prime_subcomplex::cech::{
    build_cech, check_d_squared, is_primary_cech_subcomplex, is_prime_cech_subcomplex,
    IdealSubcomplexPart,
};
use prime_subcomplex::ring::DEFAULT_FACTOR_CAP;

fn main() {
    let c = build_cech(&[3, 5, 7]).unwrap();
    check_d_squared(&c).unwrap();
    for (k, comp) in c.components.iter().enumerate() {
        let line: Vec<String> = comp.summands.iter().map(|u| format!("Z[1/{u}]")).collect();
        println!("degree {k}: {}", line.join(" ⊕ "));
    }

    // A diagonal subcomplex: at each degree, the summand-wise principal
    // ideals generated by the listed integers.  (2, 1, 1, 1) shrinks only
    // the degree-0 copy of Z to 2Z.
    let parts = |gens: [&[i64]; 4]| -> Vec<IdealSubcomplexPart> {
        gens.iter()
            .map(|g| IdealSubcomplexPart {
                gens: g.iter().map(|&n| n.into()).collect(),
            })
            .collect()
    };

    let p = parts([&[2], &[1, 1, 1], &[1, 1, 1], &[1]]);
    let rep = is_prime_cech_subcomplex(&p, &c, DEFAULT_FACTOR_CAP).unwrap();
    println!("S with 2Z at degree 0: {}", rep.verdict);

    let p = parts([&[4], &[1, 1, 1], &[1, 1, 1], &[1]]);
    let rep = is_prime_cech_subcomplex(&p, &c, DEFAULT_FACTOR_CAP).unwrap();
    print!("S with 4Z at degree 0: {}", rep.verdict);
    if let Some(w) = &rep.witness {
        print!(
            " — witness at degree {}, summand {}: r = {}, m = {}",
            w.degree, w.summand, w.r, w.m
        );
    }
    println!();
    let rep = is_primary_cech_subcomplex(&p, &c, DEFAULT_FACTOR_CAP).unwrap();
    println!("  primary verdict: {}", rep.verdict);

    // All-unit parts give the full subcomplex: not proper.
    let p = parts([&[1], &[1, 1, 1], &[1, 1, 1], &[1]]);
    let rep = is_prime_cech_subcomplex(&p, &c, DEFAULT_FACTOR_CAP).unwrap();
    println!("S = C: {}", rep.verdict);
    for n in &rep.notes {
        println!("  note: {n}");
    }
}
