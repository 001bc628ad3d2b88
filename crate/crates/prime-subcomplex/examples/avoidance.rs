//! Prime avoidance for subcomplexes: if the intersection of finitely many
//! subcomplexes lies in a prime subcomplex S, one of them already does.
//!
//! This example generates random instances whose hypothesis is forced by
//! construction and confirms the conclusion on each.

use prime_subcomplex::complex::{prime_avoidance, AvoidanceOutcome};
use prime_subcomplex::ring::DEFAULT_FACTOR_CAP;
use prime_subcomplex::sample::{avoidance_instance, random_complex, random_ctx, trial_rng, SampleCfg};

fn main() {
    let cfg = SampleCfg::default();
    let mut holds = 0u64;
    let mut shown = 0;
    for trial in 0..200u64 {
        let mut rng = trial_rng(42, trial);
        let ctx = random_ctx(&mut rng, &cfg);
        let c = random_complex(&mut rng, &ctx, &cfg);
        let Some((ts, s)) = avoidance_instance(&mut rng, &c) else {
            continue;
        };
        match prime_avoidance(&ts, &s, DEFAULT_FACTOR_CAP).unwrap() {
            AvoidanceOutcome::Holds { index } => {
                holds += 1;
                if shown < 3 {
                    println!(
                        "instance over Z[1/{}], {} operand(s): T_{index} ⊆ S",
                        ctx.u(),
                        ts.len()
                    );
                    shown += 1;
                }
            }
            AvoidanceOutcome::InclusionFailure { .. } | AvoidanceOutcome::NotPrime(_) => {
                unreachable!("instances are built with the hypothesis forced")
            }
            AvoidanceOutcome::TheoremViolation => panic!("avoidance conclusion failed"),
        }
    }
    println!("conclusion held on all {holds} generated instances");
}
