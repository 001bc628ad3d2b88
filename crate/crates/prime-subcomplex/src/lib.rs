//! Exact computational algebra for chain complexes over localized integer rings.
//!
//! The base ring is `R_u = Z[1/u]` for a squarefree positive integer `u`
//! (`u = 1` gives `Z`).  Finitely generated `R_u`-modules are kept in
//! invariant-factor canonical form, submodules in canonical Hermite-reduced
//! generator form, and complexes as finitely supported families with `d∘d = 0`
//! checked exactly.  On top of this substrate the crate decides, with
//! replayable witnesses, whether a subcomplex is prime or primary, and
//! provides the supporting constructions: colon ideals, saturation,
//! localization, tensor with free complexes, Čech complexes of `Z`, and
//! prime avoidance.
//!
//! The `oracle` module contains independent brute-force reference
//! implementations of every decider; the `audit` module drives seeded
//! randomized verification of the structural theorems these deciders obey.
//!
//! See the `examples/` directory for one runnable example per capability;
//! the `psc` binary exposes the same operations over JSON documents.

pub mod audit;
pub mod cech;
pub mod cli;
pub mod complex;
pub mod doc;
pub mod matrix;
pub mod module;
pub mod oracle;
pub mod ring;
pub mod sample;


pub use audit::{run_audit, AuditOutcome, Tally};
pub use cech::{
    build_cech, check_d_squared, is_primary_cech_subcomplex, is_prime_cech_subcomplex,
    CechComplex, CechReport, CechWitness, IdealSubcomplexPart,
};
pub use complex::{
    is_maximal_subcomplex, is_primary_subcomplex, is_prime_subcomplex, is_pure_subcomplex,
    localize_complex, prime_avoidance, saturate_subcomplex, tensor_complex_with_free,
    AvoidanceOutcome, Complex, PrimenessReport, SaturatedSubcomplex, Subcomplex, Verdict, Witness,
};
pub use doc::{parse_document, parse_parts, DocError, Document};
pub use matrix::Mat;
pub use module::{FgModule, ModElem, ModuleMap, PrimeSet, Submodule};
pub use ring::{Ideal, RingCtx, RingElem, DEFAULT_FACTOR_CAP};
