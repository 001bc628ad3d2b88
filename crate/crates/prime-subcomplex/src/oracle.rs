//! Brute-force reference implementations of the submodule-level deciders,
//! used to cross-check the structure-theory shortcuts in `module`.
//!
//! Everything here works from the definitions by exhaustive search.  On a
//! finite ambient module the searches are complete, so both confirmations
//! and refutations are exact.  When the ambient module has a free part only
//! a bounded box is searched: refutations are still valid (each witness is
//! re-verified against the definition), but a failure to refute is reported
//! as `Unknown` rather than a confirmation.

use crate::module::{FgModule, ModElem, PrimeSet, Submodule};
use crate::ring::{Ideal, RingElem};
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// Bounds for searches over modules with a free part.
#[derive(Debug, Clone, Copy)]
pub struct SearchBox {
    /// Free coordinates range over `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    /// Scalars range over `0..=scalar_bound` (at least the torsion exponent
    /// is always covered).
    pub scalar_bound: u64,
}

impl Default for SearchBox {
    fn default() -> SearchBox {
        SearchBox {
            coeff_bound: 4,
            scalar_bound: 24,
        }
    }
}

/// Outcome of a brute-force decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteDecision {
    NotProper,
    Holds,
    /// Definition violated by this verified pair.
    Fails { r: RingElem, m: ModElem },
    /// Bounded search on an infinite module found no counterexample.
    Unknown,
}

/// Torsion exponent: the largest invariant factor, `1` for torsion-free.
fn exponent(m: &FgModule) -> BigInt {
    m.invariants().last().cloned().unwrap_or_else(BigInt::one)
}

/// All elements with torsion coordinates over the full residue range and
/// free coordinates in the box.
pub fn boxed_elements(m: &FgModule, b: &SearchBox) -> Vec<ModElem> {
    let mut ranges: Vec<Vec<BigInt>> = Vec::new();
    for d in m.invariants() {
        let mut r = Vec::new();
        let mut x = BigInt::zero();
        while &x < d {
            r.push(x.clone());
            x += 1;
        }
        ranges.push(r);
    }
    for _ in 0..m.free_rank() {
        ranges.push((-b.coeff_bound..=b.coeff_bound).map(BigInt::from).collect());
    }
    if ranges.is_empty() {
        return vec![m.zero_elem()];
    }
    ranges
        .into_iter()
        .multi_cartesian_product()
        .map(|coords| {
            m.element(coords.into_iter().map(RingElem::from_int).collect())
                .expect("rank")
        })
        .collect()
}

fn scalar_range(m: &FgModule, b: &SearchBox) -> Vec<BigInt> {
    let e = exponent(m);
    let top = e.max(BigInt::from(b.scalar_bound));
    let mut out = Vec::new();
    let mut x = BigInt::zero();
    while x <= top {
        out.push(x.clone());
        x += 1;
    }
    out
}

/// `r·M ⊆ S`, checked on the canonical generators.
fn scalar_maps_into(r: &BigInt, s: &Submodule) -> bool {
    let m = s.ambient();
    let re = RingElem::from_int(r.clone());
    (0..m.rank()).all(|j| s.contains(&m.scale_elem(&re, &m.basis_elem(j))))
}

/// Exhaustive-search tables for a finite ambient module: elements are
/// mixed-radix indices over the invariant factors (matching the order of
/// [`FgModule::enumerate_elements`]), membership of `S` is one bit per
/// element, and scalar action is machine arithmetic modulo each invariant.
struct FiniteTable {
    dims: Vec<u64>,
    strides: Vec<u64>,
    total: u64,
    member: Vec<bool>,
}

impl FiniteTable {
    fn build(s: &Submodule) -> Option<FiniteTable> {
        let m = s.ambient();
        if !m.is_finite() {
            return None;
        }
        let dims: Vec<u64> = m
            .invariants()
            .iter()
            .map(u64::try_from)
            .collect::<Result<_, _>>()
            .ok()?;
        let total = dims.iter().try_fold(1u64, |a, &d| a.checked_mul(d))?;
        if total > 4_000_000 {
            return None;
        }
        let mut strides = vec![1u64; dims.len()];
        for j in (0..dims.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * dims[j + 1];
        }
        let t = FiniteTable {
            dims,
            strides,
            total,
            member: Vec::new(),
        };
        let member = (0..total).map(|i| s.contains(&t.elem(m, i))).collect();
        Some(FiniteTable { member, ..t })
    }

    fn coords(&self, i: u64) -> Vec<u64> {
        self.dims
            .iter()
            .zip(&self.strides)
            .map(|(&d, &st)| (i / st) % d)
            .collect()
    }

    fn elem(&self, m: &FgModule, i: u64) -> ModElem {
        let coords: Vec<i64> = self.coords(i).into_iter().map(|c| c as i64).collect();
        m.element_from_ints(&coords).expect("rank")
    }

    /// Index of `r·x` for the element with index `i`; `r` is reduced per
    /// coordinate, so any non-negative scalar fits.
    fn scaled(&self, r: u64, i: u64) -> u64 {
        self.dims
            .iter()
            .zip(&self.strides)
            .map(|(&d, &st)| ((r % d) * ((i / st) % d) % d) * st)
            .sum()
    }

    /// `r·M ⊆ S` on the canonical generators.
    fn scalar_maps_in(&self, r: u64) -> bool {
        self.strides
            .iter()
            .all(|&st| self.member[self.scaled(r, st) as usize])
    }
}

/// `(S:M)` by definitional search.  Exact on finite ambient modules and
/// whenever some positive scalar within the bound works; the bool reports
/// exactness.
pub fn brute_colon(s: &Submodule, b: &SearchBox) -> (Ideal, bool) {
    let m = s.ambient();
    let ctx = m.ctx();
    let mut g = BigInt::zero();
    for r in scalar_range(m, b) {
        if !r.is_zero() && scalar_maps_into(&r, s) {
            g = g.gcd(&r);
        }
    }
    let exact = !g.is_zero() || m.is_finite();
    (Ideal::new(g, ctx), exact)
}

/// Prime by definition: no pair `(r, m)` with `r·m ∈ S`, `m ∉ S`,
/// `r·M ⊄ S`.
pub fn brute_is_prime_submodule(s: &Submodule, b: &SearchBox) -> BruteDecision {
    if s.is_full() {
        return BruteDecision::NotProper;
    }
    let m = s.ambient();
    if let Some(t) = FiniteTable::build(s) {
        let top = exponent(m).max(BigInt::from(b.scalar_bound));
        let top = u64::try_from(top).expect("fits: table bounded");
        // maps[r]: r·M ⊆ S, checked on the canonical generators.
        let maps: Vec<bool> = (0..=top).map(|r| t.scalar_maps_in(r)).collect();
        for i in 0..t.total {
            if t.member[i as usize] {
                continue;
            }
            for r in 0..=top {
                if !maps[r as usize] && t.member[t.scaled(r, i) as usize] {
                    return BruteDecision::Fails {
                        r: RingElem::from_int(r as i64),
                        m: t.elem(m, i),
                    };
                }
            }
        }
        return BruteDecision::Holds;
    }
    for x in boxed_elements(m, b) {
        if s.contains(&x) {
            continue;
        }
        for r in scalar_range(m, b) {
            let re = RingElem::from_int(r.clone());
            if s.contains(&m.scale_elem(&re, &x)) && !scalar_maps_into(&r, s) {
                return BruteDecision::Fails { r: re, m: x };
            }
        }
    }
    BruteDecision::Unknown
}

/// Primary by definition: no pair `(r, m)` with `r·m ∈ S`, `m ∉ S`, and no
/// power of `r` mapping `M` into `S`.  Power search is exhaustive on finite
/// modules (the exponent bounds the needed power).
pub fn brute_is_primary_submodule(s: &Submodule, b: &SearchBox) -> BruteDecision {
    if s.is_full() {
        return BruteDecision::NotProper;
    }
    let m = s.ambient();
    if !m.is_finite() {
        // A refutation needs certainty that no power of r works, which a
        // bounded search cannot give on an infinite module.
        return BruteDecision::Unknown;
    }
    let t = FiniteTable::build(s).expect("finite module within table bounds");
    let e = exponent(m);
    let max_pow = e.bits() as u32 + 1;
    let e = u64::try_from(&e).expect("fits: table bounded");
    let top = e.max(b.scalar_bound);
    // power_maps[r]: some power of r multiplies M into S.  Powers matter
    // modulo the exponent, but 0 must stay 0, hence the max(1).
    let power_maps: Vec<bool> = (0..=top)
        .map(|r| {
            let mut p = r;
            for _ in 0..max_pow {
                if t.scalar_maps_in(p) {
                    return true;
                }
                p = ((p as u128 * r as u128) % e.max(1) as u128) as u64;
            }
            false
        })
        .collect();
    for i in 0..t.total {
        if t.member[i as usize] {
            continue;
        }
        for r in 0..=top {
            if !power_maps[r as usize] && t.member[t.scaled(r, i) as usize] {
                return BruteDecision::Fails {
                    r: RingElem::from_int(r as i64),
                    m: t.elem(m, i),
                };
            }
        }
    }
    BruteDecision::Holds
}

/// `Z(M)` by definitional search on a finite module.
pub fn brute_zero_divisors(m: &FgModule) -> PrimeSet {
    assert!(m.is_finite(), "exhaustive search needs a finite module");
    let b = SearchBox::default();
    let elements = boxed_elements(m, &b);
    let mut primes = BTreeSet::new();
    for r in scalar_range(m, &b) {
        if r.is_zero() {
            continue;
        }
        let re = RingElem::from_int(r.clone());
        let kills = elements
            .iter()
            .any(|x| !x.is_zero() && m.scale_elem(&re, x).is_zero());
        if kills && crate::ring::is_prime(&r, u64::MAX).unwrap_or(false) {
            primes.insert(r);
        }
    }
    PrimeSet {
        primes,
        includes_zero: !m.is_zero_module(),
    }
}

/// `Ass(M)` by annihilator search over all elements of a finite module.
pub fn brute_associated_primes(m: &FgModule) -> PrimeSet {
    assert!(m.is_finite(), "exhaustive search needs a finite module");
    let b = SearchBox::default();
    let mut primes = BTreeSet::new();
    for x in boxed_elements(m, &b) {
        if x.is_zero() {
            continue;
        }
        // Smallest positive annihilating scalar.
        let ann = scalar_range(m, &b)
            .into_iter()
            .find(|c| !c.is_zero() && m.scale_elem(&RingElem::from_int(c.clone()), &x).is_zero())
            .expect("finite module");
        if crate::ring::is_prime(&ann, u64::MAX).unwrap_or(false) {
            primes.insert(ann);
        }
    }
    PrimeSet {
        primes,
        includes_zero: false,
    }
}

/// `Š_p(S)` by definitional search on a finite ambient module: all `m` with
/// `t·m ∈ S` for some `t ∉ p`.
pub fn brute_saturate(s: &Submodule, p: &Ideal) -> Submodule {
    let m = s.ambient();
    assert!(m.is_finite(), "exhaustive search needs a finite module");
    let tab = FiniteTable::build(s).expect("finite module within table bounds");
    let e = u64::try_from(&exponent(m)).expect("fits: table bounded");
    let pg = u64::try_from(p.gen()).expect("prime generator fits");
    // Scalar classes matter mod e, but the constraint t ∉ p must be met by
    // an actual representative; stretching the range by |p| covers that.
    let stretch = if pg == 0 { 1 } else { pg };
    let top = e * stretch + 1;
    let mut members = Vec::new();
    for i in 0..tab.total {
        for t in 1..=top {
            let in_p = if pg == 0 { t == 0 } else { t % pg == 0 };
            if !in_p && tab.member[tab.scaled(t, i) as usize] {
                members.push(tab.elem(m, i));
                break;
            }
        }
    }
    Submodule::from_elements(m.clone(), &members)
}

/// Replays a refutation witness against the definitions; used to validate
/// every reported counterexample independently of how it was produced.
pub fn verify_prime_witness(s: &Submodule, r: &RingElem, m: &ModElem) -> bool {
    let amb = s.ambient();
    // r and its canonical associate generate the same ideal, so r·M ⊆ S may
    // be tested through the stripped integer.
    let g = amb.ctx().strip_units(r.num());
    s.contains(&amb.scale_elem(r, m)) && !s.contains(m) && !scalar_maps_into(&g, s)
}
