//! The scalar substrate: exact arithmetic in `R_u = Z[1/u]`, its ideals and
//! their factorization.
//!
//! `u` is a squarefree positive integer; `u = 1` gives the plain integers.
//! Every ideal of the PID `R_u` has a unique generator that is a non-negative
//! integer coprime to `u`, so ideal equality is a single integer comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Trial-division bound: candidate divisors above this cap raise
/// [`RingError::FactorCapExceeded`].
pub const DEFAULT_FACTOR_CAP: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("denominator {den} has a prime factor not inverted in Z[1/{u}]")]
    DenominatorNotInverted { den: BigInt, u: u64 },
    #[error("factorization of {n} exceeds the trial-division cap {cap}")]
    FactorCapExceeded { n: BigInt, cap: u64 },
    #[error("ideal ({gen}) is not prime")]
    NotPrime { gen: BigInt },
}

/// Complete factorization of `n ≥ 1` by trial division, sorted ascending.
///
/// Candidate divisors are capped; a residual cofactor larger than `cap²`
/// cannot be certified prime and is reported as an error.
pub fn factor(n: &BigInt, cap: u64) -> Result<Vec<(BigInt, u32)>, RingError> {
    assert!(n.is_positive(), "factor requires n >= 1, got {n}");
    let mut m = n.clone();
    let mut out = Vec::new();
    let mut d = BigInt::from(2u32);
    let cap_big = BigInt::from(cap);
    while &d * &d <= m {
        if d > cap_big {
            return Err(RingError::FactorCapExceeded { n: n.clone(), cap });
        }
        if m.is_multiple_of(&d) {
            let mut e = 0u32;
            while m.is_multiple_of(&d) {
                m /= &d;
                e += 1;
            }
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if m > BigInt::one() {
        if m > &cap_big * &cap_big {
            return Err(RingError::FactorCapExceeded { n: n.clone(), cap });
        }
        out.push((m, 1));
    }
    Ok(out)
}

/// `true` iff `n` is a (positive) rational prime.
pub fn is_prime(n: &BigInt, cap: u64) -> Result<bool, RingError> {
    if *n < BigInt::from(2u32) {
        return Ok(false);
    }
    let f = factor(n, cap)?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

/// The base ring `R_u = Z[1/u]`.
///
/// Construction normalizes `u` to its squarefree kernel, since
/// `Z[1/a] = Z[1/rad(a)]`; there is exactly one context per localization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingCtx {
    u: u64,
    inverted_primes: Vec<u64>,
}

impl RingCtx {
    pub fn new(u: u64) -> Result<RingCtx, RingError> {
        assert!(u >= 1, "u must be a positive integer");
        let f = factor(&BigInt::from(u), DEFAULT_FACTOR_CAP)?;
        let primes: Vec<u64> = f
            .iter()
            .map(|(p, _)| u64::try_from(p).expect("prime factor of u64 fits u64"))
            .collect();
        let rad: u64 = primes.iter().product::<u64>().max(1);
        Ok(RingCtx {
            u: rad,
            inverted_primes: primes,
        })
    }

    /// The ring of integers, `u = 1`.
    pub fn integers() -> RingCtx {
        RingCtx {
            u: 1,
            inverted_primes: Vec::new(),
        }
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn inverted_primes(&self) -> &[u64] {
        &self.inverted_primes
    }

    /// Removes every factor of an inverted prime from `|n|`; the result is a
    /// non-negative integer coprime to `u` (the canonical associate of `n`).
    pub fn strip_units(&self, n: &BigInt) -> BigInt {
        let mut m = n.abs();
        if m.is_zero() {
            return m;
        }
        for &p in &self.inverted_primes {
            let p = BigInt::from(p);
            while m.is_multiple_of(&p) {
                m /= &p;
            }
        }
        m
    }

    /// `true` iff every prime factor of `n` is inverted, i.e. `n` is a unit
    /// of `R_u` when viewed as a nonzero integer.
    pub fn is_unit_integer(&self, n: &BigInt) -> bool {
        !n.is_zero() && self.strip_units(n).is_one()
    }
}

impl fmt::Display for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u == 1 {
            write!(f, "Z")
        } else {
            write!(f, "Z[1/{}]", self.u)
        }
    }
}

/// An element `num/den` of `R_u`, stored reduced with `den > 0` a product of
/// inverted primes and `den = 1` when `num = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    num: BigInt,
    den: BigInt,
}

impl RingElem {
    /// Reduces `num/den` without validating the denominator against a
    /// context; callers inside the crate only produce legal denominators.
    pub(crate) fn reduced(num: BigInt, den: BigInt) -> RingElem {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        if num.is_zero() {
            return RingElem {
                num,
                den: BigInt::one(),
            };
        }
        let g = num.gcd(&den);
        RingElem {
            num: num / &g,
            den: den / g,
        }
    }

    /// Canonical representative of `num/den` in `R_u`.
    pub fn canonicalize(num: BigInt, den: BigInt, ctx: &RingCtx) -> Result<RingElem, RingError> {
        assert!(den.is_positive(), "denominator must be positive");
        let r = RingElem::reduced(num, den);
        if !ctx.strip_units(&r.den).is_one() {
            return Err(RingError::DenominatorNotInverted {
                den: r.den,
                u: ctx.u,
            });
        }
        Ok(r)
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> RingElem {
        RingElem {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> RingElem {
        RingElem::from_int(0)
    }

    pub fn one() -> RingElem {
        RingElem::from_int(1)
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// `true` iff the element is invertible in `R_u`: nonzero with numerator
    /// a product of inverted primes (up to sign).
    pub fn is_unit(&self, ctx: &RingCtx) -> bool {
        !self.num.is_zero() && ctx.strip_units(&self.num).is_one()
    }

    /// The canonical associate: the unique non-negative integer coprime to
    /// `u` generating the same principal ideal.
    pub fn canonical_associate(&self, ctx: &RingCtx) -> BigInt {
        ctx.strip_units(&self.num)
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        RingElem::reduced(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        RingElem::reduced(
            &self.num * &other.den - &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        RingElem::reduced(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn neg(&self) -> RingElem {
        RingElem {
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// Exact division within `R_u`; `None` when the quotient leaves the ring.
    pub fn checked_div(&self, other: &RingElem, ctx: &RingCtx) -> Option<RingElem> {
        if other.is_zero() {
            return None;
        }
        let q = RingElem::reduced(&self.num * &other.den, &self.den * &other.num);
        if ctx.strip_units(&q.den).is_one() {
            Some(q)
        } else {
            None
        }
    }

    /// Inverse of a unit.
    pub fn inverse(&self, ctx: &RingCtx) -> Option<RingElem> {
        RingElem::one().checked_div(self, ctx)
    }

    /// Canonical residue of this element modulo a positive integer `m`
    /// coprime to `u`: the integer in `[0, m)` congruent to `num·den⁻¹`.
    pub fn residue_mod(&self, m: &BigInt) -> BigInt {
        assert!(m.is_positive());
        let dinv = mod_inverse(&self.den, m).expect("denominator invertible mod m");
        ((&self.num % m + m) * dinv % m + m) % m
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Modular inverse of `a` modulo `m > 0`, when `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = ((a % m) + m) % m;
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(((e.x % m) + m) % m)
    } else {
        None
    }
}

/// Extended gcd in `R_u`: returns `(g, x, y)` with `g` the canonical
/// generator (non-negative integer coprime to `u`) of the ideal `(a, b)` and
/// `x·a + y·b = g` exactly.
pub fn ring_xgcd(a: &RingElem, b: &RingElem, ctx: &RingCtx) -> (BigInt, RingElem, RingElem) {
    if a.is_zero() && b.is_zero() {
        return (BigInt::zero(), RingElem::zero(), RingElem::zero());
    }
    let sa = a.canonical_associate(ctx);
    let sb = b.canonical_associate(ctx);
    if a.is_zero() {
        let y = RingElem::from_int(sb.clone())
            .checked_div(b, ctx)
            .expect("b = unit * sb");
        return (sb, RingElem::zero(), y);
    }
    if b.is_zero() {
        let x = RingElem::from_int(sa.clone())
            .checked_div(a, ctx)
            .expect("a = unit * sa");
        return (sa, x, RingElem::zero());
    }
    let e = sa.extended_gcd(&sb);
    // g = e.x * sa + e.y * sb; rewrite sa = a / u_a, sb = b / u_b.
    let ua_inv = RingElem::from_int(sa).checked_div(a, ctx).expect("unit");
    let ub_inv = RingElem::from_int(sb).checked_div(b, ctx).expect("unit");
    let x = RingElem::from_int(e.x).mul(&ua_inv);
    let y = RingElem::from_int(e.y).mul(&ub_inv);
    (e.gcd, x, y)
}

/// An ideal of `R_u`, held by its canonical generator: a non-negative
/// integer coprime to `u` (`0` = zero ideal, `1` = unit ideal).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    gen: BigInt,
}

impl Ideal {
    /// The ideal generated by the integer `n`, canonicalized.
    pub fn new<T: Into<BigInt>>(n: T, ctx: &RingCtx) -> Ideal {
        Ideal {
            gen: ctx.strip_units(&n.into()),
        }
    }

    pub fn zero() -> Ideal {
        Ideal {
            gen: BigInt::zero(),
        }
    }

    pub fn unit() -> Ideal {
        Ideal { gen: BigInt::one() }
    }

    pub fn gen(&self) -> &BigInt {
        &self.gen
    }

    pub fn is_zero(&self) -> bool {
        self.gen.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.gen.is_one()
    }

    pub fn is_proper(&self) -> bool {
        !self.gen.is_one()
    }

    /// The principal ideal generated by a ring element.
    pub fn of_element(x: &RingElem, ctx: &RingCtx) -> Ideal {
        Ideal {
            gen: x.canonical_associate(ctx),
        }
    }

    /// `true` iff the ideal is prime: the zero ideal, or generated by a
    /// rational prime (necessarily not dividing `u`).
    pub fn is_prime(&self, ctx: &RingCtx, cap: u64) -> Result<bool, RingError> {
        let _ = ctx;
        if self.gen.is_zero() {
            return Ok(true);
        }
        is_prime(&self.gen, cap)
    }

    /// `√I`: the product of the distinct prime divisors of the generator.
    pub fn radical(&self, ctx: &RingCtx, cap: u64) -> Result<Ideal, RingError> {
        let _ = ctx;
        if self.gen.is_zero() || self.gen.is_one() {
            return Ok(self.clone());
        }
        let f = factor(&self.gen, cap)?;
        Ok(Ideal {
            gen: f.into_iter().map(|(p, _)| p).product(),
        })
    }

    /// Membership of a ring element: `x ∈ (g)` iff `g` divides the canonical
    /// associate of `x`.
    pub fn contains(&self, x: &RingElem, ctx: &RingCtx) -> bool {
        let s = x.canonical_associate(ctx);
        if self.gen.is_zero() {
            return s.is_zero();
        }
        s.is_multiple_of(&self.gen)
    }

    /// `self ⊆ other` on canonical generators.
    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        if other.gen.is_zero() {
            return self.gen.is_zero();
        }
        self.gen.is_multiple_of(&other.gen)
    }

    /// Intersection of finitely many ideals: the lcm of the generators,
    /// with any zero operand absorbing to the zero ideal.
    pub fn intersection<'a, I: IntoIterator<Item = &'a Ideal>>(ideals: I, ctx: &RingCtx) -> Ideal {
        let mut acc = BigInt::one();
        for i in ideals {
            if i.gen.is_zero() {
                return Ideal::zero();
            }
            acc = acc.lcm(&i.gen);
        }
        Ideal::new(acc, ctx)
    }

    /// Product of two ideals: generators multiplied, then canonicalized.
    pub fn product(&self, other: &Ideal, ctx: &RingCtx) -> Ideal {
        Ideal::new(&self.gen * &other.gen, ctx)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factor_small() {
        let f = factor(&big(105), DEFAULT_FACTOR_CAP).unwrap();
        assert_eq!(f, vec![(big(3), 1), (big(5), 1), (big(7), 1)]);
        assert_eq!(factor(&big(1), DEFAULT_FACTOR_CAP).unwrap(), vec![]);
        assert_eq!(
            factor(&big(12), DEFAULT_FACTOR_CAP).unwrap(),
            vec![(big(2), 2), (big(3), 1)]
        );
    }

    #[test]
    fn factor_cap() {
        // 1000003 * 1000033 has no factor below the tiny cap.
        let n = big(1_000_003) * big(1_000_033);
        assert!(matches!(
            factor(&n, 1000),
            Err(RingError::FactorCapExceeded { .. })
        ));
    }

    #[test]
    fn ctx_squarefree_normalization() {
        let ctx = RingCtx::new(12).unwrap();
        assert_eq!(ctx.u(), 6);
        assert_eq!(ctx.inverted_primes(), &[2, 3]);
        assert_eq!(RingCtx::new(1).unwrap().u(), 1);
    }

    #[test]
    fn canonicalize_examples() {
        let u6 = RingCtx::new(6).unwrap();
        let x = RingElem::canonicalize(big(4), big(6), &u6).unwrap();
        assert_eq!((x.num(), x.den()), (&big(2), &big(3)));

        let u3 = RingCtx::new(3).unwrap();
        let z = RingElem::canonicalize(big(0), big(9), &u3).unwrap();
        assert_eq!((z.num(), z.den()), (&big(0), &big(1)));

        assert!(matches!(
            RingElem::canonicalize(big(5), big(4), &u3),
            Err(RingError::DenominatorNotInverted { .. })
        ));
        // den = 4 is legal over u = 6 since 2 is inverted.
        assert!(RingElem::canonicalize(big(5), big(4), &u6).is_ok());
    }

    #[test]
    fn canonicalize_idempotent_and_arith_canonical() {
        let u6 = RingCtx::new(6).unwrap();
        let x = RingElem::canonicalize(big(10), big(4), &u6).unwrap();
        let y = RingElem::canonicalize(x.num().clone(), x.den().clone(), &u6).unwrap();
        assert_eq!(x, y);
        let s = x.add(&y);
        assert_eq!(s.num().gcd(s.den()), big(1));
    }

    #[test]
    fn ideal_of_examples() {
        let u6 = RingCtx::new(6).unwrap();
        assert_eq!(Ideal::of_element(&RingElem::from_int(12), &u6).gen(), &big(1));
        let u3 = RingCtx::new(3).unwrap();
        let third = RingElem::canonicalize(big(1), big(3), &u3).unwrap();
        assert_eq!(Ideal::of_element(&third, &u3).gen(), &big(1));
        assert_eq!(Ideal::of_element(&RingElem::from_int(10), &u3).gen(), &big(10));
    }

    #[test]
    fn ideal_of_multiplicative() {
        let u6 = RingCtx::new(6).unwrap();
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                let ia = Ideal::of_element(&RingElem::from_int(a), &u6);
                let ib = Ideal::of_element(&RingElem::from_int(b), &u6);
                let iab = Ideal::of_element(&RingElem::from_int(a * b), &u6);
                assert_eq!(iab, ia.product(&ib, &u6));
            }
        }
    }

    #[test]
    fn prime_ideal_examples() {
        let u6 = RingCtx::new(6).unwrap();
        let z = RingCtx::integers();
        assert!(Ideal::new(5, &u6).is_prime(&u6, DEFAULT_FACTOR_CAP).unwrap());
        assert!(!Ideal::new(1, &z).is_prime(&z, DEFAULT_FACTOR_CAP).unwrap());
        assert!(!Ideal::new(35, &z).is_prime(&z, DEFAULT_FACTOR_CAP).unwrap());
        assert!(Ideal::zero().is_prime(&z, DEFAULT_FACTOR_CAP).unwrap());
    }

    #[test]
    fn radical_examples() {
        let z = RingCtx::integers();
        let u3 = RingCtx::new(3).unwrap();
        assert_eq!(Ideal::new(12, &z).radical(&z, DEFAULT_FACTOR_CAP).unwrap().gen(), &big(6));
        assert_eq!(Ideal::zero().radical(&z, DEFAULT_FACTOR_CAP).unwrap().gen(), &big(0));
        assert_eq!(Ideal::new(49, &u3).radical(&u3, DEFAULT_FACTOR_CAP).unwrap().gen(), &big(7));
    }

    #[test]
    fn prime_implies_radical_fixed() {
        let z = RingCtx::integers();
        for n in 0i64..60 {
            let i = Ideal::new(n, &z);
            if i.is_prime(&z, DEFAULT_FACTOR_CAP).unwrap() {
                assert_eq!(i.radical(&z, DEFAULT_FACTOR_CAP).unwrap(), i);
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let z = RingCtx::integers();
        let u3 = RingCtx::new(3).unwrap();
        assert_eq!(
            Ideal::intersection([&Ideal::new(4, &z), &Ideal::new(6, &z)], &z).gen(),
            &big(12)
        );
        assert_eq!(
            Ideal::intersection([&Ideal::zero(), &Ideal::new(5, &z)], &z).gen(),
            &big(0)
        );
        assert_eq!(
            Ideal::intersection([&Ideal::new(3, &u3), &Ideal::new(5, &u3)], &u3).gen(),
            &big(5)
        );
    }

    #[test]
    fn intersection_assoc_comm_idem() {
        let z = RingCtx::integers();
        for a in 0i64..12 {
            for b in 0i64..12 {
                let (ia, ib) = (Ideal::new(a, &z), Ideal::new(b, &z));
                assert_eq!(
                    Ideal::intersection([&ia, &ib], &z),
                    Ideal::intersection([&ib, &ia], &z)
                );
                assert_eq!(Ideal::intersection([&ia, &ia], &z), ia);
                for c in [0i64, 6, 9] {
                    let ic = Ideal::new(c, &z);
                    let l = Ideal::intersection([&Ideal::intersection([&ia, &ib], &z), &ic], &z);
                    let r = Ideal::intersection([&ia, &Ideal::intersection([&ib, &ic], &z)], &z);
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn xgcd_bezout() {
        let u6 = RingCtx::new(6).unwrap();
        let a = RingElem::canonicalize(big(10), big(3), &u6).unwrap();
        let b = RingElem::canonicalize(big(35), big(2), &u6).unwrap();
        let (g, x, y) = ring_xgcd(&a, &b, &u6);
        assert_eq!(g, big(5)); // gcd(10, 35) stripped of 2,3-parts
        let lhs = x.mul(&a).add(&y.mul(&b));
        assert_eq!(lhs, RingElem::from_int(g));
    }

    #[test]
    fn residue_mod_unit_denominator() {
        let u3 = RingCtx::new(3).unwrap();
        // 1/3 mod 5: inverse of 3 is 2, so residue 2.
        let x = RingElem::canonicalize(big(1), big(3), &u3).unwrap();
        assert_eq!(x.residue_mod(&big(5)), big(2));
    }
}
