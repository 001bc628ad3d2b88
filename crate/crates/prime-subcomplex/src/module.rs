//! Finitely generated `R_u`-modules in invariant-factor canonical form,
//! submodules in canonical Hermite-reduced generator form, and the
//! submodule-level algebra: membership, colon, annihilator, torsion,
//! associated primes, zero-divisors, saturation, intersection, base change,
//! tensor with free modules, and the prime/primary deciders.
//!
//! A module is `⊕ R_u/(d_j) ⊕ R_u^f` with `d_1 | d_2 | … | d_r`, each `d_j`
//! a canonical integer `> 1` coprime to `u`.  Canonical coordinates list the
//! torsion summands first.  A submodule is stored as the column HNF of its
//! generators with the ambient relations adjoined, so two submodules are
//! equal iff their matrices are identical.

use crate::matrix::{hnf_columns, kernel, snf, solve_hnf, Mat};
use crate::ring::{factor, Ideal, RingCtx, RingElem, RingError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("invariant factors must be > 1, coprime to u, in a divisibility chain: {0:?}")]
    BadInvariants(Vec<BigInt>),
    #[error("coordinate vector has length {got}, module rank is {want}")]
    RankMismatch { got: usize, want: usize },
    #[error("matrix does not define a morphism: relation at domain coordinate {0} is not sent to zero")]
    NotAMorphism(usize),
    #[error("saturation requires a prime ideal, got {0}")]
    SaturationIdealNotPrime(Ideal),
}

/// Change of basis from an originating presentation to canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    /// Relation matrix in the coordinates of the presenting free module.
    pub relations: Mat,
    /// Maps presentation coordinates to canonical coordinates.
    pub to_canonical: Mat,
    /// Lifts canonical generators back to presentation coordinates.
    pub from_canonical: Mat,
}

/// A finitely generated `R_u`-module in canonical form.
#[derive(Debug, Clone)]
pub struct FgModule {
    ctx: RingCtx,
    invariants: Vec<BigInt>,
    free_rank: usize,
    presentation: Option<Presentation>,
}

impl PartialEq for FgModule {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.invariants == other.invariants
            && self.free_rank == other.free_rank
    }
}
impl Eq for FgModule {}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .invariants
            .iter()
            .map(|d| format!("{}/({})", self.ctx, d))
            .collect();
        if self.free_rank > 0 {
            parts.push(format!("{}^{}", self.ctx, self.free_rank));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

impl FgModule {
    pub fn free(ctx: RingCtx, rank: usize) -> FgModule {
        FgModule {
            ctx,
            invariants: Vec::new(),
            free_rank: rank,
            presentation: None,
        }
    }

    pub fn zero(ctx: RingCtx) -> FgModule {
        FgModule::free(ctx, 0)
    }

    /// Builds directly from invariant factors and free rank, validating the
    /// divisibility chain and canonicality of each factor.
    pub fn from_invariants(
        ctx: RingCtx,
        invariants: Vec<BigInt>,
        free_rank: usize,
    ) -> Result<FgModule, ModuleError> {
        for d in &invariants {
            if *d <= BigInt::one() || ctx.strip_units(d) != *d {
                return Err(ModuleError::BadInvariants(invariants.clone()));
            }
        }
        for w in invariants.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(ModuleError::BadInvariants(invariants.clone()));
            }
        }
        Ok(FgModule {
            ctx,
            invariants,
            free_rank,
            presentation: None,
        })
    }

    /// Cokernel of a relation matrix: canonical form plus the change-of-basis
    /// maps between presentation and canonical coordinates.
    pub fn from_presentation(ctx: &RingCtx, relations: &Mat) -> FgModule {
        let s = snf(relations, ctx);
        let n = relations.rows();
        // Rows with a unit diagonal vanish; non-unit nonzero rows are the
        // torsion coordinates (already in chain order); zero rows are free.
        let mut torsion_rows = Vec::new();
        let mut invariants = Vec::new();
        for i in 0..s.rank {
            let e = s.d.get(i, i);
            if !e.is_one() {
                torsion_rows.push(i);
                invariants.push(e.num().clone());
            }
        }
        let free_rows: Vec<usize> = (s.rank..n).collect();
        let kept: Vec<usize> = torsion_rows.iter().chain(free_rows.iter()).copied().collect();
        let to_canonical = Mat::from_fn(kept.len(), n, |i, j| s.u.get(kept[i], j).clone());
        let from_canonical = Mat::from_fn(n, kept.len(), |i, j| s.u_inv.get(i, kept[j]).clone());
        FgModule {
            ctx: ctx.clone(),
            free_rank: free_rows.len(),
            invariants,
            presentation: Some(Presentation {
                relations: relations.clone(),
                to_canonical,
                from_canonical,
            }),
        }
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.invariants.len()
    }

    /// Number of canonical coordinates.
    pub fn rank(&self) -> usize {
        self.invariants.len() + self.free_rank
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn is_zero_module(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the module when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariants.iter().product::<BigInt>().max(BigInt::one()))
    }

    /// Relation columns `d_j · e_j` in canonical coordinates.
    pub fn relation_columns(&self) -> Mat {
        let n = self.rank();
        Mat::from_fn(n, self.invariants.len(), |i, j| {
            if i == j {
                RingElem::from_int(self.invariants[j].clone())
            } else {
                RingElem::zero()
            }
        })
    }

    /// Reduces a coordinate vector to the canonical representative: torsion
    /// coordinates become integer residues in `[0, d_j)`.
    pub fn element(&self, coords: Vec<RingElem>) -> Result<ModElem, ModuleError> {
        if coords.len() != self.rank() {
            return Err(ModuleError::RankMismatch {
                got: coords.len(),
                want: self.rank(),
            });
        }
        let mut out = coords;
        for (j, d) in self.invariants.iter().enumerate() {
            out[j] = RingElem::from_int(out[j].residue_mod(d));
        }
        Ok(ModElem { coords: out })
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Result<ModElem, ModuleError> {
        self.element(coords.iter().map(|&c| RingElem::from_int(c)).collect())
    }

    pub fn zero_elem(&self) -> ModElem {
        ModElem {
            coords: vec![RingElem::zero(); self.rank()],
        }
    }

    pub fn basis_elem(&self, i: usize) -> ModElem {
        let mut coords = vec![RingElem::zero(); self.rank()];
        coords[i] = RingElem::one();
        ModElem { coords }
    }

    /// Scalar action, reduced to canonical coordinates.
    pub fn scale_elem(&self, r: &RingElem, m: &ModElem) -> ModElem {
        self.element(m.coords.iter().map(|c| c.mul(r)).collect())
            .expect("same rank")
    }

    pub fn add_elems(&self, a: &ModElem, b: &ModElem) -> ModElem {
        self.element(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x.add(y))
                .collect(),
        )
        .expect("same rank")
    }

    /// Annihilator ideal of an element: lcm of `d_j / gcd(d_j, c_j)` over
    /// torsion coordinates, zero if any free coordinate is nonzero.
    pub fn annihilator_of_element(&self, m: &ModElem) -> Ideal {
        let r = self.torsion_rank();
        for c in &m.coords[r..] {
            if !c.is_zero() {
                return Ideal::zero();
            }
        }
        let mut acc = BigInt::one();
        for (j, d) in self.invariants.iter().enumerate() {
            let res = m.coords[j].residue_mod(d);
            let a = d / res.gcd(d);
            acc = acc.lcm(&a);
        }
        Ideal::new(acc, &self.ctx)
    }

    /// Associated primes: `(p)` for every prime divisor of an invariant
    /// factor, plus `(0)` when the free rank is positive.
    pub fn associated_primes(&self, cap: u64) -> Result<PrimeSet, ModuleError> {
        let mut primes = BTreeSet::new();
        if let Some(d) = self.invariants.last() {
            // Every prime dividing any invariant divides the largest one.
            for (p, _) in factor(d, cap)? {
                primes.insert(p);
            }
        }
        Ok(PrimeSet {
            primes,
            includes_zero: self.free_rank > 0,
        })
    }

    /// Zero-divisors `Z(M)` as a finite description: the nonzero primes of
    /// `Ass(M)` plus the flag that `0` itself qualifies (true iff `M ≠ 0`).
    pub fn zero_divisors(&self, cap: u64) -> Result<PrimeSet, ModuleError> {
        let ass = self.associated_primes(cap)?;
        Ok(PrimeSet {
            primes: ass.primes,
            includes_zero: !self.is_zero_module(),
        })
    }

    /// All elements of a finite module, in lexicographic coordinate order.
    pub fn enumerate_elements(&self) -> Option<Vec<ModElem>> {
        if self.free_rank > 0 {
            return None;
        }
        let mut out = vec![self.zero_elem()];
        for (j, d) in self.invariants.iter().enumerate() {
            let dj = u64::try_from(d).ok()?;
            let mut next = Vec::with_capacity(out.len() * dj as usize);
            for e in &out {
                for v in 0..dj {
                    let mut coords = e.coords.clone();
                    coords[j] = RingElem::from_int(v as i64);
                    next.push(ModElem { coords });
                }
            }
            out = next;
        }
        Some(out)
    }
}

/// An element of an [`FgModule`] in canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModElem {
    coords: Vec<RingElem>,
}

impl ModElem {
    pub fn coords(&self) -> &[RingElem] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A finite set of prime ideals, with a flag for membership of `(0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    pub primes: BTreeSet<BigInt>,
    pub includes_zero: bool,
}

impl PrimeSet {
    pub fn empty() -> PrimeSet {
        PrimeSet {
            primes: BTreeSet::new(),
            includes_zero: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty() && !self.includes_zero
    }

    /// `true` iff the set is exactly `{P}` for the given prime `P`.
    pub fn is_singleton(&self, p: &Ideal) -> bool {
        if p.is_zero() {
            self.primes.is_empty() && self.includes_zero
        } else {
            !self.includes_zero && self.primes.len() == 1 && self.primes.first() == Some(p.gen())
        }
    }
}

/// A submodule of an [`FgModule`], canonical by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    ambient: FgModule,
    gens: Mat,
}

impl Submodule {
    /// Hermite-reduces raw generator columns together with the ambient
    /// relations; this is the `hermiteReduce` canonicalization and the only
    /// constructor, so every `Submodule` is canonical.
    pub fn new(ambient: FgModule, raw_gens: &Mat) -> Submodule {
        assert_eq!(raw_gens.rows(), ambient.rank(), "generator rank mismatch");
        let stacked = raw_gens.hstack(&ambient.relation_columns());
        let gens = hnf_columns(&stacked, ambient.ctx());
        Submodule { ambient, gens }
    }

    pub fn from_elements(ambient: FgModule, elems: &[ModElem]) -> Submodule {
        let n = ambient.rank();
        let m = Mat::from_fn(n, elems.len(), |i, j| elems[j].coords()[i].clone());
        Submodule::new(ambient, &m)
    }

    pub fn zero(ambient: FgModule) -> Submodule {
        let n = ambient.rank();
        Submodule::new(ambient, &Mat::zeros(n, 0))
    }

    pub fn full(ambient: FgModule) -> Submodule {
        let n = ambient.rank();
        Submodule::new(ambient, &Mat::identity(n))
    }

    pub fn ambient(&self) -> &FgModule {
        &self.ambient
    }

    /// The canonical reduced generator matrix (ambient relations included).
    pub fn gen_matrix(&self) -> &Mat {
        &self.gens
    }

    /// Generator columns as elements.
    pub fn gen_elements(&self) -> Vec<ModElem> {
        (0..self.gens.cols())
            .map(|j| self.ambient.element(self.gens.column(j)).expect("rank"))
            .collect()
    }

    pub fn contains(&self, m: &ModElem) -> bool {
        solve_hnf(&self.gens, m.coords(), self.ambient.ctx()).is_some()
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        (0..other.gens.cols()).all(|j| {
            solve_hnf(&self.gens, &other.gens.column(j), self.ambient.ctx()).is_some()
        })
    }

    pub fn is_full(&self) -> bool {
        self.gens == Mat::identity(self.ambient.rank())
    }

    pub fn is_zero_submodule(&self) -> bool {
        *self == Submodule::zero(self.ambient.clone())
    }

    /// Sum of two submodules of the same ambient.
    pub fn sum(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.ambient, other.ambient);
        Submodule::new(self.ambient.clone(), &self.gens.hstack(&other.gens))
    }

    /// Lattice intersection with the ambient relations adjoined, via the
    /// kernel of the stacked generator matrices.
    pub fn intersect(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.ambient, other.ambient);
        let ctx = self.ambient.ctx();
        let a = &self.gens;
        let b = &other.gens;
        let stacked = a.hstack(&b.scale(&RingElem::from_int(-1)));
        let k = kernel(&stacked, ctx);
        // Intersection generators: A · (first block of each kernel column).
        let top = Mat::from_fn(a.cols(), k.cols(), |i, j| k.get(i, j).clone());
        Submodule::new(self.ambient.clone(), &a.mul(&top))
    }

    /// The quotient `M/S` in canonical form, with the projection map.
    pub fn quotient(&self) -> (FgModule, ModuleMap) {
        let q = FgModule::from_presentation(self.ambient.ctx(), &self.gens);
        let pres = q.presentation().expect("built from presentation").clone();
        let map = ModuleMap {
            domain: self.ambient.clone(),
            codomain: q.clone(),
            matrix: pres.to_canonical,
        };
        (q, map)
    }

    /// `(S : M)`: the annihilator of `M/S`, read off the SNF of the quotient.
    pub fn colon(&self) -> Ideal {
        let (q, _) = self.quotient();
        if q.free_rank() > 0 {
            Ideal::zero()
        } else {
            match q.invariants().last() {
                None => Ideal::unit(),
                Some(d) => Ideal::new(d.clone(), self.ambient.ctx()),
            }
        }
    }

    /// `(S : r) = {m : r·m ∈ S}`.
    pub fn colon_by_element(&self, r: &RingElem) -> Submodule {
        let ctx = self.ambient.ctx().clone();
        if r.is_zero() {
            return Submodule::full(self.ambient.clone());
        }
        let s = r.canonical_associate(&ctx);
        if s.is_one() {
            return self.clone();
        }
        let (q, _) = self.quotient();
        let pres = q.presentation().expect("quotient presentation");
        let mut extra = self.gens.clone();
        for (j, e) in q.invariants().iter().enumerate() {
            let c = e / e.gcd(&s);
            let lift = pres.from_canonical.column(j);
            let col: Vec<RingElem> = lift
                .iter()
                .map(|x| x.mul(&RingElem::from_int(c.clone())))
                .collect();
            extra.push_column(&col);
        }
        Submodule::new(self.ambient.clone(), &extra)
    }

    /// Image of the submodule under multiplication by an ideal: `g·S`.
    pub fn scale_by(&self, g: &BigInt) -> Submodule {
        Submodule::new(
            self.ambient.clone(),
            &self.gens.scale(&RingElem::from_int(g.clone())),
        )
    }
}

/// Torsion submodule `T(M)`: the span of the torsion coordinates.
pub fn torsion_submodule(m: &FgModule) -> Submodule {
    let n = m.rank();
    let r = m.torsion_rank();
    let gens = Mat::from_fn(n, r, |i, j| {
        if i == j {
            RingElem::one()
        } else {
            RingElem::zero()
        }
    });
    Submodule::new(m.clone(), &gens)
}

/// Verdict of a submodule-level decider.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubmoduleVerdict {
    Prime,
    NotPrime,
    Primary,
    NotPrimary,
    NotProper,
}

/// Result of a prime/primary decision at the submodule level.
///
/// On an affirmative verdict `ideal` is `(S:M)` (resp. its radical); on a
/// refutation the witness `(r, m)` replays: `r·m ∈ S`, `m ∉ S`, and `r` is
/// outside the colon (resp. its radical).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmoduleReport {
    pub verdict: SubmoduleVerdict,
    pub ideal: Ideal,
    pub witness: Option<(RingElem, ModElem)>,
}

fn refutation_witness(s: &Submodule, q: &FgModule, cap: u64) -> Result<(RingElem, ModElem), ModuleError> {
    // Deterministic: r is the smallest prime factor of the largest invariant
    // of M/S, m the lift of the corresponding canonical generator scaled so
    // that r·m lands in S.
    let pres = q.presentation().expect("quotient presentation");
    let last = q.torsion_rank() - 1;
    let e = &q.invariants()[last];
    let p = factor(e, cap)?.first().expect("e > 1").0.clone();
    let scale = RingElem::from_int(e / &p);
    let lift = pres.from_canonical.column(last);
    let coords: Vec<RingElem> = lift.iter().map(|x| x.mul(&scale)).collect();
    let m = s.ambient().element(coords).expect("rank");
    Ok((RingElem::from_int(p), m))
}

/// Decides whether `S` is a prime submodule of its ambient module.
pub fn is_prime_submodule(s: &Submodule, cap: u64) -> Result<SubmoduleReport, ModuleError> {
    if s.is_full() {
        return Ok(SubmoduleReport {
            verdict: SubmoduleVerdict::NotProper,
            ideal: Ideal::unit(),
            witness: None,
        });
    }
    let (q, _) = s.quotient();
    let colon = if q.free_rank() > 0 {
        Ideal::zero()
    } else {
        Ideal::new(q.invariants().last().expect("proper").clone(), s.ambient().ctx())
    };
    let prime = if q.invariants().is_empty() {
        true // torsion-free quotient, colon (0)
    } else if q.free_rank() > 0 {
        false // mixed free and torsion
    } else {
        // All invariants equal one prime iff the largest is prime (chain).
        crate::ring::is_prime(q.invariants().last().expect("nonempty"), cap)?
    };
    if prime {
        Ok(SubmoduleReport {
            verdict: SubmoduleVerdict::Prime,
            ideal: colon,
            witness: None,
        })
    } else {
        let w = refutation_witness(s, &q, cap)?;
        Ok(SubmoduleReport {
            verdict: SubmoduleVerdict::NotPrime,
            ideal: colon,
            witness: Some(w),
        })
    }
}

/// Decides whether `S` is a primary submodule of its ambient module.
pub fn is_primary_submodule(s: &Submodule, cap: u64) -> Result<SubmoduleReport, ModuleError> {
    if s.is_full() {
        return Ok(SubmoduleReport {
            verdict: SubmoduleVerdict::NotProper,
            ideal: Ideal::unit(),
            witness: None,
        });
    }
    let (q, _) = s.quotient();
    let ctx = s.ambient().ctx();
    let primary;
    let radical;
    if q.invariants().is_empty() {
        primary = true;
        radical = Ideal::zero();
    } else if q.free_rank() > 0 {
        primary = false;
        radical = Ideal::zero();
    } else {
        let e = q.invariants().last().expect("nonempty");
        let fac = factor(e, cap)?;
        primary = fac.len() == 1;
        radical = Ideal::new(fac.iter().map(|(p, _)| p.clone()).product::<BigInt>(), ctx);
    }
    if primary {
        Ok(SubmoduleReport {
            verdict: SubmoduleVerdict::Primary,
            ideal: radical,
            witness: None,
        })
    } else {
        let w = refutation_witness(s, &q, cap)?;
        Ok(SubmoduleReport {
            verdict: SubmoduleVerdict::NotPrimary,
            ideal: radical,
            witness: Some(w),
        })
    }
}

/// Result of a saturation: the saturated submodule, with a flag for the
/// degenerate case where it is the whole module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub submodule: Submodule,
    pub proper: bool,
}

/// `Š_p(S) = {m : t·m ∈ S for some t ∉ p}`, for `p` prime (possibly zero).
///
/// Splits the torsion of `M/S` into its `p`-part and prime-to-`p` part and
/// pulls back the prime-to-`p` part.
pub fn saturate(s: &Submodule, p: &Ideal, cap: u64) -> Result<Saturation, ModuleError> {
    let ctx = s.ambient().ctx().clone();
    if !p.is_prime(&ctx, cap)? {
        return Err(ModuleError::SaturationIdealNotPrime(p.clone()));
    }
    let (q, _) = s.quotient();
    let pres = q.presentation().expect("quotient presentation");
    let mut extra = s.gen_matrix().clone();
    for (j, e) in q.invariants().iter().enumerate() {
        let scale = if p.is_zero() {
            BigInt::one() // every torsion element is killed by a nonzero scalar
        } else {
            let mut pk = BigInt::one();
            let mut m = e.clone();
            while m.is_multiple_of(p.gen()) {
                m /= p.gen();
                pk *= p.gen();
            }
            pk
        };
        let lift = pres.from_canonical.column(j);
        let col: Vec<RingElem> = lift
            .iter()
            .map(|x| x.mul(&RingElem::from_int(scale.clone())))
            .collect();
        extra.push_column(&col);
    }
    let sat = Submodule::new(s.ambient().clone(), &extra);
    let proper = !sat.is_full();
    Ok(Saturation {
        submodule: sat,
        proper,
    })
}

/// A morphism between canonical-form modules, well-definedness checked at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    domain: FgModule,
    codomain: FgModule,
    matrix: Mat,
}

impl ModuleMap {
    pub fn new(domain: FgModule, codomain: FgModule, matrix: Mat) -> Result<ModuleMap, ModuleError> {
        assert_eq!(matrix.rows(), codomain.rank());
        assert_eq!(matrix.cols(), domain.rank());
        // Each domain relation d_j·e_j must map to zero in the codomain.
        for (j, d) in domain.invariants().iter().enumerate() {
            let col: Vec<RingElem> = matrix
                .column(j)
                .iter()
                .map(|x| x.mul(&RingElem::from_int(d.clone())))
                .collect();
            let img = codomain.element(col).expect("rank");
            if !img.is_zero() {
                return Err(ModuleError::NotAMorphism(j));
            }
        }
        Ok(ModuleMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: FgModule, codomain: FgModule) -> ModuleMap {
        let m = Mat::zeros(codomain.rank(), domain.rank());
        ModuleMap {
            domain,
            codomain,
            matrix: m,
        }
    }

    pub fn domain(&self) -> &FgModule {
        &self.domain
    }

    pub fn codomain(&self) -> &FgModule {
        &self.codomain
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, m: &ModElem) -> ModElem {
        self.codomain
            .element(self.matrix.mul_vec(m.coords()))
            .expect("rank")
    }

    pub fn compose_after(&self, first: &ModuleMap) -> Mat {
        self.matrix.mul(&first.matrix)
    }

    /// Image of a submodule of the domain.
    pub fn image_of(&self, s: &Submodule) -> Submodule {
        Submodule::new(self.codomain.clone(), &self.matrix.mul(s.gen_matrix()))
    }
}

/// `M ⊗ R_u^k = M^{⊕k}` together with the embedding of submodules.
pub struct TensorEmbedding {
    source: FgModule,
    target: FgModule,
    copies: usize,
}

impl TensorEmbedding {
    pub fn target(&self) -> &FgModule {
        &self.target
    }

    /// Index of the `(coord, copy)` coordinate in the target.
    pub fn coord_index(&self, coord: usize, copy: usize) -> usize {
        let r = self.source.torsion_rank();
        if coord < r {
            coord * self.copies + copy
        } else {
            r * self.copies + (coord - r) * self.copies + copy
        }
    }

    /// Block-diagonal embedding `S ↦ S^{⊕k}`.
    pub fn embed_submodule(&self, s: &Submodule) -> Submodule {
        assert_eq!(s.ambient(), &self.source);
        let g = s.gen_matrix();
        let n = self.target.rank();
        let mut raw = Mat::zeros(n, g.cols() * self.copies);
        for t in 0..self.copies {
            for j in 0..g.cols() {
                for i in 0..g.rows() {
                    raw.set(self.coord_index(i, t), t * g.cols() + j, g.get(i, j).clone());
                }
            }
        }
        Submodule::new(self.target.clone(), &raw)
    }

    /// The copy-`t` embedding of an element.
    pub fn embed_elem(&self, m: &ModElem, copy: usize) -> ModElem {
        let mut coords = vec![RingElem::zero(); self.target.rank()];
        for (i, c) in m.coords().iter().enumerate() {
            coords[self.coord_index(i, copy)] = c.clone();
        }
        self.target.element(coords).expect("rank")
    }
}

/// Tensor with the free module of rank `k ≥ 1`.
pub fn tensor_with_free(m: &FgModule, k: usize) -> TensorEmbedding {
    assert!(k >= 1, "tensor rank must be positive");
    let mut invariants = Vec::with_capacity(m.torsion_rank() * k);
    for d in m.invariants() {
        for _ in 0..k {
            invariants.push(d.clone());
        }
    }
    let target = FgModule::from_invariants(m.ctx().clone(), invariants, m.free_rank() * k)
        .expect("repetition preserves the chain");
    TensorEmbedding {
        source: m.clone(),
        target,
        copies: k,
    }
}

/// Base change along `R_u → R_{rad(u·a)}` with the coordinate bookkeeping
/// needed to push submodules forward.
pub struct LocalizedModule {
    pub target: FgModule,
    /// Indices of the source canonical coordinates that survive (torsion
    /// coordinates whose invariant does not become a unit, then free ones).
    pub kept: Vec<usize>,
}

impl LocalizedModule {
    pub fn push_submodule(&self, s: &Submodule) -> Submodule {
        let g = s.gen_matrix();
        let raw = Mat::from_fn(self.kept.len(), g.cols(), |i, j| g.get(self.kept[i], j).clone());
        Submodule::new(self.target.clone(), &raw)
    }

    pub fn push_elem(&self, m: &ModElem) -> ModElem {
        let coords: Vec<RingElem> = self.kept.iter().map(|&i| m.coords()[i].clone()).collect();
        self.target.element(coords).expect("rank")
    }
}

/// Inverts `a` on top of the current ring: invariant factors lose their
/// `a`-parts, factors that become units vanish.
pub fn localize_module(m: &FgModule, a: u64) -> Result<LocalizedModule, ModuleError> {
    assert!(a >= 1);
    let new_ctx = RingCtx::new(m.ctx().u().saturating_mul(a))?;
    let mut kept = Vec::new();
    let mut invariants = Vec::new();
    for (j, d) in m.invariants().iter().enumerate() {
        let stripped = new_ctx.strip_units(d);
        if stripped > BigInt::one() {
            kept.push(j);
            invariants.push(stripped);
        }
    }
    let r = m.torsion_rank();
    for i in 0..m.free_rank() {
        kept.push(r + i);
    }
    let target = FgModule::from_invariants(new_ctx, invariants, m.free_rank())?;
    Ok(LocalizedModule { target, kept })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = crate::ring::DEFAULT_FACTOR_CAP;

    fn z() -> RingCtx {
        RingCtx::integers()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn zmod(invs: &[i64], free: usize) -> FgModule {
        FgModule::from_invariants(z(), invs.iter().map(|&d| big(d)).collect(), free).unwrap()
    }

    /// Principal submodule `g·Z ⊆ Z`.
    fn principal(g: i64) -> Submodule {
        let m = FgModule::free(z(), 1);
        Submodule::new(m, &Mat::from_int_rows(&[&[g]]))
    }

    #[test]
    fn presentation_diag_2_3() {
        let m = FgModule::from_presentation(&z(), &Mat::from_int_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(m.invariants(), &[big(6)]);
        assert_eq!(m.free_rank(), 0);
    }

    #[test]
    fn presentation_no_relations() {
        let m = FgModule::from_presentation(&z(), &Mat::zeros(2, 0));
        assert!(m.invariants().is_empty());
        assert_eq!(m.free_rank(), 2);
    }

    #[test]
    fn presentation_units_localized() {
        let u3 = RingCtx::new(3).unwrap();
        let m = FgModule::from_presentation(&u3, &Mat::from_int_rows(&[&[3, 0], &[0, 9]]));
        assert!(m.invariants().is_empty());
        assert_eq!(m.free_rank(), 0);
    }

    #[test]
    fn hermite_reduce_examples() {
        let m = FgModule::free(z(), 1);
        let s = Submodule::new(m.clone(), &Mat::from_int_rows(&[&[4, 6]]));
        assert_eq!(s, principal(2));
        assert!(Submodule::zero(m).is_zero_submodule());

        let m2 = FgModule::free(z(), 2);
        let s = Submodule::new(m2.clone(), &Mat::from_int_rows(&[&[2, 0, 2], &[0, 3, 3]]));
        let expect = Submodule::new(m2, &Mat::from_int_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s, expect);
    }

    #[test]
    fn membership_examples() {
        let s = principal(2);
        assert!(s.contains(&s.ambient().element_from_ints(&[6]).unwrap()));
        assert!(!s.contains(&s.ambient().element_from_ints(&[3]).unwrap()));

        let m2 = FgModule::free(z(), 2);
        let s = Submodule::new(m2.clone(), &Mat::from_int_rows(&[&[2, 0], &[0, 3]]));
        assert!(s.contains(&m2.element_from_ints(&[2, 3]).unwrap()));
    }

    #[test]
    fn quotient_examples() {
        let (q, _) = principal(2).quotient();
        assert_eq!(q.invariants(), &[big(2)]);
        assert_eq!(q.free_rank(), 0);

        // (Z ⊕ Z/6) / (0 ⊕ Z/6): torsion coordinate first in canonical order.
        let m = zmod(&[6], 1);
        let (q, _) = torsion_submodule(&m).quotient();
        assert!(q.invariants().is_empty());
        assert_eq!(q.free_rank(), 1);

        let m2 = FgModule::free(z(), 2);
        let s = Submodule::new(m2, &Mat::from_int_rows(&[&[2, 0], &[0, 3]]));
        let (q, _) = s.quotient();
        assert_eq!(q.invariants(), &[big(6)]);
    }

    #[test]
    fn quotient_projection_section() {
        let m = zmod(&[4, 12], 1);
        let s = Submodule::new(
            m.clone(),
            &Mat::from_int_rows(&[&[2, 0, 1], &[0, 3, 1], &[0, 0, 5]]),
        );
        let (q, proj) = s.quotient();
        let pres = q.presentation().unwrap();
        // Projection kills every generator of S.
        for g in s.gen_elements() {
            assert!(proj.apply(&g).is_zero());
        }
        // Section lifts: proj(from_canonical e_i) = e_i.
        for i in 0..q.rank() {
            let lift = m.element(pres.from_canonical.column(i)).unwrap();
            assert_eq!(proj.apply(&lift), q.basis_elem(i));
        }
    }

    #[test]
    fn colon_examples() {
        // S = <(2,0)> in Z/4 ⊕ Z/2 → (2)
        let m = zmod(&[2, 4], 0); // canonical chain order: 2 | 4
        let s = Submodule::new(m, &Mat::from_int_rows(&[&[0], &[2]]));
        assert_eq!(s.colon(), Ideal::new(2, &z()));

        let m = zmod(&[12], 1);
        assert_eq!(Submodule::zero(m).colon(), Ideal::zero());

        let m = zmod(&[5], 0);
        assert_eq!(Submodule::full(m).colon(), Ideal::unit());
    }

    #[test]
    fn colon_by_element_examples() {
        assert_eq!(principal(2).colon_by_element(&RingElem::from_int(3)), principal(2));
        assert_eq!(principal(4).colon_by_element(&RingElem::from_int(2)), principal(2));

        // (0 : 2) in Z/4 ⊕ Z/3, presented with the chain normalized away.
        let m = FgModule::from_presentation(&z(), &Mat::from_int_rows(&[&[4, 0], &[0, 3]]));
        // Z/4 ⊕ Z/3 ≅ Z/12.
        assert_eq!(m.invariants(), &[big(12)]);
        let s = Submodule::zero(m.clone());
        let c = s.colon_by_element(&RingElem::from_int(2));
        // {y ∈ Z/12 : 2y = 0} = 6·Z/12.
        assert_eq!(c, Submodule::new(m, &Mat::from_int_rows(&[&[6]])));
    }

    #[test]
    fn annihilator_examples() {
        let m = zmod(&[4], 0);
        let e = m.element_from_ints(&[2]).unwrap();
        assert_eq!(m.annihilator_of_element(&e), Ideal::new(2, &z()));

        let m = zmod(&[6], 1);
        let e = m.element_from_ints(&[0, 1]).unwrap();
        assert_eq!(m.annihilator_of_element(&e), Ideal::zero());

        let m = FgModule::from_presentation(&z(), &Mat::from_int_rows(&[&[4, 0], &[0, 9]]));
        assert_eq!(m.invariants(), &[big(36)]);
        // (2,3) in Z/4 ⊕ Z/9 corresponds to an element of order 6 in Z/36.
        let e = m.element_from_ints(&[6]).unwrap();
        assert_eq!(m.annihilator_of_element(&e), Ideal::new(6, &z()));
    }

    #[test]
    fn torsion_examples() {
        let m = zmod(&[6], 1);
        let t = torsion_submodule(&m);
        assert!(t.contains(&m.element_from_ints(&[1, 0]).unwrap()));
        assert!(!t.contains(&m.element_from_ints(&[0, 1]).unwrap()));

        assert!(torsion_submodule(&FgModule::free(z(), 3)).is_zero_submodule());
        assert!(torsion_submodule(&zmod(&[2, 4], 0)).is_full());
    }

    #[test]
    fn ass_and_z_examples() {
        let m = zmod(&[12], 0);
        let ass = m.associated_primes(CAP).unwrap();
        assert_eq!(ass.primes, BTreeSet::from([big(2), big(3)]));
        assert!(!ass.includes_zero);

        let free2 = FgModule::free(z(), 2);
        let ass = free2.associated_primes(CAP).unwrap();
        assert!(ass.primes.is_empty() && ass.includes_zero);

        assert!(FgModule::zero(z()).associated_primes(CAP).unwrap().is_empty());

        // Z as a module over Z: Z(M) = {0}.
        let zz = FgModule::free(z(), 1);
        let zd = zz.zero_divisors(CAP).unwrap();
        assert!(zd.primes.is_empty() && zd.includes_zero);

        // Z/4 ⊕ Z: {(2)} plus the zero element.
        let m = zmod(&[4], 1);
        let zd = m.zero_divisors(CAP).unwrap();
        assert_eq!(zd.primes, BTreeSet::from([big(2)]));
        assert!(zd.includes_zero);

        assert!(FgModule::zero(z()).zero_divisors(CAP).unwrap().is_empty());
    }

    #[test]
    fn prime_decider_examples() {
        let r = is_prime_submodule(&principal(2), CAP).unwrap();
        assert_eq!(r.verdict, SubmoduleVerdict::Prime);
        assert_eq!(r.ideal, Ideal::new(2, &z()));

        let r = is_prime_submodule(&principal(4), CAP).unwrap();
        assert_eq!(r.verdict, SubmoduleVerdict::NotPrime);
        let (w_r, w_m) = r.witness.unwrap();
        assert_eq!(w_r, RingElem::from_int(2));
        assert_eq!(w_m, principal(4).ambient().element_from_ints(&[2]).unwrap());

        // 0 ⊆ Z ⊕ Z/2: mixed free and torsion quotient.
        let m = zmod(&[2], 1);
        let r = is_prime_submodule(&Submodule::zero(m.clone()), CAP).unwrap();
        assert_eq!(r.verdict, SubmoduleVerdict::NotPrime);
        let (w_r, w_m) = r.witness.unwrap();
        assert_eq!(w_r, RingElem::from_int(2));
        assert_eq!(w_m, m.element_from_ints(&[1, 0]).unwrap());
    }

    #[test]
    fn primary_decider_examples() {
        let r = is_primary_submodule(&principal(4), CAP).unwrap();
        assert_eq!(r.verdict, SubmoduleVerdict::Primary);
        assert_eq!(r.ideal, Ideal::new(2, &z()));

        let r = is_primary_submodule(&principal(6), CAP).unwrap();
        assert_eq!(r.verdict, SubmoduleVerdict::NotPrimary);
        let (w_r, w_m) = r.witness.unwrap();
        assert_eq!(w_r, RingElem::from_int(2));
        assert_eq!(w_m, principal(6).ambient().element_from_ints(&[3]).unwrap());

        let r = is_primary_submodule(&principal(2), CAP).unwrap();
        assert_eq!(r.verdict, SubmoduleVerdict::Primary);
    }

    #[test]
    fn prime_implies_primary() {
        for g in 0i64..30 {
            let s = principal(g);
            let p = is_prime_submodule(&s, CAP).unwrap();
            if p.verdict == SubmoduleVerdict::Prime {
                let q = is_primary_submodule(&s, CAP).unwrap();
                assert_eq!(q.verdict, SubmoduleVerdict::Primary);
                assert_eq!(q.ideal, p.ideal);
            }
        }
    }

    #[test]
    fn saturate_examples() {
        let p2 = Ideal::new(2, &z());
        let sat = saturate(&principal(6), &p2, CAP).unwrap();
        assert_eq!(sat.submodule, principal(2));
        assert!(sat.proper);

        // p = (0): Z/6 is all torsion, the saturation is everything.
        let sat = saturate(&principal(6), &Ideal::zero(), CAP).unwrap();
        assert!(sat.submodule.is_full());
        assert!(!sat.proper);

        // S = 0 ⊆ Z ⊕ Z/4 at p = (3): the prime-to-3 part is the torsion.
        let m = zmod(&[4], 1);
        let sat = saturate(&Submodule::zero(m.clone()), &Ideal::new(3, &z()), CAP).unwrap();
        assert_eq!(sat.submodule, torsion_submodule(&m));

        // Non-prime p rejected.
        assert!(saturate(&principal(6), &Ideal::new(4, &z()), CAP).is_err());
    }

    #[test]
    fn saturate_contains_and_idempotent() {
        let p = Ideal::new(2, &z());
        for g in [4i64, 6, 8, 12, 18] {
            let s = principal(g);
            let sat = saturate(&s, &p, CAP).unwrap();
            assert!(sat.submodule.contains_submodule(&s));
            let again = saturate(&sat.submodule, &p, CAP).unwrap();
            assert_eq!(again.submodule, sat.submodule);
        }
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(principal(4).intersect(&principal(6)), principal(12));

        let m = zmod(&[5], 2);
        let s = Submodule::new(
            m.clone(),
            &Mat::from_int_rows(&[&[2], &[1], &[3]]),
        );
        assert_eq!(s.intersect(&Submodule::full(m)), s);

        // <(2,0)> ∩ <(0,2)> in Z/4 ⊕ Z/4 → 0.
        let m = zmod(&[4, 4], 0);
        let a = Submodule::new(m.clone(), &Mat::from_int_rows(&[&[2], &[0]]));
        let b = Submodule::new(m.clone(), &Mat::from_int_rows(&[&[0], &[2]]));
        assert!(a.intersect(&b).is_zero_submodule());
    }

    #[test]
    fn tensor_examples() {
        let m = zmod(&[6], 0);
        let t = tensor_with_free(&m, 1);
        assert_eq!(t.target(), &m);

        let t = tensor_with_free(&m, 2);
        assert_eq!(t.target().invariants(), &[big(6), big(6)]);

        let zz = FgModule::free(z(), 1);
        let t = tensor_with_free(&zz, 2);
        let s2 = t.embed_submodule(&principal(2));
        let expect = Submodule::new(
            t.target().clone(),
            &Mat::from_int_rows(&[&[2, 0], &[0, 2]]),
        );
        assert_eq!(s2, expect);
    }

    #[test]
    fn localize_examples() {
        let m = zmod(&[6], 0);
        let l = localize_module(&m, 3).unwrap();
        assert_eq!(l.target.invariants(), &[big(2)]);
        assert_eq!(l.target.ctx().u(), 3);

        let m = zmod(&[9], 0);
        let l = localize_module(&m, 3).unwrap();
        assert!(l.target.is_zero_module());

        let m = FgModule::free(z(), 2);
        let l = localize_module(&m, 5).unwrap();
        assert_eq!(l.target.free_rank(), 2);
        assert_eq!(l.target.ctx().u(), 5);
    }

    #[test]
    fn scale_by_ideal_example() {
        // (3)·(Z/6) = {0, 3}.
        let m = zmod(&[6], 0);
        let s = Submodule::full(m.clone()).scale_by(&big(3));
        assert!(s.contains(&m.element_from_ints(&[3]).unwrap()));
        assert!(!s.contains(&m.element_from_ints(&[1]).unwrap()));
        let (q, _) = s.quotient();
        assert_eq!(q.invariants(), &[big(3)]);
    }
}
