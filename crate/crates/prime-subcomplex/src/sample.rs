//! Seeded deterministic generators for the randomized theorem audits.
//!
//! Complexes are assembled from elementary pieces — concentrated modules,
//! two-term scalar maps `M → M`, projections `R → R/(n)` and three-term
//! strands `R → R → R/(n)` — glued as block direct sums in presentation
//! coordinates and then re-canonicalized through the Smith normal form.
//! Every generator takes an explicit RNG so that a `(seed, trial)` pair
//! reproduces the same objects bit-for-bit.

use crate::complex::{random_over_subcomplex, Complex, Subcomplex};
use crate::matrix::Mat;
use crate::module::{FgModule, ModuleMap, Submodule};
use crate::ring::{Ideal, RingCtx, RingElem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bounds for the random generators.
#[derive(Debug, Clone)]
pub struct SampleCfg {
    /// Denominators to draw the base ring from.
    pub us: Vec<u64>,
    /// Maximum number of degrees in a complex window.
    pub max_window: usize,
    /// Largest invariant factor a torsion coordinate may carry.
    pub max_invariant: u64,
    /// Maximum number of elementary pieces glued into one complex.
    pub max_pieces: usize,
}

impl Default for SampleCfg {
    fn default() -> SampleCfg {
        SampleCfg {
            us: vec![1, 6, 10],
            max_window: 4,
            max_invariant: 60,
            max_pieces: 3,
        }
    }
}

/// Derives an independent RNG stream for one trial of a seeded run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

pub fn random_ctx(rng: &mut impl Rng, cfg: &SampleCfg) -> RingCtx {
    let u = cfg.us[rng.gen_range(0..cfg.us.len())];
    RingCtx::new(u).expect("configured u must be squarefree")
}

/// Integers in `2..=max` that stay non-unit (coprime to `u`) in `R_u`.
fn invariant_pool(ctx: &RingCtx, max: u64) -> Vec<u64> {
    (2..=max).filter(|n| n.gcd(&ctx.u()) == 1).collect()
}

/// A divisibility chain of canonical invariant factors, length 0..=2.
pub fn random_invariants(rng: &mut impl Rng, ctx: &RingCtx, cfg: &SampleCfg) -> Vec<BigInt> {
    let pool = invariant_pool(ctx, cfg.max_invariant.min(12));
    let len = rng.gen_range(0..=2usize);
    let mut out = Vec::new();
    if len >= 1 && !pool.is_empty() {
        let d1 = pool[rng.gen_range(0..pool.len())];
        out.push(BigInt::from(d1));
        if len == 2 {
            let mults: Vec<u64> = std::iter::once(1)
                .chain(invariant_pool(ctx, cfg.max_invariant / d1))
                .collect();
            let k = mults[rng.gen_range(0..mults.len())];
            out.push(BigInt::from(d1 * k));
        }
    }
    out
}

pub fn random_module(rng: &mut impl Rng, ctx: &RingCtx, cfg: &SampleCfg) -> FgModule {
    let invariants = random_invariants(rng, ctx, cfg);
    let free = rng.gen_range(0..=2usize);
    FgModule::from_invariants(ctx.clone(), invariants, free).expect("pool is canonical")
}

/// One torsion (`d > 1`) or free (`0`) coordinate for a presentation slot.
fn random_coord(rng: &mut impl Rng, ctx: &RingCtx, cfg: &SampleCfg) -> BigInt {
    let pool = invariant_pool(ctx, cfg.max_invariant.min(12));
    if pool.is_empty() || rng.gen_bool(0.5) {
        BigInt::zero()
    } else {
        BigInt::from(pool[rng.gen_range(0..pool.len())])
    }
}

/// Presentation-coordinate blueprint of a complex: diagonal relation entries
/// per degree slot and sparse differential blocks between adjacent slots.
struct Blueprint {
    lo: i64,
    /// `diag[s][c]`: invariant of coordinate `c` at slot `s` (`0` = free).
    diag: Vec<Vec<BigInt>>,
    /// `blocks[s]`: entries `(row in slot s, col in slot s+1, value)` of the
    /// raw differential `slot s+1 → slot s`.
    blocks: Vec<Vec<(usize, usize, BigInt)>>,
}

impl Blueprint {
    fn new(lo: i64, window: usize) -> Blueprint {
        Blueprint {
            lo,
            diag: vec![Vec::new(); window],
            blocks: vec![Vec::new(); window.saturating_sub(1)],
        }
    }

    fn window(&self) -> usize {
        self.diag.len()
    }

    fn push_coord(&mut self, slot: usize, invariant: BigInt) -> usize {
        self.diag[slot].push(invariant);
        self.diag[slot].len() - 1
    }

    /// Canonicalizes every slot through its diagonal presentation and
    /// conjugates the raw blocks into canonical coordinates.
    fn assemble(&self, ctx: &RingCtx) -> Complex {
        let modules: Vec<FgModule> = self
            .diag
            .iter()
            .map(|d| {
                let n = d.len();
                let rel = Mat::from_fn(n, n, |i, j| {
                    if i == j {
                        RingElem::from_int(d[i].clone())
                    } else {
                        RingElem::zero()
                    }
                });
                FgModule::from_presentation(ctx, &rel)
            })
            .collect();
        let mut diffs = Vec::new();
        for s in 0..self.window() - 1 {
            let mut raw = Mat::zeros(self.diag[s].len(), self.diag[s + 1].len());
            for (i, j, v) in &self.blocks[s] {
                raw.set(*i, *j, RingElem::from_int(v.clone()));
            }
            let to_can = &modules[s].presentation().expect("presented").to_canonical;
            let from_can = &modules[s + 1].presentation().expect("presented").from_canonical;
            let mat = to_can.mul(&raw).mul(from_can);
            diffs.push(
                ModuleMap::new(modules[s + 1].clone(), modules[s].clone(), mat)
                    .expect("blocks map relations into relations"),
            );
        }
        Complex::new(ctx.clone(), self.lo, modules, diffs).expect("window shape")
    }
}

/// A random finitely supported complex with `d∘d = 0` by construction.
pub fn random_complex(rng: &mut impl Rng, ctx: &RingCtx, cfg: &SampleCfg) -> Complex {
    let w = rng.gen_range(1..=cfg.max_window.max(1));
    let lo = rng.gen_range(-1..=1i64);
    let mut bp = Blueprint::new(lo, w);
    let pieces = rng.gen_range(1..=cfg.max_pieces.max(1));
    for _ in 0..pieces {
        add_random_piece(&mut bp, rng, ctx, cfg);
    }
    for s in 0..w {
        if bp.diag[s].is_empty() {
            let c = random_coord(rng, ctx, cfg);
            bp.push_coord(s, c);
        }
    }
    bp.assemble(ctx)
}

fn add_random_piece(bp: &mut Blueprint, rng: &mut impl Rng, ctx: &RingCtx, cfg: &SampleCfg) {
    let w = bp.window();
    let kind = rng.gen_range(0..4u8);
    match kind {
        // Concentrated coordinate, no differential.
        0 => {
            let s = rng.gen_range(0..w);
            let c = random_coord(rng, ctx, cfg);
            bp.push_coord(s, c);
        }
        // Identical modules in adjacent slots joined by a scalar multiple.
        1 if w >= 2 => {
            let s = rng.gen_range(0..w - 1);
            let a = BigInt::from(rng.gen_range(0..=6i64));
            for _ in 0..rng.gen_range(1..=2usize) {
                let c = random_coord(rng, ctx, cfg);
                let i = bp.push_coord(s, c.clone());
                let j = bp.push_coord(s + 1, c);
                bp.blocks[s].push((i, j, a.clone()));
            }
        }
        // Projection of a free coordinate onto a torsion one.
        2 if w >= 2 => {
            let pool = invariant_pool(ctx, cfg.max_invariant.min(12));
            if pool.is_empty() {
                return;
            }
            let s = rng.gen_range(0..w - 1);
            let n = BigInt::from(pool[rng.gen_range(0..pool.len())]);
            let i = bp.push_coord(s, n);
            let j = bp.push_coord(s + 1, BigInt::zero());
            bp.blocks[s].push((i, j, BigInt::from(rng.gen_range(1..=3i64))));
        }
        // Exact strand: free → (×n) → free → (projection) → torsion.
        3 if w >= 3 => {
            let pool = invariant_pool(ctx, cfg.max_invariant.min(12));
            if pool.is_empty() {
                return;
            }
            let s = rng.gen_range(0..w - 2);
            let n = BigInt::from(pool[rng.gen_range(0..pool.len())]);
            let it = bp.push_coord(s, n.clone());
            let im = bp.push_coord(s + 1, BigInt::zero());
            let ih = bp.push_coord(s + 2, BigInt::zero());
            bp.blocks[s].push((it, im, BigInt::from(1)));
            bp.blocks[s + 1].push((im, ih, n));
        }
        // The window is too short for the drawn shape; concentrate instead.
        _ => {
            let s = rng.gen_range(0..w);
            let c = random_coord(rng, ctx, cfg);
            bp.push_coord(s, c);
        }
    }
}

/// A random closed subcomplex with at least one proper part, or `None` if
/// the attempts all came out full (e.g. over a zero complex).
pub fn random_proper_subcomplex(
    rng: &mut impl Rng,
    c: &Complex,
    budget: u64,
) -> Option<Subcomplex> {
    for _ in 0..8 {
        let base = if rng.gen_bool(0.3) {
            let m = rng.gen_range(2..=9i64);
            c.scale_by_ideal(&Ideal::new(m, c.ctx()))
        } else {
            Subcomplex::zero(c.clone())
        };
        let s = random_over_subcomplex(&base, rng, budget);
        if s.is_proper() {
            return Some(s);
        }
    }
    None
}

/// Scales the complex by a random prime that stays prime in `R_u`; the
/// quotient at every proper index is elementary abelian, so the result is a
/// prime subcomplex whenever it is proper.
pub fn random_prime_subcomplex(rng: &mut impl Rng, c: &Complex) -> Option<Subcomplex> {
    let pool: Vec<u64> = [2u64, 3, 5, 7, 11, 13]
        .iter()
        .copied()
        .filter(|p| p.gcd(&c.ctx().u()) == 1)
        .collect();
    let p = pool[rng.gen_range(0..pool.len())];
    let s = c.scale_by_ideal(&Ideal::new(p, c.ctx()));
    if s.is_proper() {
        Some(s)
    } else {
        None
    }
}

/// An avoidance instance: a prime subcomplex `S` together with operands
/// `T_1, …, T_n` whose intersection is forced inside `S` by shrinking one
/// operand into `S`.
pub fn avoidance_instance(
    rng: &mut impl Rng,
    c: &Complex,
) -> Option<(Vec<Subcomplex>, Subcomplex)> {
    let s = random_prime_subcomplex(rng, c)?;
    let n = rng.gen_range(1..=4usize);
    let mut ts: Vec<Subcomplex> = (0..n)
        .map(|_| random_over_subcomplex(&Subcomplex::zero(c.clone()), rng, 5))
        .collect();
    let j = rng.gen_range(0..n);
    ts[j] = if rng.gen_bool(0.25) {
        s.clone()
    } else {
        ts[j].intersect(&s)
    };
    Some((ts, s))
}

/// A torsion-free complex split as `A ⊕ B` by construction, with the `A`
/// summand packaged as a closed subcomplex.
pub struct SplitComplex {
    pub complex: Complex,
    pub summand: Subcomplex,
    /// True when `B` contributes a coordinate at some degree, so the
    /// summand is proper there with colon ideal `(0)`.
    pub summand_proper: bool,
}

/// Builds `A ⊕ B` from free two-term and concentrated pieces, each piece
/// assigned wholly to `A` or to `B`, so both summands are closed.
pub fn random_split_free_complex(
    rng: &mut impl Rng,
    ctx: &RingCtx,
    cfg: &SampleCfg,
) -> SplitComplex {
    let w = rng.gen_range(1..=cfg.max_window.max(1));
    let lo = rng.gen_range(-1..=1i64);
    let mut bp = Blueprint::new(lo, w);
    // in_a[s] = presentation coordinates of slot s that belong to A.
    let mut in_a: Vec<Vec<usize>> = vec![Vec::new(); w];
    let pieces = rng.gen_range(2..=cfg.max_pieces.max(2));
    for _ in 0..pieces {
        let to_a = rng.gen_bool(0.5);
        let tag = |slots: &mut Vec<Vec<usize>>, s: usize, i: usize| {
            if to_a {
                slots[s].push(i);
            }
        };
        if w >= 2 && rng.gen_bool(0.6) {
            let s = rng.gen_range(0..w - 1);
            let a = BigInt::from(rng.gen_range(0..=6i64));
            let i = bp.push_coord(s, BigInt::zero());
            let j = bp.push_coord(s + 1, BigInt::zero());
            bp.blocks[s].push((i, j, a));
            tag(&mut in_a, s, i);
            tag(&mut in_a, s + 1, j);
        } else {
            let s = rng.gen_range(0..w);
            let i = bp.push_coord(s, BigInt::zero());
            tag(&mut in_a, s, i);
        }
    }
    for s in 0..w {
        if bp.diag[s].is_empty() {
            bp.push_coord(s, BigInt::zero());
        }
    }
    let complex = bp.assemble(ctx);
    let mut parts = Vec::new();
    let mut summand_proper = false;
    for s in 0..w {
        let m = complex.components()[s].clone();
        let to_can = &m.presentation().expect("presented").to_canonical;
        let cols = &in_a[s];
        let gens = Mat::from_fn(m.rank(), cols.len(), |i, k| to_can.get(i, cols[k]).clone());
        let part = Submodule::new(m, &gens);
        if !part.is_full() {
            summand_proper = true;
        }
        parts.push(part);
    }
    let summand = Subcomplex::new(complex.clone(), parts).expect("summand is closed");
    SplitComplex {
        complex,
        summand,
        summand_proper,
    }
}
