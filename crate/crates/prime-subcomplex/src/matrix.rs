//! Dense matrices over `R_u` with exact Hermite and Smith normal forms.
//!
//! Pivot selection is deterministic (smallest stripped magnitude, ties broken
//! by lowest row then column), so normal forms and transforms are
//! bit-identical across runs.

use crate::ring::{ring_xgcd, RingCtx, RingElem};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![RingElem::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RingElem::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds from integer entries, row major.
    pub fn from_int_rows(rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Mat::from_fn(r, c, |i, j| RingElem::from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<RingElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn push_column(&mut self, col: &[RingElem]) {
        assert_eq!(col.len(), self.rows);
        let mut m = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            m.set(i, self.cols, col[i].clone());
        }
        *self = m;
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RingElem::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[RingElem]) -> Vec<RingElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = RingElem::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &RingElem) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: &RingElem) {
        for k in 0..self.cols {
            let v = self.get(i, k).mul(c);
            self.set(i, k, v);
        }
    }

    fn scale_col(&mut self, j: usize, c: &RingElem) {
        for k in 0..self.rows {
            let v = self.get(k, j).mul(c);
            self.set(k, j, v);
        }
    }

    /// row_i += c · row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, c: &RingElem) {
        for k in 0..self.cols {
            let v = self.get(i, k).add(&c.mul(self.get(j, k)));
            self.set(i, k, v);
        }
    }

    /// col_i += c · col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, c: &RingElem) {
        for k in 0..self.rows {
            let v = self.get(k, i).add(&c.mul(self.get(k, j)));
            self.set(k, i, v);
        }
    }

    /// Replace rows (i, j) by the 2x2 combination
    /// `(x·r_i + y·r_j, -(b/g)·r_i + (a/g)·r_j)`; determinant 1.
    fn combine_rows(&mut self, i: usize, j: usize, x: &RingElem, y: &RingElem, ag: &RingElem, bg: &RingElem) {
        for k in 0..self.cols {
            let p = self.get(i, k).clone();
            let q = self.get(j, k).clone();
            self.set(i, k, x.mul(&p).add(&y.mul(&q)));
            self.set(j, k, ag.mul(&q).sub(&bg.mul(&p)));
        }
    }

    /// Replace cols (i, j) by the same determinant-1 combination.
    fn combine_cols(&mut self, i: usize, j: usize, x: &RingElem, y: &RingElem, ag: &RingElem, bg: &RingElem) {
        for k in 0..self.rows {
            let p = self.get(k, i).clone();
            let q = self.get(k, j).clone();
            self.set(k, i, x.mul(&p).add(&y.mul(&q)));
            self.set(k, j, ag.mul(&q).sub(&bg.mul(&p)));
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form `U · A · V = D` with all four transforms invertible
/// over `R_u`.  Diagonal entries are canonical non-negative integers coprime
/// to `u`, in a divisibility chain; unit entries appear as `1`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: Mat,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
    pub rank: usize,
}

impl Snf {
    /// The non-unit diagonal entries, i.e. the invariant factors of the
    /// cokernel, as canonical integers in a divisibility chain.
    pub fn invariants(&self) -> Vec<BigInt> {
        let n = self.rank.min(self.d.rows()).min(self.d.cols());
        (0..n)
            .filter_map(|i| {
                let e = self.d.get(i, i);
                if e.is_one() {
                    None
                } else {
                    Some(e.num().clone())
                }
            })
            .collect()
    }
}

fn strip_norm(e: &RingElem, ctx: &RingCtx) -> BigInt {
    ctx.strip_units(e.num())
}

/// `d | x` in `R_u`, for `d` a non-negative integer coprime to `u`.
fn divides_int(d: &BigInt, x: &RingElem, ctx: &RingCtx) -> bool {
    use num_integer::Integer;
    let s = ctx.strip_units(x.num());
    if d.is_zero() {
        return s.is_zero();
    }
    s.is_multiple_of(d)
}

/// Computes the Smith normal form of `a` over `R_u`, tracking transforms.
pub fn snf(a: &Mat, ctx: &RingCtx) -> Snf {
    let (n, m) = (a.rows(), a.cols());
    let mut a = a.clone();
    let mut u = Mat::identity(n);
    let mut u_inv = Mat::identity(n);
    let mut v = Mat::identity(m);
    let mut v_inv = Mat::identity(m);

    // Row combination on `a` mirrors onto `u` (left) and `u_inv` (right,
    // by the inverse); column combination mirrors onto `v` and `v_inv`.
    let gcd_rows = |a: &mut Mat, u: &mut Mat, u_inv: &mut Mat, t: usize, i: usize, ctx: &RingCtx| {
        let p = a.get(t, t).clone();
        let q = a.get(i, t).clone();
        // When the pivot already divides the entry, eliminate without
        // touching the pivot row (the xgcd combination may rotate rows, which
        // can cycle); the xgcd path below then strictly shrinks the pivot.
        if let Some(c) = q.checked_div(&p, ctx) {
            let neg_c = c.neg();
            a.add_row_multiple(i, t, &neg_c);
            u.add_row_multiple(i, t, &neg_c);
            // u_inv · L⁻¹ : col_t += c · col_i
            u_inv.add_col_multiple(t, i, &c);
            return;
        }
        let (g, x, y) = ring_xgcd(&p, &q, ctx);
        let g = RingElem::from_int(g);
        let ag = p.checked_div(&g, ctx).expect("g | a");
        let bg = q.checked_div(&g, ctx).expect("g | b");
        a.combine_rows(t, i, &x, &y, &ag, &bg);
        u.combine_rows(t, i, &x, &y, &ag, &bg);
        // u_inv · L⁻¹ : col_t ← ag·col_t + bg·col_i ; col_i ← -y·col_t + x·col_i
        for k in 0..u_inv.rows() {
            let ct = u_inv.get(k, t).clone();
            let ci = u_inv.get(k, i).clone();
            u_inv.set(k, t, ag.mul(&ct).add(&bg.mul(&ci)));
            u_inv.set(k, i, x.mul(&ci).sub(&y.mul(&ct)));
        }
    };
    let gcd_cols = |a: &mut Mat, v: &mut Mat, v_inv: &mut Mat, t: usize, j: usize, ctx: &RingCtx| {
        let p = a.get(t, t).clone();
        let q = a.get(t, j).clone();
        if let Some(c) = q.checked_div(&p, ctx) {
            let neg_c = c.neg();
            a.add_col_multiple(j, t, &neg_c);
            v.add_col_multiple(j, t, &neg_c);
            // R⁻¹ · v_inv : row_t += c · row_j
            v_inv.add_row_multiple(t, j, &c);
            return;
        }
        let (g, x, y) = ring_xgcd(&p, &q, ctx);
        let g = RingElem::from_int(g);
        let ag = p.checked_div(&g, ctx).expect("g | a");
        let bg = q.checked_div(&g, ctx).expect("g | b");
        a.combine_cols(t, j, &x, &y, &ag, &bg);
        v.combine_cols(t, j, &x, &y, &ag, &bg);
        // L⁻¹ · v_inv : row_t ← ag·row_t + bg·row_j ; row_j ← -y·row_t + x·row_j
        for k in 0..v_inv.cols() {
            let rt = v_inv.get(t, k).clone();
            let rj = v_inv.get(j, k).clone();
            v_inv.set(t, k, ag.mul(&rt).add(&bg.mul(&rj)));
            v_inv.set(j, k, x.mul(&rj).sub(&y.mul(&rt)));
        }
    };

    let mut t = 0;
    while t < n.min(m) {
        // Deterministic pivot: smallest stripped magnitude, lowest row, then
        // lowest column.
        let mut pivot: Option<(usize, usize, BigInt)> = None;
        for i in t..n {
            for j in t..m {
                let e = a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let norm = strip_norm(e, ctx);
                let better = match &pivot {
                    None => true,
                    Some((_, _, best)) => norm < *best,
                };
                if better {
                    pivot = Some((i, j, norm));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        'settle: loop {
            for i in t + 1..n {
                if !a.get(i, t).is_zero() {
                    gcd_rows(&mut a, &mut u, &mut u_inv, t, i, ctx);
                }
            }
            for j in t + 1..m {
                if !a.get(t, j).is_zero() {
                    gcd_cols(&mut a, &mut v, &mut v_inv, t, j, ctx);
                }
            }
            let col_clear = (t + 1..n).all(|i| a.get(i, t).is_zero());
            let row_clear = (t + 1..m).all(|j| a.get(t, j).is_zero());
            if !(col_clear && row_clear) {
                continue;
            }
            // Normalize the pivot to its canonical associate by a unit row
            // scaling.
            let d = ctx.strip_units(a.get(t, t).num());
            let unit = RingElem::from_int(d.clone())
                .checked_div(a.get(t, t), ctx)
                .expect("pivot is unit times canonical associate");
            if !unit.is_one() {
                a.scale_row(t, &unit);
                u.scale_row(t, &unit);
                let inv = unit.inverse(ctx).expect("unit");
                u_inv.scale_col(t, &inv);
            }
            // Pull in any remaining entry the pivot does not divide, so the
            // chain d_t | d_{t+1} | ... holds on exit.
            for i in t + 1..n {
                for j in t + 1..m {
                    if !divides_int(&d, a.get(i, j), ctx) {
                        a.add_row_multiple(t, i, &RingElem::one());
                        u.add_row_multiple(t, i, &RingElem::one());
                        // (L⁻¹ subtracts) u_inv: col_i -= col_t
                        for k in 0..u_inv.rows() {
                            let ct = u_inv.get(k, t).clone();
                            let ci = u_inv.get(k, i).clone();
                            u_inv.set(k, i, ci.sub(&ct));
                        }
                        continue 'settle;
                    }
                }
            }
            break;
        }
        t += 1;
    }
    Snf {
        d: a,
        u,
        u_inv,
        v,
        v_inv,
        rank: t,
    }
}

/// Canonical column-style Hermite normal form over `R_u`.
///
/// Columns are in echelon form with pivot rows strictly increasing; each
/// pivot is the canonical positive integer generator of its row, and every
/// entry in a pivot row to the left of the pivot is reduced to the canonical
/// residue in `[0, pivot)`.  Two column spans over `R_u` are equal iff their
/// forms are identical; zero columns are dropped.
pub fn hnf_columns(a: &Mat, ctx: &RingCtx) -> Mat {
    let n = a.rows();
    let mut a = a.clone();
    let mut r = 0usize; // next pivot column
    for row in 0..n {
        if r >= a.cols() {
            break;
        }
        // Gather all mass of this row into column r.
        loop {
            let mut j_nonzero = None;
            for j in r..a.cols() {
                if !a.get(row, j).is_zero() {
                    j_nonzero = Some(j);
                    break;
                }
            }
            let Some(j0) = j_nonzero else { break };
            a.swap_cols(r, j0);
            let mut changed = false;
            for j in r + 1..a.cols() {
                if a.get(row, j).is_zero() {
                    continue;
                }
                let p = a.get(row, r).clone();
                let q = a.get(row, j).clone();
                let (g, x, y) = ring_xgcd(&p, &q, ctx);
                let g = RingElem::from_int(g);
                let ag = p.checked_div(&g, ctx).expect("g | p");
                let bg = q.checked_div(&g, ctx).expect("g | q");
                a.combine_cols(r, j, &x, &y, &ag, &bg);
                changed = true;
            }
            if !changed {
                break;
            }
        }
        if a.get(row, r).is_zero() {
            continue;
        }
        // Normalize the pivot to its canonical associate.
        let d = ctx.strip_units(a.get(row, r).num());
        let unit = RingElem::from_int(d.clone())
            .checked_div(a.get(row, r), ctx)
            .expect("unit");
        if !unit.is_one() {
            a.scale_col(r, &unit);
        }
        // Reduce earlier pivot columns at this row to the canonical residue.
        for c in 0..r {
            let e = a.get(row, c).clone();
            if e.is_zero() {
                continue;
            }
            let res = e.residue_mod(&d);
            let q = e
                .sub(&RingElem::from_int(res))
                .checked_div(&RingElem::from_int(d.clone()), ctx)
                .expect("difference divisible by pivot");
            a.add_col_multiple(c, r, &q.neg());
        }
        r += 1;
    }
    // Drop the zero tail.
    Mat::from_fn(n, r, |i, j| a.get(i, j).clone())
}

/// Solves `H · x = v` for `H` in column HNF; returns the coefficient vector
/// when `v` lies in the `R_u`-span of the columns.
pub fn solve_hnf(h: &Mat, v: &[RingElem], ctx: &RingCtx) -> Option<Vec<RingElem>> {
    assert_eq!(h.rows(), v.len());
    let mut v: Vec<RingElem> = v.to_vec();
    let mut coeffs = vec![RingElem::zero(); h.cols()];
    // Pivot row of each column: first nonzero entry.
    for j in 0..h.cols() {
        let p = (0..h.rows()).find(|&i| !h.get(i, j).is_zero())?;
        // Rows above the pivot must already be cleared.
        if (0..p).any(|i| !v[i].is_zero()) {
            return None;
        }
        if v[p].is_zero() {
            continue;
        }
        let q = v[p].checked_div(h.get(p, j), ctx)?;
        for i in 0..h.rows() {
            v[i] = v[i].sub(&q.mul(h.get(i, j)));
        }
        coeffs[j] = q;
    }
    if v.iter().all(|e| e.is_zero()) {
        Some(coeffs)
    } else {
        None
    }
}

/// A basis of the kernel `{x : A·x = 0}` as columns, computed from the SNF
/// column transform.
pub fn kernel(a: &Mat, ctx: &RingCtx) -> Mat {
    let s = snf(a, ctx);
    let m = a.cols();
    let free: Vec<usize> = (s.rank..m).collect();
    Mat::from_fn(m, free.len(), |i, j| s.v.get(i, free[j]).clone())
}
