//! Integer lattices: incremental Hermite normal form with row payloads,
//! Smith normal form with transforms, and small-dimensional LLL and
//! Fincke–Pohst enumeration in floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Data carried alongside lattice rows and combined linearly with them.
pub trait RowPayload: Clone {
    /// `ca * a + cb * b`.
    fn combine(a: &Self, ca: &BigInt, b: &Self, cb: &BigInt) -> Self;
}

impl RowPayload for () {
    fn combine(_: &(), _: &BigInt, _: &(), _: &BigInt) {}
}

/// Lower-triangular basis of a sublattice of Z^n, one row per pivot
/// column, where a row's pivot is its last nonzero entry.
#[derive(Clone, Debug)]
pub struct Hnf<P: RowPayload = ()> {
    ncols: usize,
    rows: Vec<Option<(Vec<BigInt>, P)>>,
}

fn last_nonzero(v: &[BigInt]) -> Option<usize> {
    v.iter().rposition(|x| !x.is_zero())
}

fn axpy(y: &mut [BigInt], a: &BigInt, x: &[BigInt]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

impl<P: RowPayload> Hnf<P> {
    pub fn new(ncols: usize) -> Self {
        Hnf {
            ncols,
            rows: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ncols
    }

    pub fn row(&self, pivot: usize) -> Option<&(Vec<BigInt>, P)> {
        self.rows[pivot].as_ref()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &Vec<BigInt>, &P)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|(v, p)| (i, v, p)))
    }

    /// Product of pivots, the index of the lattice when full rank.
    pub fn determinant(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        Some(
            self.rows
                .iter()
                .enumerate()
                .map(|(i, r)| r.as_ref().unwrap().0[i].clone())
                .product(),
        )
    }

    /// Adds a vector. Returns the payload of the zero vector it reduces to
    /// when it already lies in the lattice (a kernel element), else `None`.
    pub fn insert(&mut self, mut v: Vec<BigInt>, mut pay: P) -> Option<P> {
        assert_eq!(v.len(), self.ncols);
        loop {
            let Some(c) = last_nonzero(&v) else {
                return Some(pay);
            };
            match self.rows[c].take() {
                None => {
                    if v[c].is_negative() {
                        for x in v.iter_mut() {
                            *x = -&*x;
                        }
                        pay = P::combine(&pay, &-BigInt::one(), &pay, &BigInt::zero());
                    }
                    self.rows[c] = Some((v, pay));
                    self.reduce_row(c);
                    return None;
                }
                Some((r, rp)) => {
                    let (a, b) = (r[c].clone(), v[c].clone());
                    if (&b % &a).is_zero() {
                        let q = &b / &a;
                        axpy(&mut v, &-&q, &r);
                        pay = P::combine(&pay, &BigInt::one(), &rp, &-q);
                        self.rows[c] = Some((r, rp));
                    } else {
                        // [[x, y], [-b/g, a/g]] is unimodular and clears column c in the second row
                        let eg = a.extended_gcd(&b);
                        let g = eg.gcd.clone();
                        let (x, y) = (eg.x, eg.y);
                        let mut nr: Vec<BigInt> =
                            r.iter().zip(&v).map(|(ri, vi)| &x * ri + &y * vi).collect();
                        let mut np = P::combine(&rp, &x, &pay, &y);
                        let (ba, bb) = (&b / &g, &a / &g);
                        let nv: Vec<BigInt> = r
                            .iter()
                            .zip(&v)
                            .map(|(ri, vi)| &ba * ri - &bb * vi)
                            .collect();
                        pay = P::combine(&rp, &ba, &pay, &-bb);
                        v = nv;
                        if nr[c].is_negative() {
                            for t in nr.iter_mut() {
                                *t = -&*t;
                            }
                            np = P::combine(&np, &-BigInt::one(), &np, &BigInt::zero());
                        }
                        self.rows[c] = Some((nr, np));
                        self.reduce_row(c);
                    }
                }
            }
        }
    }

    /// Reduces the entries of row `c` left of its pivot modulo earlier pivots.
    fn reduce_row(&mut self, c: usize) {
        let (mut r, mut rp) = self.rows[c].take().unwrap();
        for j in (0..c).rev() {
            if let Some((rj, pj)) = self.rows[j].as_ref() {
                let q = r[j].div_floor(&rj[j]);
                if !q.is_zero() {
                    axpy(&mut r, &-&q, rj);
                    rp = P::combine(&rp, &BigInt::one(), pj, &-q);
                }
            }
        }
        self.rows[c] = Some((r, rp));
    }

    /// Fully reduces all rows (canonical form once full rank).
    pub fn normalize(&mut self) {
        for c in 0..self.ncols {
            if self.rows[c].is_some() {
                self.reduce_row(c);
            }
        }
    }

    /// Writes `v` as an integer combination of rows: returns the combined
    /// payload, or `None` when `v` is not in the lattice.
    pub fn solve(&self, v: &[BigInt], zero: P) -> Option<P> {
        let mut v = v.to_vec();
        let mut pay = zero;
        while let Some(c) = last_nonzero(&v) {
            let (r, rp) = self.rows[c].as_ref()?;
            let (q, rem) = v[c].div_rem(&r[c]);
            if !rem.is_zero() {
                return None;
            }
            axpy(&mut v, &-&q, r);
            pay = P::combine(&pay, &BigInt::one(), rp, &q);
        }
        Some(pay)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool
    where
        P: Default,
    {
        self.solve(v, P::default()).is_some()
    }
}

/// Hermite basis (lower triangular, reduced) of the lattice spanned by `gens`.
pub fn hnf_basis(ncols: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut h: Hnf<()> = Hnf::new(ncols);
    for g in gens {
        h.insert(g, ());
    }
    h.normalize();
    h.rows().map(|(_, v, _)| v.clone()).collect()
}

/// Smith form `U A V = diag(d)`; only the column transform is kept.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal entries (length = number of columns; zero for free directions).
    pub diag: Vec<BigInt>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
}

pub fn smith_normal_form(a: &[Vec<BigInt>], ncols: usize) -> Smith {
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let nrows = m.len();
    let ident = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let mut v = ident(ncols);
    let mut vinv = ident(ncols);
    let mut diag = vec![BigInt::zero(); ncols];
    let swap_cols = |m: &mut Vec<Vec<BigInt>>,
                     v: &mut Vec<Vec<BigInt>>,
                     vinv: &mut Vec<Vec<BigInt>>,
                     i: usize,
                     j: usize| {
        if i == j {
            return;
        }
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vinv.swap(i, j);
    };
    // col_j -= q col_t
    let col_sub = |m: &mut Vec<Vec<BigInt>>,
                   v: &mut Vec<Vec<BigInt>>,
                   vinv: &mut Vec<Vec<BigInt>>,
                   j: usize,
                   t: usize,
                   q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for row in m.iter_mut() {
            let x = &row[t] * q;
            row[j] -= x;
        }
        for row in v.iter_mut() {
            let x = &row[t] * q;
            row[j] -= x;
        }
        let rj = vinv[j].clone();
        for (a, b) in vinv[t].iter_mut().zip(rj) {
            *a += q * b;
        }
    };
    for t in 0..ncols.min(nrows) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            swap_cols(&mut m, &mut v, &mut vinv, t, bj);
            let piv = m[t][t].clone();
            let mut dirty = false;
            for i in t + 1..nrows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&piv);
                    let rt = m[t].clone();
                    for (x, y) in m[i].iter_mut().zip(rt) {
                        *x -= &q * y;
                    }
                    dirty |= !m[i][t].is_zero();
                }
            }
            for j in t + 1..ncols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&piv);
                    col_sub(&mut m, &mut v, &mut vinv, j, t, &q);
                    dirty |= !m[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            let mut bad = None;
            'find: for i in t + 1..nrows {
                for j in t + 1..ncols {
                    if !(&m[i][j] % &piv).is_zero() {
                        bad = Some(i);
                        break 'find;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let ri = m[i].clone();
                    for (x, y) in m[t].iter_mut().zip(ri) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if t < nrows && t < ncols {
            diag[t] = m[t][t].abs();
        }
    }
    Smith {
        diag,
        v,
        v_inv: vinv,
    }
}

/// LLL reduction (δ = 0.99) of real row vectors, tracking the integer
/// transform `t` so that `reduced = t * original`.
pub fn lll_real(basis: &mut [Vec<f64>], t: &mut [Vec<i64>]) {
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 100_000 {
        guard += 1;
        // Gram–Schmidt from scratch; dimensions here are tiny
        let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        let mut bn = vec![0.0; n];
        for i in 0..n {
            let mut v = basis[i].clone();
            for j in 0..i {
                mu[i][j] = if bn[j] > 0.0 {
                    dot(&basis[i], &bstar[j]) / bn[j]
                } else {
                    0.0
                };
                for (x, y) in v.iter_mut().zip(&bstar[j]) {
                    *x -= mu[i][j] * y;
                }
            }
            bn[i] = dot(&v, &v);
            bstar.push(v);
        }
        let mut changed = false;
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                let bj = basis[j].clone();
                for (x, y) in basis[k].iter_mut().zip(bj) {
                    *x -= q * y;
                }
                let tj = t[j].clone();
                for (x, y) in t[k].iter_mut().zip(tj) {
                    *x -= q as i64 * y;
                }
                for i in 0..j {
                    mu[k][i] -= q * mu[j][i];
                }
                mu[k][j] -= q;
                changed = true;
            }
        }
        if changed {
            continue;
        }
        if bn[k] < (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1] {
            basis.swap(k, k - 1);
            t.swap(k, k - 1);
            k = (k - 1).max(1);
        } else {
            k += 1;
        }
    }
}

/// All nonzero integer vectors `x` with `x^T G x <= bound`, visited until
/// `visit` returns false. `G` must be positive definite.
pub fn fincke_pohst(gram: &[Vec<f64>], bound: f64, mut visit: impl FnMut(&[i64]) -> bool) {
    let n = gram.len();
    // q: Cholesky-like coefficients, Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)^2
    let mut q = gram.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut x = vec![0i64; n];
    let mut t = vec![0.0; n];
    let mut u = vec![0.0; n];
    let mut ub = vec![0.0; n];
    let mut i = n - 1;
    t[i] = bound;
    u[i] = 0.0;
    let set_bounds = |i: usize, t: &[f64], u: &[f64], x: &mut [i64], ub: &mut [f64]| {
        let z = (t[i] / q[i][i]).max(0.0).sqrt();
        ub[i] = (z - u[i]).floor();
        x[i] = (-z - u[i]).ceil() as i64 - 1;
    };
    set_bounds(i, &t, &u, &mut x, &mut ub);
    loop {
        x[i] += 1;
        if x[i] as f64 > ub[i] {
            if i == n - 1 {
                return;
            }
            i += 1;
            continue;
        }
        if i > 0 {
            let d = x[i] as f64 + u[i];
            t[i - 1] = t[i] - q[i][i] * d * d;
            i -= 1;
            u[i] = (i + 1..n).map(|j| q[i][j] * x[j] as f64).sum();
            set_bounds(i, &t, &u, &mut x, &mut ub);
        } else {
            if x.iter().all(|&c| c == 0) {
                // the zero vector sits in the middle; skip it
                continue;
            }
            if !visit(&x) {
                return;
            }
        }
    }
}

pub fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
