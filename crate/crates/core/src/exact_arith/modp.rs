//! Polynomials over a prime field F_p with `p < 2^63`, enough for root
//! finding and splitting types of cubics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntPolynomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn from_big(p: &BigInt) -> Result<Self> {
        match p.to_u64() {
            Some(v) if v < (1u64 << 63) => Ok(Fp { p: v }),
            _ => Err(Error::PrimeTooLarge(p.clone())),
        }
    }

    pub fn reduce(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.p as u128 - b as u128) % self.p as u128) as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Legendre symbol of `a` for odd `p`.
    pub fn legendre(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// A square root of a quadratic residue (Tonelli–Shanks).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 || p == 2 {
            return Some(a);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let (mut q, mut s) = (p - 1, 0u32);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.legendre(z) != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    pub fn poly(&self, f: &IntPolynomial) -> Vec<u64> {
        trim(f.coeffs().iter().map(|c| self.reduce(c)).collect())
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = self.add(v[i + j], self.mul(x, y));
            }
        }
        trim(v)
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    /// Remainder and quotient of `a` by nonzero `b`.
    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty());
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), trim(r));
        }
        let db = b.len() - 1;
        let lc_inv = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = self.mul(r[i], lc_inv);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i - db + j] = self.sub(r[i - db + j], self.mul(c, bj));
            }
        }
        (trim(q), trim(r))
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.poly_divrem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> Vec<u64> {
        if a.is_empty() {
            return Vec::new();
        }
        let inv = self.inv(*a.last().unwrap());
        a.iter().map(|&c| self.mul(c, inv)).collect()
    }

    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `base^e mod m`.
    pub fn poly_powmod(&self, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.poly_rem(&self.poly_mul(&r, &b), m);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        r
    }

    pub fn eval(&self, f: &[u64], x: u64) -> u64 {
        let mut acc = 0;
        for &c in f.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// Distinct roots in F_p, ascending.
    pub fn roots(&self, f: &[u64]) -> Vec<u64> {
        let f = trim(f.to_vec());
        if f.len() <= 1 {
            return Vec::new();
        }
        if self.p < 64 {
            return (0..self.p).filter(|&x| self.eval(&f, x) == 0).collect();
        }
        let f = self.monic(&f);
        // g = gcd(f, x^p - x) is the product of the distinct linear factors
        let xp = self.poly_powmod(&[0, 1], self.p, &f);
        let g = self.poly_gcd(&f, &self.poly_sub(&xp, &[0, 1]));
        let mut out = Vec::new();
        self.split_linear(&g, &mut out);
        out.sort_unstable();
        out
    }

    fn split_linear(&self, g: &[u64], out: &mut Vec<u64>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(self.neg(self.mul(g[0], self.inv(g[1])))),
            _ => {
                if g[0] == 0 {
                    out.push(0);
                    let (q, _) = self.poly_divrem(g, &[0, 1]);
                    self.split_linear(&q, out);
                    return;
                }
                for a in 1u64.. {
                    // gcd(g, (x + a)^((p-1)/2) - 1) separates residues from non-residues
                    let h = self.poly_powmod(&[a % self.p, 1], (self.p - 1) / 2, g);
                    let d = self.poly_gcd(g, &self.poly_sub(&h, &[1]));
                    if d.len() > 1 && d.len() < g.len() {
                        let (q, _) = self.poly_divrem(g, &d);
                        self.split_linear(&d, out);
                        self.split_linear(&self.monic(&q), out);
                        return;
                    }
                }
            }
        }
    }

    /// True when a cubic is irreducible over F_p (no roots suffices for degree 3).
    pub fn cubic_is_irreducible(&self, f: &[u64]) -> bool {
        let f = trim(f.to_vec());
        f.len() == 4 && self.roots(&f).is_empty()
    }
}

/// Reduced row echelon basis of a subspace of F_p^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    fp: Fp,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(fp: Fp, dim: usize) -> Self {
        Subspace {
            fp,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by(fp: Fp, dim: usize, vecs: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut s = Subspace::zero(fp, dim);
        for v in vecs {
            s.add(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let fp = self.fp;
        let mut v = v.to_vec();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let a = v[c];
            if a != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = fp.sub(*x, fp.mul(a, *y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn add(&mut self, v: Vec<u64>) -> bool {
        let fp = self.fp;
        let mut v = self.reduce(&v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = fp.inv(v[c]);
        for x in v.iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for r in self.rows.iter_mut() {
            let a = r[c];
            if a != 0 {
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = fp.sub(*x, fp.mul(a, *y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(at, v);
        self.pivots.insert(at, c);
        true
    }
}

impl Fp {
    /// Basis of `{x : Σ x_i a_i = 0}` for the rows `a_i`.
    pub fn left_kernel(&self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.len();
        let m = a.first().map_or(0, |r| r.len());
        let mut aug: Vec<Vec<u64>> = a
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        let mut next = 0;
        for c in 0..m {
            let Some(piv) = (next..n).find(|&i| aug[i][c] != 0) else {
                continue;
            };
            aug.swap(next, piv);
            let inv = self.inv(aug[next][c]);
            for x in aug[next].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let prow = aug[next].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                if i != next && row[c] != 0 {
                    let f = row[c];
                    for (x, y) in row.iter_mut().zip(&prow) {
                        *x = self.sub(*x, self.mul(f, *y));
                    }
                }
            }
            next += 1;
        }
        aug[next..].iter().map(|r| r[m..].to_vec()).collect()
    }
}

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Splitting of a squarefree-mod-p cubic into irreducible degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicSplitting {
    /// Irreducible: one factor of degree 3.
    Inert,
    /// Linear times irreducible quadratic.
    Partial,
    /// Three distinct linear factors.
    Split,
    /// F mod p has a repeated factor.
    Repeated,
}

/// Splitting type of a monic cubic mod p, read off from its root count.
pub fn cubic_splitting_mod_p(f: &IntPolynomial, fp: Fp) -> CubicSplitting {
    let g = fp.poly(f);
    let dg = fp.poly(&f.derivative());
    let gcd = fp.poly_gcd(&g, &dg);
    if gcd.len() > 1 {
        return CubicSplitting::Repeated;
    }
    match fp.roots(&g).len() {
        0 => CubicSplitting::Inert,
        1 => CubicSplitting::Partial,
        _ => CubicSplitting::Split,
    }
}
