//! Orders of `Q[T]/(F)` and the Round-2 enlargement to p-maximality.
//!
//! Everything here works for any monic squarefree cubic, reducible or not,
//! so the local index at p can be measured for split algebras as well.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::lattice::hnf_basis;
use crate::exact_arith::modp::Fp;
use crate::exact_arith::{factor_integer, poly_disc, BigRat, IntPolynomial};

/// Z-basis `ω_i = num[i] / den` in power coordinates. `num` is lower
/// triangular with positive diagonal and `num[0] = (den, 0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBasis {
    pub num: [[BigInt; 3]; 3],
    pub den: BigInt,
}

impl OrderBasis {
    /// `Z[θ]`.
    pub fn equation_order() -> Self {
        let num = std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from(u8::from(i == j))));
        OrderBasis {
            num,
            den: BigInt::one(),
        }
    }

    /// `[O : Z[θ]]`.
    pub fn index(&self) -> BigInt {
        let d: BigInt = (0..3).map(|i| self.num[i][i].clone()).product();
        self.den.pow(3) / d
    }

    /// Hermite basis of the Z-span of rational power-coordinate vectors.
    fn from_rational_rows(rows: &[[BigRat; 3]]) -> Self {
        let den = rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = rows.iter().map(|r| {
            r.iter()
                .map(|c| (c * BigRat::from_integer(den.clone())).to_integer())
                .collect()
        });
        let h = hnf_basis(3, ints);
        assert_eq!(h.len(), 3, "order basis must have full rank");
        let g = h.iter().flatten().fold(den.clone(), |acc, x| acc.gcd(x));
        let num = std::array::from_fn(|i| std::array::from_fn(|j| &h[i][j] / &g));
        OrderBasis { num, den: den / g }
    }

    pub fn element(&self, x: &[BigRat; 3]) -> [BigRat; 3] {
        std::array::from_fn(|j| {
            (0..3).fold(BigRat::zero(), |acc, i| {
                acc + &x[i] * BigRat::from_integer(self.num[i][j].clone())
            }) / BigRat::from_integer(self.den.clone())
        })
    }

    /// Coordinates over this basis of an element given in power coordinates.
    pub fn coords_of(&self, c: &[BigRat; 3]) -> [BigRat; 3] {
        let mut x: [BigRat; 3] = std::array::from_fn(|_| BigRat::zero());
        for j in (0..3).rev() {
            let mut t = &c[j] * BigRat::from_integer(self.den.clone());
            for (i, xi) in x.iter().enumerate().skip(j + 1) {
                t -= xi * BigRat::from_integer(self.num[i][j].clone());
            }
            x[j] = t / BigRat::from_integer(self.num[j][j].clone());
        }
        x
    }
}

/// Product in `Q[T]/(F)` of power-coordinate vectors.
pub(crate) fn mul_power(f: &IntPolynomial, a: &[BigRat; 3], b: &[BigRat; 3]) -> [BigRat; 3] {
    let mut c: [BigRat; 5] = std::array::from_fn(|_| BigRat::zero());
    for i in 0..3 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            c[i + j] += &a[i] * &b[j];
        }
    }
    let coef = |k: usize| BigRat::from_integer(f.coeff(k));
    // θ^3 = -(a2 θ^2 + a1 θ + a0)
    for k in (3..5).rev() {
        let t = std::mem::take(&mut c[k]);
        if t.is_zero() {
            continue;
        }
        c[k - 1] -= &t * coef(2);
        c[k - 2] -= &t * coef(1);
        c[k - 3] -= &t * coef(0);
    }
    [c[0].clone(), c[1].clone(), c[2].clone()]
}

/// Structure constants `ω_i ω_j = Σ_k t[i][j][k] ω_k`.
pub(crate) type MultTable = [[[BigInt; 3]; 3]; 3];

pub(crate) fn mult_table(f: &IntPolynomial, basis: &OrderBasis) -> Result<MultTable> {
    let unit = |i: usize| -> [BigRat; 3] {
        std::array::from_fn(|k| BigRat::from_integer(BigInt::from(u8::from(i == k))))
    };
    let w: Vec<[BigRat; 3]> = (0..3).map(|i| basis.element(&unit(i))).collect();
    let mut t: MultTable = Default::default();
    for i in 0..3 {
        for j in i..3 {
            let c = basis.coords_of(&mul_power(f, &w[i], &w[j]));
            for k in 0..3 {
                if !c[k].is_integer() {
                    return Err(Error::Inconsistent(format!(
                        "basis of {f} is not closed under multiplication"
                    )));
                }
                t[i][j][k] = c[k].to_integer();
                t[j][i][k] = t[i][j][k].clone();
            }
        }
    }
    Ok(t)
}

/// Structure constants reduced mod p.
pub(crate) struct TableModP {
    pub fp: Fp,
    t: [[[u64; 3]; 3]; 3],
}

impl TableModP {
    pub fn new(t: &MultTable, fp: Fp) -> Self {
        TableModP {
            fp,
            t: std::array::from_fn(|i| {
                std::array::from_fn(|j| std::array::from_fn(|k| fp.reduce(&t[i][j][k])))
            }),
        }
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let fp = self.fp;
        let mut z = vec![0u64; 3];
        for i in 0..3 {
            if x[i] == 0 {
                continue;
            }
            for j in 0..3 {
                if y[j] == 0 {
                    continue;
                }
                let a = fp.mul(x[i], y[j]);
                for (k, zk) in z.iter_mut().enumerate() {
                    *zk = fp.add(*zk, fp.mul(a, self.t[i][j][k]));
                }
            }
        }
        z
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = vec![1 % self.fp.p, 0, 0];
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Smallest power of p that is at least 3, so `x ↦ x^q` kills the radical.
    pub fn frobenius_exponent(&self) -> u64 {
        let mut q = self.fp.p;
        while q < 3 {
            q *= self.fp.p;
        }
        q
    }

    /// The p-radical of O/pO: kernel of `x ↦ x^q`, as basis vectors.
    pub fn radical(&self) -> Vec<Vec<u64>> {
        let q = self.frobenius_exponent();
        let rows: Vec<Vec<u64>> = (0..3).map(|i| self.pow(&unit_u64(i), q)).collect();
        self.fp.left_kernel(&rows)
    }
}

pub(crate) fn unit_u64(i: usize) -> Vec<u64> {
    (0..3).map(|k| u64::from(i == k)).collect()
}

fn lift(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Coordinates of `w` over a lower-triangular integer basis `v` (rows).
fn solve_lower(v: &[Vec<BigInt>], w: &[BigInt]) -> Vec<BigInt> {
    let mut w = w.to_vec();
    let mut x = vec![BigInt::zero(); 3];
    for j in (0..3).rev() {
        let (q, r) = w[j].div_rem(&v[j][j]);
        debug_assert!(r.is_zero(), "vector outside the lattice");
        for (wk, vk) in w.iter_mut().zip(&v[j]) {
            *wk -= &q * vk;
        }
        x[j] = q;
    }
    x
}

fn int_mul(t: &MultTable, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let mut z = vec![BigInt::zero(); 3];
    for i in 0..3 {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            if y[j].is_zero() {
                continue;
            }
            let a = &x[i] * &y[j];
            for (k, zk) in z.iter_mut().enumerate() {
                *zk += &a * &t[i][j][k];
            }
        }
    }
    z
}

/// One Round-2 step at p: the ring of multipliers of the p-radical, or
/// `None` when the order is already p-maximal.
fn enlarge_at(f: &IntPolynomial, basis: &OrderBasis, fp: Fp) -> Result<Option<OrderBasis>> {
    let t = mult_table(f, basis)?;
    let tp = TableModP::new(&t, fp);
    let p = BigInt::from(fp.p);
    let gens = tp
        .radical()
        .into_iter()
        .map(|v| lift(&v))
        .chain((0..3).map(|i| {
            let mut e = vec![BigInt::zero(); 3];
            e[i] = p.clone();
            e
        }));
    let ip = hnf_basis(3, gens);
    // α ↦ (β ↦ αβ mod p I_p) on O/pO; its kernel is U/pO with U = p·O'
    let rows: Vec<Vec<u64>> = (0..3)
        .map(|i| {
            let mut e = vec![BigInt::zero(); 3];
            e[i] = BigInt::one();
            ip.iter()
                .flat_map(|v| {
                    solve_lower(&ip, &int_mul(&t, &e, v))
                        .into_iter()
                        .map(|c| fp.reduce(&c))
                })
                .collect()
        })
        .collect();
    let ker = fp.left_kernel(&rows);
    if ker.is_empty() {
        return Ok(None);
    }
    let pr = BigRat::from_integer(p.clone());
    let mut new_rows: Vec<[BigRat; 3]> = (0..3)
        .map(|i| std::array::from_fn(|j| BigRat::new(basis.num[i][j].clone(), basis.den.clone())))
        .collect();
    for k in &ker {
        let u: [BigRat; 3] =
            std::array::from_fn(|i| BigRat::from_integer(BigInt::from(k[i])) / &pr);
        new_rows.push(basis.element(&u));
    }
    Ok(Some(OrderBasis::from_rational_rows(&new_rows)))
}

/// Enlarges `basis` until it is p-maximal.
pub(crate) fn p_maximize(f: &IntPolynomial, mut basis: OrderBasis, fp: Fp) -> Result<OrderBasis> {
    while let Some(b) = enlarge_at(f, &basis, fp)? {
        basis = b;
    }
    Ok(basis)
}

/// `v_p([O_max : Z[θ]])` for a monic squarefree cubic, reducible or not.
pub fn p_maximal_index_valuation(f: &IntPolynomial, p: &BigInt) -> Result<u32> {
    f.require_monic_cubic()?;
    let d = poly_disc(f)?;
    if d.is_zero() {
        return Err(Error::Inconsistent(format!("{f} is not squarefree")));
    }
    if crate::exact_arith::valuation(&d, p) < 2 {
        return Ok(0);
    }
    let b = p_maximize(f, OrderBasis::equation_order(), Fp::from_big(p)?)?;
    Ok(crate::exact_arith::valuation(&b.index(), p))
}

/// Maximal order basis together with the factorization of `|disc F|`.
pub(crate) fn maximal_order(
    f: &IntPolynomial,
    disc: &BigInt,
) -> Result<(OrderBasis, Vec<(BigInt, u32)>)> {
    let fac = factor_integer(disc)?;
    let mut basis = OrderBasis::equation_order();
    for (p, e) in &fac {
        if *e >= 2 {
            basis = p_maximize(f, basis, Fp::from_big(p)?)?;
        }
    }
    debug_assert!(basis.num[0][0] == basis.den && basis.den.is_positive());
    Ok((basis, fac))
}
