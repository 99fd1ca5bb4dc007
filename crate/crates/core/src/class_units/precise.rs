//! Minkowski coordinates in fixed point, for elements whose coordinates
//! are far larger than f64 can resolve against their small embeddings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cubic_field::{CubicField, OrderCoords};
use crate::exact_arith::BigRat;

/// `rows[j][t] ≈ m_t(ω_j) · 2^bits`, with an error below one unit.
#[derive(Clone, Debug)]
pub(crate) struct PreciseMinkowski {
    bits: u32,
    rows: [[BigInt; 3]; 3],
}

fn round_shift(x: &BigInt, s: u32) -> BigInt {
    (x + (BigInt::one() << s >> 1)) >> s
}

fn fixed_of(q: &BigRat, bits: u32) -> BigInt {
    (q.numer() << bits).div_floor(q.denom())
}

impl PreciseMinkowski {
    pub fn new(k: &CubicField, bits: u32) -> Self {
        // internal guard bits absorb the rounding of products
        let g = bits + 64;
        let mul = |a: &BigInt, b: &BigInt| round_shift(&(a * b), g);
        let width = BigRat::new(BigInt::one(), BigInt::one() << (g + 8));
        let roots: Vec<BigInt> = k
            .real_roots()
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.refine(&width);
                fixed_of(&r.midpoint(), g)
            })
            .collect();
        let basis = k.integral_basis();
        let den = &basis.den;
        let eval_real = |j: usize, x: &BigInt| -> BigInt {
            let c = &basis.num[j];
            let v = (&c[0] << g) + &c[1] * x + &c[2] * mul(x, x);
            v / den
        };
        let mut rows: [[BigInt; 3]; 3] = Default::default();
        if roots.len() == 3 {
            for (j, row) in rows.iter_mut().enumerate() {
                for (t, r) in roots.iter().enumerate() {
                    row[t] = round_shift(&eval_real(j, r), 64);
                }
            }
        } else {
            // F = (x - r)(x^2 + (r + a2) x + (r^2 + a2 r + a1))
            let r = &roots[0];
            let a2 = k.poly().coeff(2) << g;
            let a1 = k.poly().coeff(1) << g;
            let b = r + &a2;
            let c = mul(r, r) + mul(&a2, r) + a1;
            let re = -&b / 2;
            let im2 = &c - mul(&re, &re);
            let im = (im2.max(BigInt::zero()) << g).sqrt();
            let sqrt2 = (BigInt::from(2) << (2 * g)).sqrt();
            let (z2r, z2i) = (mul(&re, &re) - mul(&im, &im), 2 * mul(&re, &im));
            for (j, row) in rows.iter_mut().enumerate() {
                let n = &basis.num[j];
                row[0] = round_shift(&(eval_real(j, r)), 64);
                let vr = ((&n[0] << g) + &n[1] * &re + &n[2] * &z2r) / den;
                let vi = (&n[1] * &im + &n[2] * &z2i) / den;
                row[1] = round_shift(&mul(&sqrt2, &vr), 64);
                row[2] = round_shift(&mul(&sqrt2, &vi), 64);
            }
        }
        PreciseMinkowski { bits, rows }
    }

    /// `m(x)` scaled by `2^bits`, exact up to `Σ|x_j|` units.
    pub fn fixed(&self, x: &OrderCoords) -> [BigInt; 3] {
        std::array::from_fn(|t| {
            (0..3).fold(BigInt::zero(), |acc, j| acc + &x[j] * &self.rows[j][t])
        })
    }

    /// `m_t(x) · 2^{s_t}` as f64.
    pub fn scaled(&self, x: &OrderCoords, s: &[i32; 3]) -> [f64; 3] {
        let v = self.fixed(x);
        std::array::from_fn(|t| to_f64_scaled(&v[t], s[t] - self.bits as i32))
    }
}

/// `x · 2^e` as f64 without overflowing on the way.
fn to_f64_scaled(x: &BigInt, e: i32) -> f64 {
    let bits = x.bits() as i32;
    if bits <= 60 {
        return x.to_f64().unwrap_or(0.0) * 2f64.powi(e);
    }
    let drop = bits - 60;
    (x >> drop as u32).to_f64().unwrap_or(0.0) * 2f64.powi(e + drop)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::IntPolynomial;

    #[test]
    fn agrees_with_f64_embeddings() {
        for c in [[3i64, -7, 0, 1], [3, 1, 0, 1], [169, -54, -1, 1]] {
            let k = CubicField::new(&IntPolynomial::from_i64(&c)).unwrap();
            let pm = PreciseMinkowski::new(&k, 200);
            for x in [[1i64, 0, 0], [0, 1, 0], [2, -3, 5]] {
                let x = x.map(BigInt::from);
                let m = k.minkowski_coords(&x.clone().map(BigRat::from_integer));
                let p = pm.scaled(&x, &[0, 0, 0]);
                for t in 0..3 {
                    assert!(
                        (m[t] - p[t]).abs() < 1e-9 * (1.0 + m[t].abs()),
                        "{c:?} {x:?} {m:?} {p:?}"
                    );
                }
            }
        }
    }
}
