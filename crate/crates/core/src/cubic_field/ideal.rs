//! Fractional ideals of the maximal order in Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::mat3::{inv3, matmul, transpose, Mat3};
use super::{CubicField, FieldElement, OrderCoords};
use crate::error::{Error, Result};
use crate::exact_arith::lattice::hnf_basis;
use crate::exact_arith::BigRat;

/// `(1/den) · L` where `L ⊆ O` has the lower-triangular Hermite basis
/// `rows` over the integral basis. Canonical, so equality of ideals is
/// equality of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealHnf {
    rows: [[BigInt; 3]; 3],
    den: BigInt,
}

impl IdealHnf {
    pub fn unit() -> Self {
        let rows = std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from(u8::from(i == j))));
        IdealHnf {
            rows,
            den: BigInt::one(),
        }
    }

    /// Z-span of rational vectors over the integral basis; `None` unless the
    /// span has full rank.
    pub fn from_rational_rows(vecs: &[[BigRat; 3]]) -> Option<Self> {
        let den = vecs
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let d = BigRat::from_integer(den.clone());
        let ints = vecs
            .iter()
            .map(|v| v.iter().map(|c| (c * &d).to_integer()).collect::<Vec<_>>());
        Self::from_int_rows(ints, den)
    }

    pub(crate) fn from_int_rows(
        ints: impl IntoIterator<Item = Vec<BigInt>>,
        den: BigInt,
    ) -> Option<Self> {
        let h = hnf_basis(3, ints);
        if h.len() != 3 {
            return None;
        }
        let g = h.iter().flatten().fold(den.clone(), |acc, x| acc.gcd(x));
        Some(IdealHnf {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| &h[i][j] / &g)),
            den: den / &g,
        })
    }

    pub fn rows(&self) -> &[[BigInt; 3]; 3] {
        &self.rows
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_unit(&self) -> bool {
        *self == IdealHnf::unit()
    }

    /// Basis vectors as rational coordinates.
    pub fn basis(&self) -> Vec<[BigRat; 3]> {
        self.rows
            .iter()
            .map(|r| std::array::from_fn(|j| BigRat::new(r[j].clone(), self.den.clone())))
            .collect()
    }

    /// Absolute norm `[O : I]` (a rational number for fractional ideals).
    pub fn norm(&self) -> BigRat {
        let d: BigInt = (0..3).map(|i| self.rows[i][i].clone()).product();
        BigRat::new(d, self.den.pow(3))
    }

    /// Integer norm of an integral ideal.
    pub fn norm_int(&self) -> BigInt {
        debug_assert!(self.is_integral());
        (0..3).map(|i| self.rows[i][i].clone()).product()
    }

    /// Positive generator of `I ∩ Z` for an integral ideal.
    pub fn min_integer(&self) -> BigInt {
        debug_assert!(self.is_integral());
        self.rows[0][0].clone()
    }

    /// Membership of an element given over the integral basis.
    pub fn contains_coords(&self, x: &[BigRat; 3]) -> bool {
        let mut v: Vec<BigRat> = x
            .iter()
            .map(|c| c * BigRat::from_integer(self.den.clone()))
            .collect();
        for j in (0..3).rev() {
            let q = &v[j] / BigRat::from_integer(self.rows[j][j].clone());
            if !q.is_integer() {
                return false;
            }
            for (vk, rk) in v.iter_mut().zip(&self.rows[j]) {
                *vk -= &q * BigRat::from_integer(rk.clone());
            }
        }
        true
    }

    /// Reduces an integral vector modulo an integral ideal.
    pub fn reduce(&self, x: &OrderCoords) -> OrderCoords {
        debug_assert!(self.is_integral());
        let mut v = x.clone();
        for j in (0..3).rev() {
            let q = v[j].div_floor(&self.rows[j][j]);
            if !q.is_zero() {
                for (vk, rk) in v.iter_mut().zip(&self.rows[j]) {
                    *vk -= &q * rk;
                }
            }
        }
        v
    }

    pub fn scale(&self, q: &BigRat) -> Self {
        let s = self
            .basis()
            .iter()
            .map(|b| b.clone().map(|c| c * q))
            .collect::<Vec<_>>();
        Self::from_rational_rows(&s).expect("nonzero scalar")
    }
}

impl fmt::Display for IdealHnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.rows;
        write!(
            f,
            "[[{}], [{}, {}], [{}, {}, {}]]",
            r[0][0], r[1][0], r[1][1], r[2][0], r[2][1], r[2][2]
        )?;
        if !self.den.is_one() {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl CubicField {
    /// `(a)`; errors on zero.
    pub fn principal_ideal(&self, a: &FieldElement) -> Result<IdealHnf> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let x = self.basis_coords(a);
        let gens: Vec<[BigRat; 3]> = (0..3)
            .map(|i| self.mul_basis_rat(&x, &self.unit_coords(i).map(BigRat::from_integer)))
            .collect();
        Ok(IdealHnf::from_rational_rows(&gens).expect("nonzero element generates a full lattice"))
    }

    /// Ideal generated by the given elements (at least one nonzero).
    pub fn ideal_from_generators(&self, gens: &[FieldElement]) -> Result<IdealHnf> {
        let mut vecs = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let x = self.basis_coords(g);
            for i in 0..3 {
                vecs.push(self.mul_basis_rat(&x, &self.unit_coords(i).map(BigRat::from_integer)));
            }
        }
        IdealHnf::from_rational_rows(&vecs).ok_or(Error::ZeroElement)
    }

    pub fn ideal_mul(&self, a: &IdealHnf, b: &IdealHnf) -> IdealHnf {
        let mut ints = Vec::with_capacity(9);
        for r in a.rows() {
            for s in b.rows() {
                ints.push(self.mul_int(r, s).to_vec());
            }
        }
        IdealHnf::from_int_rows(ints, a.denominator() * b.denominator())
            .expect("product of nonzero ideals")
    }

    pub fn ideal_add(&self, a: &IdealHnf, b: &IdealHnf) -> IdealHnf {
        let mut v = a.basis();
        v.extend(b.basis());
        IdealHnf::from_rational_rows(&v).expect("sum of nonzero ideals")
    }

    /// Dual lattice `{x : Tr(x·L) ⊆ Z}`.
    fn dual(&self, basis: &[[BigRat; 3]]) -> IdealHnf {
        let b: Mat3 = std::array::from_fn(|i| basis[i].clone());
        let bt_inv = inv3(&transpose(&b)).expect("full-rank lattice");
        let d = matmul(&bt_inv, self.trace_form_inverse());
        IdealHnf::from_rational_rows(&d).expect("dual has full rank")
    }

    /// `I^{-1} = (I · O^∨)^∨` where `∨` is the trace dual.
    pub fn ideal_inverse(&self, a: &IdealHnf) -> IdealHnf {
        let codiff: Vec<[BigRat; 3]> = self.trace_form_inverse().to_vec();
        let mut prods = Vec::with_capacity(9);
        for r in a.basis() {
            for s in &codiff {
                prods.push(self.mul_basis_rat(&r, s));
            }
        }
        let j = IdealHnf::from_rational_rows(&prods).expect("full rank");
        self.dual(&j.basis())
    }

    pub fn ideal_pow(&self, a: &IdealHnf, e: i64) -> IdealHnf {
        let base = if e < 0 {
            self.ideal_inverse(a)
        } else {
            a.clone()
        };
        let mut e = e.unsigned_abs();
        let mut r = IdealHnf::unit();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = self.ideal_mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.ideal_mul(&b, &b);
            }
        }
        r
    }

    pub fn ideal_contains(&self, a: &IdealHnf, x: &FieldElement) -> bool {
        a.contains_coords(&self.basis_coords(x))
    }

    /// Multiplies by the denominator, returning an integral ideal and the
    /// scalar `d` with `I = (1/d)·J`.
    pub fn integral_part(&self, a: &IdealHnf) -> (IdealHnf, BigInt) {
        let d = a.denominator().clone();
        (
            IdealHnf {
                rows: a.rows().clone(),
                den: BigInt::one(),
            },
            d,
        )
    }
}
