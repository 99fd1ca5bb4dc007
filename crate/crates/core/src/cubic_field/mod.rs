//! The cubic field `A = Q[T]/(F)`: maximal order, discriminants, exact
//! element arithmetic, ideals in Hermite form, prime splitting and real
//! embeddings.

mod element;
mod embed;
mod ideal;
pub(crate) mod mat3;
mod order;
mod primes;

pub use element::FieldElement;
pub use ideal::IdealHnf;
pub use order::{p_maximal_index_valuation, OrderBasis};
pub use primes::PrimeIdeal;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{isolate_real_roots, poly_disc, BigRat, IntPolynomial, RootInterval};
use mat3::{det3, inv3, Mat3};
use order::{mul_power, MultTable};

/// Integral element in coordinates over the integral basis.
pub type OrderCoords = [BigInt; 3];

/// An irreducible monic cubic together with its maximal order.
#[derive(Clone, Debug)]
pub struct CubicField {
    poly: IntPolynomial,
    poly_disc: BigInt,
    field_disc: BigInt,
    index: BigInt,
    basis: OrderBasis,
    mult: MultTable,
    mult_small: Option<[[[i64; 3]; 3]; 3]>,
    trace_inv: Mat3,
    disc_factors: Vec<(BigInt, u32)>,
    real_roots: Vec<RootInterval>,
    real_approx: Vec<f64>,
    complex_approx: Option<(f64, f64)>,
}

/// Integer root of a monic cubic, if any.
pub fn rational_root(f: &IntPolynomial) -> Option<BigInt> {
    if f.coeff(0).is_zero() {
        return Some(BigInt::zero());
    }
    let roots = isolate_real_roots(f, &BigRat::new(BigInt::one(), BigInt::from(4)));
    for r in roots {
        let lo = r.lo.floor().to_integer();
        let hi = r.hi.ceil().to_integer();
        let mut x = lo;
        while x <= hi {
            if f.eval(&x).is_zero() {
                return Some(x);
            }
            x += 1;
        }
    }
    None
}

impl CubicField {
    /// Builds the field of an irreducible monic integer cubic.
    pub fn new(f: &IntPolynomial) -> Result<Self> {
        f.require_monic_cubic()?;
        if let Some(root) = rational_root(f) {
            return Err(Error::RationalTwoTorsion { root });
        }
        let poly_disc = poly_disc(f)?;
        let (basis, disc_factors) = order::maximal_order(f, &poly_disc)?;
        let index = basis.index();
        let (field_disc, rem) = poly_disc.div_rem(&(&index * &index));
        if !rem.is_zero() {
            return Err(Error::Inconsistent(format!(
                "index {index} squared does not divide disc {poly_disc}"
            )));
        }
        let mult = order::mult_table(f, &basis)?;
        let mult_small = small_table(&mult);
        let real_roots = isolate_real_roots(f, &BigRat::new(BigInt::one(), BigInt::one() << 40u32));
        let real_approx: Vec<f64> = real_roots.iter().map(RootInterval::approx).collect();
        let complex_approx = (real_roots.len() == 1).then(|| {
            let rho = real_approx[0];
            let a2 = f.coeff(2).to_f64().unwrap_or(f64::NAN);
            let a1 = f.coeff(1).to_f64().unwrap_or(f64::NAN);
            // F = (x - ρ)(x^2 + p x + q)
            let p = a2 + rho;
            let q = a1 + rho * p;
            (-p / 2.0, (q - p * p / 4.0).max(0.0).sqrt())
        });
        let mut field = CubicField {
            poly: f.clone(),
            poly_disc,
            field_disc,
            index,
            basis,
            mult,
            mult_small,
            trace_inv: std::array::from_fn(|_| std::array::from_fn(|_| BigRat::zero())),
            disc_factors,
            real_roots,
            real_approx,
            complex_approx,
        };
        let tr: Mat3 = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                BigRat::from_integer(
                    field.trace_int(&field.mul_int(&field.unit_coords(i), &field.unit_coords(j))),
                )
            })
        });
        field.trace_inv =
            inv3(&tr).ok_or_else(|| Error::Inconsistent("degenerate trace form".into()))?;
        let tdet = det3(&tr);
        if tdet != BigRat::from_integer(field.field_disc.clone()) {
            return Err(Error::Inconsistent(format!(
                "trace form determinant {tdet} differs from field disc {}",
                field.field_disc
            )));
        }
        Ok(field)
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.poly_disc
    }

    pub fn field_disc(&self) -> &BigInt {
        &self.field_disc
    }

    /// `[O : Z[θ]]`, so that `disc F = index² · field_disc`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn integral_basis(&self) -> &OrderBasis {
        &self.basis
    }

    /// Factorization of `|disc F|`.
    pub fn poly_disc_factors(&self) -> &[(BigInt, u32)] {
        &self.disc_factors
    }

    /// `(r1, r2)`.
    pub fn signature(&self) -> (usize, usize) {
        if self.real_roots.len() == 3 {
            (3, 0)
        } else {
            (1, 1)
        }
    }

    pub fn r1(&self) -> usize {
        self.real_roots.len()
    }

    pub fn unit_rank(&self) -> usize {
        let (r1, r2) = self.signature();
        r1 + r2 - 1
    }

    pub fn real_roots(&self) -> &[RootInterval] {
        &self.real_roots
    }

    pub fn real_root_approx(&self) -> &[f64] {
        &self.real_approx
    }

    /// `(re, im)` of the complex root with positive imaginary part.
    pub fn complex_root_approx(&self) -> Option<(f64, f64)> {
        self.complex_approx
    }

    /// `Tr(ω_i ω_j)^{-1}`: coordinates of the dual basis of the codifferent.
    pub(crate) fn trace_form_inverse(&self) -> &Mat3 {
        &self.trace_inv
    }

    pub(crate) fn mult_table(&self) -> &MultTable {
        &self.mult
    }

    // ---- elements in power coordinates

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement::new(mul_power(&self.poly, a.coords(), b.coords()))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut r = FieldElement::one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// Rows `a·θ^j` of the multiplication-by-`a` matrix in power coordinates.
    fn regular_matrix(&self, a: &FieldElement) -> Mat3 {
        let mut rows: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| BigRat::zero()));
        let mut cur = a.clone();
        for row in rows.iter_mut() {
            *row = cur.coords().clone();
            cur = self.mul(&cur, &FieldElement::theta());
        }
        rows
    }

    pub fn norm(&self, a: &FieldElement) -> BigRat {
        det3(&self.regular_matrix(a))
    }

    pub fn trace(&self, a: &FieldElement) -> BigRat {
        let m = self.regular_matrix(a);
        &m[0][0] + &m[1][1] + &m[2][2]
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        let m = inv3(&self.regular_matrix(a)).ok_or(Error::ZeroElement)?;
        // x with Σ x_j (a θ^j) = 1 is the first row of the inverse
        Ok(FieldElement::new(m[0].clone()))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    // ---- integral coordinates

    pub(crate) fn unit_coords(&self, i: usize) -> OrderCoords {
        std::array::from_fn(|k| BigInt::from(u8::from(i == k)))
    }

    /// Rational coordinates of `a` over the integral basis.
    pub fn basis_coords(&self, a: &FieldElement) -> [BigRat; 3] {
        self.basis.coords_of(a.coords())
    }

    /// Integral coordinates of `a`, or `None` when `a` is not integral.
    pub fn to_order(&self, a: &FieldElement) -> Option<OrderCoords> {
        let c = self.basis_coords(a);
        c.iter()
            .all(|x| x.is_integer())
            .then(|| c.map(|x| x.to_integer()))
    }

    pub fn is_integral(&self, a: &FieldElement) -> bool {
        self.to_order(a).is_some()
    }

    pub fn from_order(&self, x: &OrderCoords) -> FieldElement {
        FieldElement::new(self.basis.element(&x.clone().map(BigRat::from_integer)))
    }

    pub fn from_basis_coords(&self, x: &[BigRat; 3]) -> FieldElement {
        FieldElement::new(self.basis.element(x))
    }

    pub fn mul_int(&self, x: &OrderCoords, y: &OrderCoords) -> OrderCoords {
        let mut z: OrderCoords = Default::default();
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
                    if !self.mult[i][j][k].is_zero() {
                        *zk += &a * &self.mult[i][j][k];
                    }
                }
            }
        }
        z
    }

    pub(crate) fn mul_basis_rat(&self, x: &[BigRat; 3], y: &[BigRat; 3]) -> [BigRat; 3] {
        let mut z: [BigRat; 3] = std::array::from_fn(|_| BigRat::zero());
        for i in 0..3 {
            for j in 0..3 {
                let a = &x[i] * &y[j];
                if a.is_zero() {
                    continue;
                }
                for (k, zk) in z.iter_mut().enumerate() {
                    *zk += &a * BigRat::from_integer(self.mult[i][j][k].clone());
                }
            }
        }
        z
    }

    fn int_regular(&self, x: &OrderCoords) -> [[BigInt; 3]; 3] {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                (0..3).fold(BigInt::zero(), |acc, i| acc + &x[i] * &self.mult[i][j][k])
            })
        })
    }

    pub fn norm_int(&self, x: &OrderCoords) -> BigInt {
        let m = self.int_regular(x);
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn trace_int(&self, x: &OrderCoords) -> BigInt {
        let m = self.int_regular(x);
        &m[0][0] + &m[1][1] + &m[2][2]
    }

    /// Norm of a small integral element with overflow checking.
    pub fn norm_small(&self, x: &[i64; 3]) -> Option<i128> {
        let t = self.mult_small.as_ref()?;
        let mut m = [[0i128; 3]; 3];
        for (j, row) in m.iter_mut().enumerate() {
            for (k, e) in row.iter_mut().enumerate() {
                let mut s = 0i128;
                for (i, &xi) in x.iter().enumerate() {
                    s = s.checked_add((xi as i128).checked_mul(t[i][j][k] as i128)?)?;
                }
                *e = s;
            }
        }
        let minor =
            |a: i128, b: i128, c: i128, d: i128| a.checked_mul(b)?.checked_sub(c.checked_mul(d)?);
        let c0 = m[0][0].checked_mul(minor(m[1][1], m[2][2], m[1][2], m[2][1])?)?;
        let c1 = m[0][1].checked_mul(minor(m[1][0], m[2][2], m[1][2], m[2][0])?)?;
        let c2 = m[0][2].checked_mul(minor(m[1][0], m[2][1], m[1][1], m[2][0])?)?;
        c0.checked_sub(c1)?.checked_add(c2)
    }

    /// Product of small integral elements, `None` on overflow.
    pub fn mul_small(&self, x: &[i64; 3], y: &[i64; 3]) -> Option<[i64; 3]> {
        let t = self.mult_small.as_ref()?;
        let mut z = [0i128; 3];
        for i in 0..3 {
            for j in 0..3 {
                let a = (x[i] as i128).checked_mul(y[j] as i128)?;
                if a == 0 {
                    continue;
                }
                for k in 0..3 {
                    z[k] = z[k].checked_add(a.checked_mul(t[i][j][k] as i128)?)?;
                }
            }
        }
        Some([
            i64::try_from(z[0]).ok()?,
            i64::try_from(z[1]).ok()?,
            i64::try_from(z[2]).ok()?,
        ])
    }
}

fn small_table(t: &MultTable) -> Option<[[[i64; 3]; 3]; 3]> {
    let mut out = [[[0i64; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let v = t[i][j][k].to_i64()?;
                if v.abs() > 1 << 40 {
                    return None;
                }
                out[i][j][k] = v;
            }
        }
    }
    Some(out)
}
