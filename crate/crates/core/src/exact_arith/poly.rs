use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::BigRat;
use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients in ascending degree order.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients and `degree()` reports 0 for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^3 + a2 x^2 + a1 x + a0`.
    pub fn monic_cubic(
        a2: impl Into<BigInt>,
        a1: impl Into<BigInt>,
        a0: impl Into<BigInt>,
    ) -> Self {
        Self::new(vec![a0.into(), a1.into(), a2.into(), BigInt::one()])
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Checks the shape every public cubic entry point requires.
    pub fn require_monic_cubic(&self) -> Result<()> {
        if self.degree() != 3 || !self.is_monic() {
            return Err(Error::NotMonicCubic {
                degree: self.degree(),
                leading: self.leading(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRat::from_integer(c.clone());
        }
        acc
    }

    /// Homogenised value `b^deg * F(a/b)`.
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        // sum c_i a^i b^(n-i), built from the top coefficient down
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `F(x + r)`.
    pub fn shift(&self, r: &BigInt) -> Self {
        let mut out = Self::zero();
        let lin = Self::new(vec![r.clone(), BigInt::one()]);
        for c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &Self::new(vec![c.clone()]);
        }
        out
    }

    /// `F(s x)`.
    pub fn scale_arg(&self, s: &BigInt) -> Self {
        let mut pw = BigInt::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            v.push(c * &pw);
            pw *= s;
        }
        Self::new(v)
    }

    /// Exact division by an integer; `None` when some coefficient is not divisible.
    pub fn div_exact_scalar(&self, d: &BigInt) -> Option<Self> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            v.push(q);
        }
        Some(Self::new(v))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Division with remainder by a monic polynomial.
    pub fn div_rem_monic(&self, m: &Self) -> (Self, Self) {
        assert!(m.is_monic(), "divisor must be monic");
        let dm = m.degree();
        if self.is_zero() || self.degree() < dm {
            return (Self::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - dm + 1];
        for i in (dm..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            q[i - dm] = c.clone();
            for (j, mc) in m.coeffs.iter().enumerate() {
                r[i - dm + j] -= &c * mc;
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }
}

/// Discriminant of a monic cubic `x^3 + a x^2 + b x + c`.
pub fn poly_disc(f: &IntPolynomial) -> Result<BigInt> {
    f.require_monic_cubic()?;
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let d = &a * &a * &b * &b
        - BigInt::from(4) * &b * &b * &b
        - BigInt::from(4) * &a * &a * &a * &c
        - BigInt::from(27) * &c * &c
        + BigInt::from(18) * &a * &b * &c;
    Ok(d)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Vec<String> {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = String;
    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        let coeffs = v
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|e| format!("bad coefficient {s:?}: {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(a2: i64, a1: i64, a0: i64) -> IntPolynomial {
        IntPolynomial::monic_cubic(a2, a1, a0)
    }

    #[test]
    fn discriminants_of_fixture_cubics() {
        assert_eq!(
            poly_disc(&cubic(-1, -54, 169)).unwrap(),
            BigInt::from(26569)
        );
        assert_eq!(poly_disc(&cubic(0, -7, 3)).unwrap(), BigInt::from(1129));
        assert_eq!(poly_disc(&cubic(0, 1, 3)).unwrap(), BigInt::from(-247));
        assert_eq!(poly_disc(&cubic(0, -1, 0)).unwrap(), BigInt::from(4));
    }

    #[test]
    fn disc_rejects_bad_shapes() {
        assert!(poly_disc(&IntPolynomial::from_i64(&[1, 0, 1])).is_err());
        assert!(poly_disc(&IntPolynomial::from_i64(&[1, 0, 0, 2])).is_err());
    }

    #[test]
    fn depressed_cubic_formula() {
        for p in -6i64..=6 {
            for q in -6i64..=6 {
                let expect = -4 * p * p * p - 27 * q * q;
                assert_eq!(poly_disc(&cubic(0, p, q)).unwrap(), BigInt::from(expect));
            }
        }
    }

    #[test]
    fn shift_and_scale() {
        let f = cubic(0, -7, 3);
        let g = f.shift(&BigInt::from(2));
        for x in -5i64..5 {
            assert_eq!(g.eval(&BigInt::from(x)), f.eval(&BigInt::from(x + 2)));
        }
        let h = f.scale_arg(&BigInt::from(3));
        assert_eq!(h.eval(&BigInt::from(2)), f.eval(&BigInt::from(6)));
    }

    #[test]
    fn display_round_trip_shape() {
        assert_eq!(cubic(-1, -54, 169).to_string(), "x^3 - x^2 - 54*x + 169");
        assert_eq!(cubic(0, -7, 3).to_string(), "x^3 - 7*x + 3");
    }

    #[test]
    fn division_by_monic() {
        let f = cubic(0, -7, 3);
        let m = IntPolynomial::from_i64(&[-1, 1]);
        let (q, r) = f.div_rem_monic(&m);
        assert_eq!(&(&q * &m) + &r, f);
        assert_eq!(r, IntPolynomial::from_i64(&[-3]));
    }
}
