//! Elements of `A = Q[T]/(F)` in power-basis coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact_arith::BigRat;

/// `c0 + c1·θ + c2·θ²` with exact rational coordinates. Multiplication
/// needs the defining cubic and lives on [`super::CubicField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: [BigRat; 3],
}

impl FieldElement {
    pub fn new(coords: [BigRat; 3]) -> Self {
        FieldElement { coords }
    }

    pub fn from_ints(c: [BigInt; 3]) -> Self {
        FieldElement {
            coords: c.map(BigRat::from_integer),
        }
    }

    pub fn from_i64s(c: [i64; 3]) -> Self {
        FieldElement::from_ints(c.map(BigInt::from))
    }

    pub fn rational(q: BigRat) -> Self {
        FieldElement {
            coords: [q, BigRat::zero(), BigRat::zero()],
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        FieldElement::rational(BigRat::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        FieldElement::integer(0)
    }

    pub fn one() -> Self {
        FieldElement::integer(1)
    }

    pub fn theta() -> Self {
        FieldElement::from_i64s([0, 1, 0])
    }

    pub fn coords(&self) -> &[BigRat; 3] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1].is_zero() && self.coords[2].is_zero()
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn scale(&self, q: &BigRat) -> Self {
        FieldElement {
            coords: [
                &self.coords[0] * q,
                &self.coords[1] * q,
                &self.coords[2] * q,
            ],
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            coords: [
                &self.coords[0] + &o.coords[0],
                &self.coords[1] + &o.coords[1],
                &self.coords[2] + &o.coords[2],
            ],
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            coords: [
                &self.coords[0] - &o.coords[0],
                &self.coords[1] - &o.coords[1],
                &self.coords[2] - &o.coords[2],
            ],
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            coords: [-&self.coords[0], -&self.coords[1], -&self.coords[2]],
        }
    }
}

impl Mul<&BigRat> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, q: &BigRat) -> FieldElement {
        self.scale(q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "T", "T^2"];
        let mut wrote = false;
        for (c, name) in self.coords.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRat::zero();
            let a = if neg { -c } else { c.clone() };
            if wrote {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (a.is_one(), name.is_empty()) {
                (true, false) => write!(f, "{name}")?,
                (_, true) => write!(f, "{a}")?,
                (false, false) if a.is_integer() => write!(f, "{a}*{name}")?,
                (false, false) => write!(f, "({a})*{name}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
