//! The 2-Selmer rank interval `[dim C_*, dim C_* + 1]` over Q, its
//! refinement by the root number, and lower-bound witnesses from rational
//! points through the Kummer map `P ↦ x(P) − θ`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cubic_field::FieldElement;
use crate::curve_local::{CurveModel, ReductionType};
use crate::error::{Error, Result};
use crate::exact_arith::modp::{Fp, Subspace};
use crate::exact_arith::BigRat;
use crate::star_class::{SquareClass, StarClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    UserSupplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootNumber {
    pub value: i8,
    pub provenance: Provenance,
}

/// Whether the inputs behind the interval were proved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub class_group: bool,
    pub fundamental_units: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelmerReport {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    pub root_number: Option<RootNumber>,
    /// Rank of the Kummer images of searched points, when a search ran.
    pub certified_points_rank: Option<usize>,
    pub certification: Certification,
}

/// `dim Cl_*[2] ≤ dim Sel_2(E) ≤ dim Cl_*[2] + 1` for a curve satisfying
/// the hypotheses, where `star` is built for its distinguished place.
pub fn selmer_rank_bounds(e: &CurveModel, star: &StarClass) -> Result<SelmerReport> {
    let hyp = e.hypotheses_check()?;
    if let Some(reason) = hyp.failure() {
        return Err(Error::HypothesesFailed(reason));
    }
    Ok(bounds_from_star(star))
}

/// The interval alone, without re-checking hypotheses.
pub fn bounds_from_star(star: &StarClass) -> SelmerReport {
    let lower = star.star_class_group().two_rank();
    let cu = star.class_units();
    SelmerReport {
        lower,
        upper: lower + 1,
        exact: None,
        root_number: None,
        certified_points_rank: None,
        certification: Certification {
            class_group: cu.is_certified(),
            fundamental_units: cu.unit_group().fundamental_certified(),
        },
    }
}

/// The global root number. Without an override it is computed as
/// `-∏ w_p` when every bad prime is multiplicative (`w_p = -1` for split,
/// `+1` for nonsplit); additive reduction needs the override.
pub fn root_number(e: &CurveModel, user: Option<i8>) -> Result<RootNumber> {
    if let Some(value) = user {
        if value != 1 && value != -1 {
            return Err(Error::Usage(format!(
                "root number must be +1 or -1, got {value}"
            )));
        }
        return Ok(RootNumber {
            value,
            provenance: Provenance::UserSupplied,
        });
    }
    let mut value = -1i8;
    for l in e.bad_reduction()? {
        match l.reduction {
            ReductionType::SplitMultiplicative => value = -value,
            ReductionType::NonsplitMultiplicative | ReductionType::Good => {}
            ReductionType::Additive => return Err(Error::RootNumberRequiresOverride(l.p)),
        }
    }
    Ok(RootNumber {
        value,
        provenance: Provenance::Computed,
    })
}

/// Picks the endpoint whose parity matches the root number.
pub fn selmer_rank_exact(mut report: SelmerReport, root: RootNumber) -> Result<SelmerReport> {
    let parity = |n: usize| if n.is_multiple_of(2) { 1 } else { -1 };
    let exact = [report.lower, report.upper]
        .into_iter()
        .find(|&n| parity(n) == root.value)
        .ok_or_else(|| {
            Error::Inconsistent(format!(
                "no rank in [{}, {}] has root number {}",
                report.lower, report.upper, root.value
            ))
        })?;
    report.exact = Some(exact);
    report.root_number = Some(root);
    Ok(report)
}

/// A rational point on `y^2 = F(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine { x: BigRat, y: BigRat },
}

impl Point {
    pub fn affine(x: BigRat, y: BigRat) -> Self {
        Point::Affine { x, y }
    }

    /// Height proxy: `max(|num x|, den x)`.
    pub fn naive_height(&self) -> BigInt {
        match self {
            Point::Infinity => BigInt::zero(),
            Point::Affine { x, .. } => x.numer().abs().max(x.denom().clone()),
        }
    }
}

/// Class of `x(P) − θ` in `A^×/(A^×)^2`, for a curve `y^2 = F(x)` with `F`
/// the defining polynomial of `star`'s field. The point at infinity maps to
/// the trivial class.
pub fn kummer_class(star: &mut StarClass, p: &Point) -> Result<SquareClass> {
    let alpha = match p {
        Point::Infinity => FieldElement::one(),
        Point::Affine { x, .. } => FieldElement::new([
            x.clone(),
            BigRat::from_integer(BigInt::from(-1)),
            BigRat::zero(),
        ]),
    };
    star.square_class(&alpha)
}

/// Points `(a/b^2, c/b^3)` with `|a| ≤ bound`, `1 ≤ b ≤ bound` and
/// `gcd(a, b) = 1`, one per pair `±y`, ordered by `b` then `a`.
pub fn point_search(e: &CurveModel, bound: u64) -> Vec<Point> {
    let f = e.cubic();
    let small: Option<[i128; 3]> = (|| {
        Some([
            f.coeff(2).to_i128()?,
            f.coeff(1).to_i128()?,
            f.coeff(0).to_i128()?,
        ])
    })();
    let bound = bound as i128;
    let mut out = Vec::new();
    for b in 1..=bound {
        let b2 = b * b;
        for a in -bound..=bound {
            if a.gcd(&b) != 1 {
                continue;
            }
            // b^6 F(a / b^2)
            let root = match small.and_then(|c| homogeneous_i128(&c, a, b2)) {
                Some(v) if v < 0 => None,
                Some(v) => Some(v.sqrt()).filter(|r| r * r == v).map(BigInt::from),
                None => {
                    let v = f.eval_homogeneous(&BigInt::from(a), &BigInt::from(b2));
                    Some(v.sqrt()).filter(|r| !v.is_negative() && r * r == v)
                }
            };
            if let Some(r) = root {
                let x = BigRat::new(BigInt::from(a), BigInt::from(b2));
                let y = BigRat::new(r, BigInt::from(b2 * b));
                out.push(Point::affine(x, y));
            }
        }
    }
    out
}

fn homogeneous_i128(c: &[i128; 3], a: i128, b2: i128) -> Option<i128> {
    let b4 = b2.checked_mul(b2)?;
    let b6 = b4.checked_mul(b2)?;
    let a2 = a.checked_mul(a)?;
    a2.checked_mul(a)?
        .checked_add(c[0].checked_mul(a2)?.checked_mul(b2)?)?
        .checked_add(c[1].checked_mul(a)?.checked_mul(b4)?)?
        .checked_add(c[2].checked_mul(b6)?)
}

/// F2-rank of the Kummer classes of `points`, checking that each lies in
/// `C̃(E)`.
pub fn certified_rank(star: &mut StarClass, points: &[Point]) -> Result<usize> {
    let n = star.even_classes_dim();
    let mut span = Subspace::zero(Fp::new(2), n);
    for p in points {
        let class = kummer_class(star, p)?;
        if !star.in_c_tilde(&class) {
            return Err(Error::Inconsistent(format!(
                "Kummer class of {p:?} is outside C̃"
            )));
        }
        span.add(class.coordinates.expect("classes in C̃ have coordinates"));
    }
    Ok(span.rank())
}

#[cfg(test)]
mod tests;
