//! Elliptic curves `y^2 = F(x)` over Q with `F` a monic integer cubic:
//! local reduction data, conductors, the local conditions (†.i)–(†.iv)
//! and the valuations of the Kummer image at a prime.

mod tate;

pub use tate::{Kodaira, LocalReduction, ReductionType, Weierstrass};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cubic_field::{p_maximal_index_valuation, rational_root};
use crate::error::{Error, Result};
use crate::exact_arith::{
    cubic_factorization_mod_p, factor_integer, local_factorization_auto, poly_disc, valuation,
    BigRat, IntPolynomial, LocalFactorization, LocalShape,
};

/// The curve `y^2 = F(x)` for a monic integer cubic `F` with nonzero
/// discriminant. General Weierstrass models are not accepted: rescaling
/// changes the local conditions at 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    cubic: IntPolynomial,
    disc: BigInt,
    label: Option<String>,
}

impl CurveModel {
    pub fn new(cubic: IntPolynomial) -> Result<Self> {
        let disc_f = poly_disc(&cubic)?;
        if disc_f.is_zero() {
            return Err(Error::Inconsistent(format!("{cubic} has a repeated root")));
        }
        Ok(CurveModel {
            cubic,
            disc: disc_f * 16,
            label: None,
        })
    }

    /// `y^2 = x^3 + a2 x^2 + a1 x + a0`.
    pub fn from_coeffs(
        a2: impl Into<BigInt>,
        a1: impl Into<BigInt>,
        a0: impl Into<BigInt>,
    ) -> Result<Self> {
        Self::new(IntPolynomial::monic_cubic(a2, a1, a0))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn cubic(&self) -> &IntPolynomial {
        &self.cubic
    }

    /// `[a2, a1, a0]`.
    pub fn coeffs(&self) -> [BigInt; 3] {
        [
            self.cubic.coeff(2),
            self.cubic.coeff(1),
            self.cubic.coeff(0),
        ]
    }

    /// Discriminant of the model, `16 · disc(F)`.
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn disc_f(&self) -> BigInt {
        &self.disc / 16
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn weierstrass(&self) -> Weierstrass {
        let [a2, a1, a0] = self.coeffs();
        Weierstrass([BigInt::zero(), a2, BigInt::zero(), a1, a0])
    }

    /// `y^2 = d^3 F(x/d)`, expanded. No condition on `d` beyond `d ≠ 0`.
    pub fn twist(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidTwist(d.clone()));
        }
        let [a2, a1, a0] = self.coeffs();
        Self::new(IntPolynomial::monic_cubic(
            d * a2,
            d * d * a1,
            d * d * d * a0,
        ))
    }

    /// Whether `F` has a rational root, i.e. `E(Q)[2] ≠ 0`.
    pub fn rational_two_torsion(&self) -> Option<BigInt> {
        rational_root(&self.cubic)
    }

    /// Primes dividing the model discriminant. Always contains 2.
    pub fn bad_primes(&self) -> Result<Vec<BigInt>> {
        Ok(factor_integer(&self.disc)?
            .into_iter()
            .map(|(p, _)| p)
            .collect())
    }

    /// Tate's algorithm at `p`, run on a model minimal at `p`.
    pub fn local_reduction(&self, p: &BigInt) -> LocalReduction {
        tate::tate(&mut self.weierstrass(), p)
    }

    /// Local data at every prime of bad reduction of the minimal model.
    pub fn bad_reduction(&self) -> Result<Vec<LocalReduction>> {
        Ok(self
            .bad_primes()?
            .iter()
            .map(|p| self.local_reduction(p))
            .filter(|l| l.reduction != ReductionType::Good)
            .collect())
    }

    pub fn conductor(&self) -> Result<BigInt> {
        Ok(self
            .bad_reduction()?
            .iter()
            .fold(BigInt::one(), |n, l| n * l.p.pow(l.f_p)))
    }

    /// Factorization of `F` over `Q_p`.
    pub fn local_factorization(&self, p: &BigInt) -> Result<LocalFactorization> {
        local_factorization_auto(&self.cubic, p, &self.disc_f())
    }

    /// The first of (†.i)–(†.iv) that holds at `p`, with the data for
    /// all four.
    pub fn dagger_check(&self, p: &BigInt) -> Result<DaggerVerdict> {
        let shape = self.local_factorization(p)?.shape;
        let disc_valuation = valuation(&self.disc_f(), p);
        let index_valuation = p_maximal_index_valuation(&self.cubic, p)?;
        let local = self.local_reduction(p);
        let two = BigInt::from(2);
        let case = if shape.is_field() {
            DaggerCase::I
        } else if index_valuation == 0 {
            DaggerCase::II
        } else if p != &two && local.c_p % 2 == 1 {
            DaggerCase::III
        } else if p == &two && local.reduction == ReductionType::Good {
            DaggerCase::IV
        } else {
            DaggerCase::Fail
        };
        Ok(DaggerVerdict {
            p: p.clone(),
            case,
            witness: DaggerWitness {
                shape,
                disc_valuation,
                index_valuation,
                local,
            },
        })
    }

    /// Hypotheses for the Selmer interval over Q: `F` irreducible, and (†)
    /// at 2 and at every prime dividing the discriminant. Odd primes of
    /// good reduction satisfy (†.iii) with `c_p = 1` and are not listed.
    pub fn hypotheses_check(&self) -> Result<HypothesesReport> {
        let verdicts = self
            .bad_primes()?
            .iter()
            .map(|p| self.dagger_check(p))
            .collect::<Result<_>>()?;
        Ok(HypothesesReport {
            rational_root: self.rational_two_torsion(),
            verdicts,
        })
    }

    /// For each factor `g` of `F` over `Q_p`, the parity of the normalized
    /// valuation of the image of `x(P) − T` in `Q_p[T]/(g)`.
    pub fn local_delta_valuation_parity(&self, p: &BigInt, x: &BigRat) -> Result<DeltaParity> {
        let mut local = self.local_factorization(p)?;
        let (a, b) = (x.numer(), x.denom());
        let vb = valuation(b, p) as i64;
        loop {
            let modulus = local.modulus();
            let mut parities = Vec::with_capacity(local.factors.len());
            let mut short = false;
            for g in &local.factors {
                let g_hom = IntPolynomial::new(g.poly.clone())
                    .eval_homogeneous(a, b)
                    .mod_floor(&modulus);
                if g_hom.is_zero() {
                    short = true;
                    break;
                }
                let v = valuation(&g_hom, p) as i64 - g.degree as i64 * vb;
                // v_p of the norm is f times the valuation in the factor
                if v % g.f as i64 != 0 {
                    return Err(Error::Inconsistent(format!(
                        "norm valuation {v} not divisible by f = {}",
                        g.f
                    )));
                }
                parities.push(FactorParity {
                    degree: g.degree,
                    e: g.e,
                    f: g.f,
                    root: g.root.clone(),
                    valuation: v / g.f as i64,
                });
            }
            if !short {
                return Ok(DeltaParity {
                    p: p.clone(),
                    shape: local.shape,
                    factors: parities,
                });
            }
            let k = local.precision * 2;
            if k > 4096 {
                return Err(Error::RaisePrecision {
                    p: p.clone(),
                    precision: local.precision,
                });
            }
            local = cubic_factorization_mod_p(&self.cubic, p, k)?;
        }
    }

    /// Whether `(x, y)` lies on the curve.
    pub fn contains(&self, x: &BigRat, y: &BigRat) -> bool {
        self.cubic.eval_rat(x) == y * y
    }
}

impl std::fmt::Display for CurveModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^2 = {}", self.cubic)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DaggerCase {
    /// `F` is irreducible over `Q_p`.
    I,
    /// `Z_p[T]/(F)` is the maximal order of `Q_p[T]/(F)`.
    II,
    /// `p` odd and `c_p` odd.
    III,
    /// `p = 2` with good reduction.
    IV,
    Fail,
}

/// Everything the four conditions look at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaggerWitness {
    pub shape: LocalShape,
    /// `v_p(disc F)`.
    pub disc_valuation: u32,
    /// `v_p` of the index of `Z[θ]` in the maximal order.
    pub index_valuation: u32,
    pub local: LocalReduction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaggerVerdict {
    #[serde(with = "crate::exact_arith::decimal")]
    pub p: BigInt,
    pub case: DaggerCase,
    pub witness: DaggerWitness,
}

impl DaggerVerdict {
    pub fn holds(&self) -> bool {
        self.case != DaggerCase::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesesReport {
    /// A rational root of `F`, when there is one.
    #[serde(with = "crate::exact_arith::decimal::option")]
    pub rational_root: Option<BigInt>,
    pub verdicts: Vec<DaggerVerdict>,
}

impl HypothesesReport {
    pub fn passed(&self) -> bool {
        self.failure().is_none()
    }

    /// The first failed hypothesis, as a sentence.
    pub fn failure(&self) -> Option<String> {
        if let Some(r) = &self.rational_root {
            return Some(format!(
                "F has the rational root {r}: the curve has rational 2-torsion"
            ));
        }
        self.verdicts
            .iter()
            .find(|v| !v.holds())
            .map(|v| format!("condition (†) fails at p = {}", v.p))
    }
}

/// Valuation of `x(P) − T` in one factor of `Q_p[T]/(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorParity {
    pub degree: u32,
    pub e: u32,
    pub f: u32,
    /// p-adic root (truncated) for linear factors.
    #[serde(with = "crate::exact_arith::decimal::option")]
    pub root: Option<BigInt>,
    /// Normalized valuation in the local field of the factor.
    pub valuation: i64,
}

impl FactorParity {
    pub fn is_odd(&self) -> bool {
        self.valuation.rem_euclid(2) == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaParity {
    #[serde(with = "crate::exact_arith::decimal")]
    pub p: BigInt,
    pub shape: LocalShape,
    pub factors: Vec<FactorParity>,
}

impl DeltaParity {
    /// Whether every component has even valuation, which is necessary for
    /// the class to be integral at `p`.
    pub fn all_even(&self) -> bool {
        self.factors.iter().all(|f| !f.is_odd())
    }

    /// The factor parities as `(degree, odd)` pairs sorted for comparison.
    pub fn pattern(&self) -> Vec<(u32, bool)> {
        let mut v: Vec<_> = self
            .factors
            .iter()
            .map(|f| (f.degree, f.is_odd()))
            .collect();
        v.sort();
        v
    }
}

#[cfg(test)]
mod tests;
