//! Quadratic twists `E_d: y^2 = d^3 F(x/d)` over Q by prime discriminants
//! `p* = ±p` with `p` inert (or totally ramified) in `A`, the four sets of
//! inert primes governing the root number of `E_{p*}`, and family reports.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::class_units::{ClassUnits, GroupSummary};
use crate::cubic_field::CubicField;
use crate::curve_local::CurveModel;
use crate::error::{Error, Result};
use crate::exact_arith::modp::{cubic_splitting_mod_p, CubicSplitting, Fp};
use crate::exact_arith::{factor_integer, is_squarefree, kronecker_symbol, primes_up_to};
use crate::selmer_bounds::{selmer_rank_exact, RootNumber, SelmerReport};
use crate::star_class::{RealPlaces, StarClass};

/// Smallest `--limit` accepted by the family report.
pub const MIN_FAMILY_LIMIT: u64 = 100;

/// How a rational prime decomposes in `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Splitting {
    Inert,
    /// One prime of degree one and one of degree two.
    Partial,
    Split,
    TotallyRamified,
    /// Ramified, but not totally.
    Ramified,
}

impl Splitting {
    /// Whether a twist by this prime keeps the hypotheses (Lemma-style
    /// condition on prime divisors of `d`).
    pub fn admits_twist(self) -> bool {
        matches!(self, Splitting::Inert | Splitting::TotallyRamified)
    }

    fn from_ef(ef: &[(u32, u32)]) -> Self {
        match ef {
            [(1, 3)] => Splitting::Inert,
            [(3, 1)] => Splitting::TotallyRamified,
            _ if ef.iter().any(|&(e, _)| e > 1) => Splitting::Ramified,
            _ if ef.len() == 3 => Splitting::Split,
            _ => Splitting::Partial,
        }
    }
}

/// The decomposition of `p` in the field of `F`.
pub fn splitting(e: &CurveModel, p: &BigInt) -> Result<Splitting> {
    if !e.disc_f().is_multiple_of(p) {
        if let Some(q) = p.to_u64() {
            return Ok(match cubic_splitting_mod_p(e.cubic(), Fp::new(q)) {
                CubicSplitting::Inert => Splitting::Inert,
                CubicSplitting::Partial => Splitting::Partial,
                CubicSplitting::Split => Splitting::Split,
                CubicSplitting::Repeated => unreachable!("p does not divide disc F"),
            });
        }
    }
    let k = CubicField::new(e.cubic())?;
    Ok(Splitting::from_ef(&k.splitting_type(p)?))
}

/// Which of the classification sets an odd prime `p ∤ Δ(E)` falls in.
///
/// For `Δ(E) > 0` inert primes split four ways by `p mod 4` and
/// `χ_p(Δ(E)/N_E)`. For `Δ(E) < 0` they split two ways by
/// `χ_p(-Δ(E)/N_E)`, independently of `p mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeSet {
    PlusSquare,
    PlusNonsquare,
    MinusSquare,
    MinusNonsquare,
    Square,
    Nonsquare,
    NotInert,
}

impl PrimeSet {
    /// Whether `E_{p*}` has the root number of `E`. From
    /// `χ_p(-N_E) = χ_p(-1) χ_p(Δ(E)/N_E)` at inert `p`, for `p ≡ 3 mod 4`
    /// it is the nonsquare set that keeps the sign.
    pub fn preserves_root_number(self) -> Option<bool> {
        match self {
            PrimeSet::PlusSquare | PrimeSet::MinusNonsquare | PrimeSet::Square => Some(true),
            PrimeSet::PlusNonsquare | PrimeSet::MinusSquare | PrimeSet::Nonsquare => Some(false),
            PrimeSet::NotInert => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PrimeSet::PlusSquare => "C+□",
            PrimeSet::PlusNonsquare => "C+∤□",
            PrimeSet::MinusSquare => "C−□",
            PrimeSet::MinusNonsquare => "C−∤□",
            PrimeSet::Square => "C□",
            PrimeSet::Nonsquare => "C∤□",
            PrimeSet::NotInert => "not inert",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeClassification {
    #[serde(with = "crate::exact_arith::decimal")]
    pub p: BigInt,
    pub splitting: Splitting,
    #[serde(with = "crate::exact_arith::decimal")]
    pub p_star: BigInt,
    pub set: PrimeSet,
    /// `ε(E) ε(E_{p*})`.
    pub relative_root_number: i8,
}

/// A twist together with the Lemma-style admissibility verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    pub d: BigInt,
    pub admissible: bool,
    /// Decomposition of each prime dividing `d`.
    pub reasons: Vec<(BigInt, Splitting)>,
    pub model: CurveModel,
}

/// `E_d: y^2 = d^3 F(x/d)` for squarefree nonzero `d`.
pub fn twist_model(e: &CurveModel, d: &BigInt) -> Result<CurveModel> {
    if d.is_zero() || !is_squarefree(d)? {
        return Err(Error::InvalidTwist(d.clone()));
    }
    let t = e.twist(d)?;
    if t.disc() != &(e.disc() * d.pow(6)) {
        return Err(Error::Inconsistent(format!(
            "disc of E_{d} is not d^6 disc(E)"
        )));
    }
    Ok(t)
}

/// Admissible when every prime dividing `d` is inert or totally ramified
/// in `A`. When `E` satisfies the hypotheses and `d` is admissible the
/// twist must satisfy them as well; a counterexample is an error.
pub fn twist_admissible(e: &CurveModel, d: &BigInt) -> Result<TwistSpec> {
    let model = twist_model(e, d)?;
    let reasons = if d.abs().is_one() {
        Vec::new()
    } else {
        factor_integer(d)?
            .into_iter()
            .map(|(p, _)| splitting(e, &p).map(|s| (p, s)))
            .collect::<Result<Vec<_>>>()?
    };
    let admissible = reasons.iter().all(|(_, s)| s.admits_twist());
    if admissible && e.hypotheses_check()?.passed() {
        if let Some(reason) = model.hypotheses_check()?.failure() {
            return Err(Error::Inconsistent(format!(
                "admissible twist by {d} fails the hypotheses: {reason}"
            )));
        }
    }
    Ok(TwistSpec {
        d: d.clone(),
        admissible,
        reasons,
        model,
    })
}

/// `p* = (-1/p) p`, the prime discriminant at an odd prime.
pub fn p_star(p: &BigInt) -> Result<BigInt> {
    if p == &BigInt::from(2) {
        return Err(Error::Usage("p* is defined for odd primes only".into()));
    }
    if !crate::exact_arith::is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(if p.mod_floor(&BigInt::from(4)).is_one() {
        p.clone()
    } else {
        -p
    })
}

/// `ε(E) ε(E_{p*}) = χ_p(-N_E)` for `p ∤ 2Δ(E)`.
pub fn relative_root_number(e: &CurveModel, p: &BigInt) -> Result<i8> {
    let conductor = e.conductor()?;
    relative_root_number_with(e, &conductor, p)
}

fn relative_root_number_with(e: &CurveModel, conductor: &BigInt, p: &BigInt) -> Result<i8> {
    if e.disc().is_multiple_of(p) {
        return Err(Error::BadPrimeForTwist(p.clone()));
    }
    Ok(kronecker_symbol(&-conductor, p))
}

/// Splitting, `p*`, classification set and relative root number of an odd
/// prime not dividing `Δ(E)`.
pub fn classify_prime(e: &CurveModel, p: &BigInt) -> Result<PrimeClassification> {
    let conductor = e.conductor()?;
    classify_with(e, &conductor, p)
}

fn classify_with(e: &CurveModel, conductor: &BigInt, p: &BigInt) -> Result<PrimeClassification> {
    let relative_root_number = relative_root_number_with(e, conductor, p)?;
    let p_star = p_star(p)?;
    let splitting = splitting(e, p)?;
    let set = if splitting != Splitting::Inert {
        PrimeSet::NotInert
    } else {
        // Δ(E)/N_E and Δ(E)·N_E have the same character
        let chi = kronecker_symbol(&(e.disc() * conductor), p);
        match (e.disc().is_positive(), p_star.is_positive(), chi == 1) {
            (true, true, true) => PrimeSet::PlusSquare,
            (true, true, false) => PrimeSet::PlusNonsquare,
            (true, false, true) => PrimeSet::MinusSquare,
            (true, false, false) => PrimeSet::MinusNonsquare,
            (false, _, _) if kronecker_symbol(&-(e.disc() * conductor), p) == 1 => PrimeSet::Square,
            (false, _, _) => PrimeSet::Nonsquare,
        }
    };
    Ok(PrimeClassification {
        p: p.clone(),
        splitting,
        p_star,
        set,
        relative_root_number,
    })
}

/// Predicted 2-Selmer data of one admissible prime twist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistPrediction {
    #[serde(with = "crate::exact_arith::decimal")]
    pub d: BigInt,
    pub splitting: Splitting,
    pub set: PrimeSet,
    /// `None` at totally ramified primes, where the relation does not apply.
    pub relative_root_number: Option<i8>,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetCount {
    pub set: PrimeSet,
    pub count: usize,
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistFamilyReport {
    pub limit: u64,
    pub disc_positive: bool,
    /// `A/Q` is Galois exactly when `disc F` is a square.
    pub galois: bool,
    /// Odd primes up to the limit not dividing `Δ(E)`.
    pub primes_considered: usize,
    pub inert: usize,
    pub inert_density: f64,
    /// 2/3 when Galois, 1/3 otherwise.
    pub expected_inert_density: f64,
    pub set_counts: Vec<SetCount>,
    /// Odd primes dividing `Δ(E)` that are totally ramified in `A`, kept
    /// apart from the inert count.
    pub totally_ramified: Vec<u64>,
    /// `Cl_*` for twists by `d > 0` and by `d < 0`.
    pub star_positive: GroupSummary,
    pub star_negative: GroupSummary,
    pub root_number: Option<RootNumber>,
    /// Admissible twists with `|d|` up to this bound had the hypotheses
    /// re-checked on their own model.
    pub hypotheses_verified_up_to: u64,
    pub hypotheses_verified: usize,
    pub twists: Vec<TwistPrediction>,
    /// Number of admissible prime twists with predicted exact rank `r`, as
    /// `(r, count)`.
    pub rank_counts: Vec<(usize, usize)>,
    pub note: Option<String>,
}

/// Classification and predicted ranks for the prime twists `E_{p*}` with
/// `p ≤ limit`. `cu` must belong to the field of `F`; `root` is the root
/// number of `E`, if known. Twists with `|d| ≤ verify_up_to` are checked
/// against the hypotheses directly, which costs a few ms each.
pub fn twist_family_report(
    e: &CurveModel,
    cu: &ClassUnits,
    limit: u64,
    root: Option<RootNumber>,
    verify_up_to: u64,
) -> Result<TwistFamilyReport> {
    if limit < MIN_FAMILY_LIMIT {
        return Err(Error::Usage(format!(
            "limit must be at least {MIN_FAMILY_LIMIT}, got {limit}"
        )));
    }
    if let Some(reason) = e.hypotheses_check()?.failure() {
        return Err(Error::HypothesesFailed(reason));
    }
    if cu.field().poly() != e.cubic() {
        return Err(Error::Inconsistent(
            "class data belongs to a different cubic".into(),
        ));
    }
    let k = cu.field();
    let conductor = e.conductor()?;
    // positive twists keep the distinguished place, negative ones move it
    let plus = StarClass::new(cu, RealPlaces::for_twist(k, &BigInt::one()))?;
    let minus = StarClass::new(cu, RealPlaces::for_twist(k, &BigInt::from(-1)))?;
    let base_plus = crate::selmer_bounds::bounds_from_star(&plus);
    let base_minus = crate::selmer_bounds::bounds_from_star(&minus);

    let mut counts: BTreeMap<PrimeSet, usize> = BTreeMap::new();
    let mut twists = Vec::new();
    let mut totally_ramified = Vec::new();
    let mut considered = 0usize;
    for q in primes_up_to(limit).into_iter().skip(1) {
        let p = BigInt::from(q);
        if e.disc().is_multiple_of(&p) {
            if splitting(e, &p)? == Splitting::TotallyRamified {
                totally_ramified.push(q);
                let d = p_star(&p)?;
                let base = if d.is_positive() {
                    &base_plus
                } else {
                    &base_minus
                };
                twists.push(TwistPrediction {
                    d,
                    splitting: Splitting::TotallyRamified,
                    set: PrimeSet::NotInert,
                    relative_root_number: None,
                    lower: base.lower,
                    upper: base.upper,
                    exact: None,
                });
            }
            continue;
        }
        considered += 1;
        let c = classify_with(e, &conductor, &p)?;
        *counts.entry(c.set).or_default() += 1;
        if c.set == PrimeSet::NotInert {
            continue;
        }
        let base = if c.p_star.is_positive() {
            &base_plus
        } else {
            &base_minus
        };
        let exact = match root {
            Some(r) => Some(predict(base, r, c.relative_root_number)?),
            None => None,
        };
        twists.push(TwistPrediction {
            d: c.p_star,
            splitting: c.splitting,
            set: c.set,
            relative_root_number: Some(c.relative_root_number),
            lower: base.lower,
            upper: base.upper,
            exact,
        });
    }
    twists.sort_by_key(|a| a.d.abs());
    let mut verified = 0;
    for t in twists
        .iter()
        .filter(|t| t.d.magnitude() <= &verify_up_to.into())
    {
        if !twist_admissible(e, &t.d)?.admissible {
            return Err(Error::Inconsistent(format!(
                "twist by {} was tabulated but is not admissible",
                t.d
            )));
        }
        verified += 1;
    }

    let inert = counts
        .iter()
        .filter(|(s, _)| **s != PrimeSet::NotInert)
        .map(|(_, c)| c)
        .sum();
    let density = |n: usize| {
        if considered == 0 {
            0.0
        } else {
            n as f64 / considered as f64
        }
    };
    let galois = crate::exact_arith::exact_sqrt(&e.disc_f()).is_some();
    let mut rank_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for t in &twists {
        if let Some(r) = t.exact {
            *rank_counts.entry(r).or_default() += 1;
        }
    }
    let equal_groups =
        !e.disc().is_positive() || cu.narrow_class_group()?.order() == cu.class_group().order();
    let base_rank = root
        .map(|r| selmer_rank_exact(base_plus.clone(), r))
        .transpose()?
        .and_then(|s| s.exact);
    let note = (base_rank == Some(0) && equal_groups).then(|| {
        "E has trivial 2-Selmer group: E(K) is finite over K = Q(√p* : p inert or totally ramified in A)".to_string()
    });
    Ok(TwistFamilyReport {
        limit,
        disc_positive: e.disc().is_positive(),
        galois,
        primes_considered: considered,
        inert,
        inert_density: density(inert),
        expected_inert_density: if galois { 2.0 / 3.0 } else { 1.0 / 3.0 },
        set_counts: counts
            .into_iter()
            .map(|(set, count)| SetCount {
                set,
                count,
                density: density(count),
            })
            .collect(),
        totally_ramified,
        star_positive: plus.star_class_group().summary(),
        star_negative: minus.star_class_group().summary(),
        root_number: root,
        hypotheses_verified_up_to: verify_up_to,
        hypotheses_verified: verified,
        twists,
        rank_counts: rank_counts.into_iter().collect(),
        note,
    })
}

/// Exact rank of `E_{p*}` from the interval and `ε(E_{p*}) = ε(E) · rel`.
fn predict(base: &SelmerReport, root: RootNumber, relative: i8) -> Result<usize> {
    let twisted = RootNumber {
        value: root.value * relative,
        provenance: root.provenance,
    };
    Ok(selmer_rank_exact(base.clone(), twisted)?
        .exact
        .expect("selmer_rank_exact sets exact"))
}

/// `Cl_*` of a model computed from scratch in the field of its own cubic,
/// without reusing any other curve's data.
pub fn star_group_of(model: &CurveModel) -> Result<GroupSummary> {
    let k = CubicField::new(model.cubic())?;
    let cu = ClassUnits::compute(&k)?;
    let star = StarClass::new(&cu, RealPlaces::of_field(&k))?;
    Ok(star.star_class_group().summary())
}
