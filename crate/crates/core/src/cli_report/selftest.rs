//! Fixed fixtures with known answers, run by `selmer selftest`.

use std::path::Path;

use num_bigint::BigInt;

use super::{analyze, AnalyzeOptions, Cache, CacheEvent, Outcome};
use crate::class_units::GroupSummary;
use crate::cubic_field::FieldElement;
use crate::curve_local::{CurveModel, DaggerCase, Kodaira};
use crate::error::Result;
use crate::twist_family::{relative_root_number, twist_model};

/// A curve with its expected field, groups and ranks.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub coeffs: [i64; 3],
    pub root_number: i8,
    pub field_disc: i64,
    pub class_group: Vec<u64>,
    pub narrow_class_group: Vec<u64>,
    pub star_class_group: Vec<u64>,
    pub interval: (usize, usize),
    pub exact: usize,
    /// Prime discriminants `d` with the exact rank of `E_d`.
    pub twists: Vec<(i64, usize)>,
}

impl Fixture {
    pub fn standard() -> Vec<Fixture> {
        vec![
            Fixture {
                name: "106276.a1".into(),
                coeffs: [-1, -54, 169],
                root_number: -1,
                field_disc: 26569,
                class_group: vec![2, 2],
                narrow_class_group: vec![2, 2],
                star_class_group: vec![2, 2],
                interval: (2, 3),
                exact: 3,
                twists: vec![(-3, 2)],
            },
            Fixture {
                name: "9032.a1".into(),
                coeffs: [0, -7, 3],
                // two independent points of small height force rank 2
                root_number: 1,
                field_disc: 1129,
                class_group: vec![],
                narrow_class_group: vec![2],
                star_class_group: vec![2],
                interval: (1, 2),
                exact: 2,
                twists: vec![(5, 1), (113, 2), (-43, 0), (-7, 1)],
            },
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestOutcome {
    pub checks: Vec<SelftestCheck>,
}

impl SelftestOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: impl Into<String>, result: Result<std::result::Result<(), String>>) {
        let (passed, detail) = match result {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(why)) => (false, why),
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(SelftestCheck {
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn divisors(g: &GroupSummary) -> Vec<String> {
    g.elementary_divisors.clone()
}

fn strings(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(
    what: &str,
    got: T,
    want: T,
) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn check_fixture(f: &Fixture) -> Result<std::result::Result<(), String>> {
    let e = CurveModel::from_coeffs(f.coeffs[0], f.coeffs[1], f.coeffs[2])?;
    let r = analyze(
        &e,
        &AnalyzeOptions {
            root_number: Some(f.root_number),
        },
        None,
    )?;
    let (Some(field), Some(groups), Some(sel)) = (&r.field, &r.groups, &r.selmer) else {
        return Ok(Err(format!(
            "incomplete report: {:?}",
            r.hypotheses_failure
        )));
    };
    let checks = || -> std::result::Result<(), String> {
        expect(
            "field disc",
            field.field_disc.clone(),
            f.field_disc.to_string(),
        )?;
        expect("Cl", divisors(&groups.class_group), strings(&f.class_group))?;
        expect(
            "Cl+",
            divisors(&groups.narrow_class_group),
            strings(&f.narrow_class_group),
        )?;
        expect(
            "Cl*",
            divisors(&groups.star_class_group),
            strings(&f.star_class_group),
        )?;
        expect("interval", (sel.lower, sel.upper), f.interval)?;
        expect("exact rank", sel.exact, Some(f.exact))
    };
    if let Err(why) = checks() {
        return Ok(Err(why));
    }
    for &(d, rank) in &f.twists {
        let d = BigInt::from(d);
        let t = twist_model(&e, &d)?;
        let rel = relative_root_number(&e, &d.magnitude().clone().into())?;
        let tr = analyze(
            &t,
            &AnalyzeOptions {
                root_number: Some(f.root_number * rel),
            },
            None,
        )?;
        let got = tr.selmer.and_then(|s| s.exact);
        if got != Some(rank) {
            return Ok(Err(format!("twist by {d}: got {got:?}, expected {rank}")));
        }
    }
    Ok(Ok(()))
}

fn check_rational_torsion() -> Result<std::result::Result<(), String>> {
    let e = CurveModel::from_coeffs(0, -1, 0)?;
    let r = analyze(&e, &AnalyzeOptions::default(), None)?;
    Ok(match (r.outcome(), &r.hypotheses_failure) {
        (Outcome::HypothesesFail, Some(why)) if why.contains("rational") => Ok(()),
        other => Err(format!("x^3 - x: {other:?}")),
    })
}

fn check_counterexamples() -> Result<std::result::Result<(), String>> {
    let five = BigInt::from(5);
    let cases = [
        ((11, -60, 0), five.clone(), Kodaira::I(2)),
        ((7, -18, 0), BigInt::from(3), Kodaira::I(4)),
        ((0, -2550, 0), five.clone(), Kodaira::IStar(0)),
        ((0, -30, 0), five.clone(), Kodaira::III),
    ];
    for ((a2, a1, a0), p, kodaira) in cases {
        let e = CurveModel::from_coeffs(a2, a1, a0)?;
        let v = e.dagger_check(&p)?;
        if v.witness.local.kodaira != kodaira || v.case != DaggerCase::Fail {
            return Ok(Err(format!(
                "{e} at {p}: {} / {:?}",
                v.witness.local.kodaira, v.case
            )));
        }
    }
    Ok(Ok(()))
}

fn check_c_star_generator() -> Result<std::result::Result<(), String>> {
    use crate::class_units::ClassUnits;
    use crate::cubic_field::CubicField;
    use crate::star_class::{RealPlaces, StarClass};
    let e = CurveModel::from_coeffs(0, -7, 3)?;
    let k = CubicField::new(e.cubic())?;
    let cu = ClassUnits::compute(&k)?;
    let alpha = FieldElement::from_i64s([-8, 0, 1]);
    let mut own = StarClass::new(&cu, RealPlaces::of_field(&k))?;
    let class = own.square_class(&alpha)?;
    let generates = own.in_c_star(&class)
        && own.c_star().basis() == [class.coordinates.clone().unwrap_or_default()];
    let mut twisted = StarClass::new(&cu, RealPlaces::for_twist(&k, &BigInt::from(-1)))?;
    let other = twisted.square_class(&alpha)?;
    Ok(
        match (
            class.signature.as_slice(),
            generates,
            twisted.in_c_tilde(&other),
        ) {
            ([1, -1, -1], true, false) => Ok(()),
            other => Err(format!("θ^2 - 8: {other:?}")),
        },
    )
}

/// Analyzes a fixture through a fresh cache, corrupts the stored entry and
/// checks that the next run rejects it and still reports the same thing.
fn check_cache(f: &Fixture, dir: &Path) -> Result<std::result::Result<(), String>> {
    let path = dir.join("selmer-selftest-cache.json");
    let _ = std::fs::remove_file(&path);
    let e = CurveModel::from_coeffs(f.coeffs[0], f.coeffs[1], f.coeffs[2])?;
    let opts = AnalyzeOptions {
        root_number: Some(f.root_number),
    };
    let plain = analyze(&e, &opts, None)?;
    let mut cache = Cache::open(&path)?;
    let first = analyze(&e, &opts, Some(&mut cache))?;
    cache.save()?;
    let mut cache = Cache::open(&path)?;
    let second = analyze(&e, &opts, Some(&mut cache))?;
    if first != plain
        || second != plain
        || !matches!(cache.events().last(), Some(CacheEvent::Hit(_)))
    {
        return Ok(Err("cached report differs from a fresh one".into()));
    }
    let text = std::fs::read_to_string(&path)?;
    let order = &plain
        .groups
        .as_ref()
        .expect("fixture has groups")
        .narrow_class_group
        .order;
    let corrupted = text.replacen(&format!("\"order\": \"{order}\""), "\"order\": \"3\"", 1);
    std::fs::write(&path, corrupted)?;
    let mut cache = Cache::open(&path)?;
    let third = analyze(&e, &opts, Some(&mut cache))?;
    let rejected = cache
        .events()
        .iter()
        .any(|ev| matches!(ev, CacheEvent::Rejected { .. }));
    cache.save()?;
    let _ = std::fs::remove_file(&path);
    Ok(match (rejected, third == plain) {
        (true, true) => Ok(()),
        (r, same) => Err(format!(
            "corruption rejected: {r}, report unchanged: {same}"
        )),
    })
}

/// Runs every fixture plus the fixed checks. Cache files go in `scratch`.
pub fn run_selftest(fixtures: &[Fixture], scratch: &Path) -> SelftestOutcome {
    let mut out = SelftestOutcome::default();
    for f in fixtures {
        out.record(format!("fixture {}", f.name), check_fixture(f));
    }
    out.record("rational 2-torsion is refused", check_rational_torsion());
    out.record("local counterexamples fail (†)", check_counterexamples());
    out.record("θ^2 - 8 generates C_*", check_c_star_generator());
    if let Some(f) = fixtures.first() {
        out.record("corrupted cache is detected", check_cache(f, scratch));
    }
    out
}
