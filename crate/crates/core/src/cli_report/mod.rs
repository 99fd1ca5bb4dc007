//! Reports behind the `selmer` command line: the analysis pipeline, the
//! twist-family and certification reports, their text rendering, the
//! class-data cache and the self-test.
//!
//! JSON output is the serde form of the report types below; field order is
//! the declaration order and integers of unbounded size are strings.

mod cache;
mod parse;
mod selftest;

pub use cache::{Cache, CacheEvent, CacheFile, CachedClassData, CACHE_SCHEMA_VERSION};
pub use parse::{parse_coeffs, parse_curve};
pub use selftest::{run_selftest, Fixture, SelftestCheck, SelftestOutcome};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::class_units::{ClassUnits, GroupSummary};
use crate::cubic_field::CubicField;
use crate::curve_local::{CurveModel, HypothesesReport};
use crate::error::{Error, Result};
use crate::exact_arith::factor_integer;
use crate::selmer_bounds::{
    certified_rank, kummer_class, point_search, root_number, selmer_rank_exact, Certification,
    Point, Provenance, SelmerReport,
};
use crate::star_class::{RealPlaces, StarClass};
use crate::twist_family::{twist_family_report, TwistFamilyReport};

/// Bumped whenever a report field changes meaning or shape.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Exit status of a command, as returned to the shell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    HypothesesFail,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::HypothesesFail => 2,
        }
    }
}

/// Exit code for errors that stop a command before it has a report.
pub const EXIT_INTERNAL: i32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEcho {
    pub label: Option<String>,
    pub equation: String,
    /// `[a2, a1, a0]`.
    pub coefficients: [String; 3],
    /// Discriminant of the model, `16 · disc(F)`.
    pub disc: String,
    pub conductor: String,
}

impl CurveEcho {
    pub fn new(e: &CurveModel) -> Result<Self> {
        Ok(CurveEcho {
            label: e.label().map(str::to_owned),
            equation: e.to_string(),
            coefficients: e.coeffs().map(|c| c.to_string()),
            disc: e.disc().to_string(),
            conductor: e.conductor()?.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldData {
    pub poly_disc: String,
    pub field_disc: String,
    /// `[O : Z[θ]]`.
    pub index: String,
    /// `[r1, r2]`.
    pub signature: [usize; 2],
    /// Factorization of `|field_disc|`.
    pub field_disc_factors: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub class_group: GroupSummary,
    pub narrow_class_group: GroupSummary,
    pub star_class_group: GroupSummary,
    /// Index, in ascending root order, of the distinguished real place.
    pub distinguished_place: usize,
    pub unit_rank: usize,
    pub certification: Certification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub curve: CurveEcho,
    pub hypotheses_passed: bool,
    pub hypotheses_failure: Option<String>,
    pub hypotheses: HypothesesReport,
    /// Absent when `F` has a rational root.
    pub field: Option<FieldData>,
    pub groups: Option<GroupData>,
    /// Absent when the hypotheses fail.
    pub selmer: Option<SelmerReport>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn outcome(&self) -> Outcome {
        if self.hypotheses_passed {
            Outcome::Pass
        } else {
            Outcome::HypothesesFail
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub root_number: Option<i8>,
}

/// Field and group data of the curve's own cubic, from scratch.
pub fn compute_class_data(e: &CurveModel) -> Result<CachedClassData> {
    let k = CubicField::new(e.cubic())?;
    let cu = ClassUnits::compute(&k)?;
    class_data_from(&cu)
}

fn class_data_from(cu: &ClassUnits) -> Result<CachedClassData> {
    let k = cu.field();
    let places = RealPlaces::of_field(k);
    let star = StarClass::new(cu, places)?;
    let (r1, r2) = k.signature();
    let field = FieldData {
        poly_disc: k.poly_disc().to_string(),
        field_disc: k.field_disc().to_string(),
        index: k.index().to_string(),
        signature: [r1, r2],
        field_disc_factors: factor_integer(k.field_disc())?
            .into_iter()
            .map(|(p, e)| (p.to_string(), e))
            .collect(),
    };
    let groups = GroupData {
        class_group: cu.class_group().summary(),
        narrow_class_group: cu.narrow_class_group()?.summary(),
        star_class_group: star.star_class_group().summary(),
        distinguished_place: places.distinguished(),
        unit_rank: k.unit_rank(),
        certification: Certification {
            class_group: cu.is_certified(),
            fundamental_units: cu.unit_group().fundamental_certified(),
        },
    };
    Ok(CachedClassData { field, groups })
}

/// Hypotheses, field, groups, the Selmer interval and, when a root number
/// is available, the exact rank. A failed hypothesis still yields a report.
pub fn analyze(
    e: &CurveModel,
    opts: &AnalyzeOptions,
    cache: Option<&mut Cache>,
) -> Result<AnalysisReport> {
    let hypotheses = e.hypotheses_check()?;
    let failure = hypotheses.failure();
    let mut notes = Vec::new();
    let data = if hypotheses.rational_root.is_some() {
        None
    } else {
        Some(match cache {
            Some(c) => match c.lookup(e) {
                Some(hit) => hit,
                None => {
                    let fresh = compute_class_data(e)?;
                    c.insert(e, fresh.clone());
                    fresh
                }
            },
            None => compute_class_data(e)?,
        })
    };

    let selmer = match (&data, &failure) {
        (Some(d), None) => {
            let lower = d.groups.star_class_group.two_rank;
            let report = SelmerReport {
                lower,
                upper: lower + 1,
                exact: None,
                root_number: None,
                certified_points_rank: None,
                certification: d.groups.certification,
            };
            match root_number(e, opts.root_number) {
                Ok(root) => Some(selmer_rank_exact(report, root)?),
                Err(Error::RootNumberRequiresOverride(p)) => {
                    notes.push(format!(
                        "root number not computed: additive reduction at {p}; pass --root-number to fix the parity"
                    ));
                    Some(report)
                }
                Err(err) => return Err(err),
            }
        }
        _ => None,
    };
    if let Some(d) = &data {
        if !(d.groups.certification.class_group && d.groups.certification.fundamental_units) {
            notes.push(
                "class group or units are not certified; the interval is conditional on them"
                    .into(),
            );
        }
    }
    let (field, groups) = data.map(|d| (d.field, d.groups)).unzip();
    Ok(AnalysisReport {
        schema_version: REPORT_SCHEMA_VERSION,
        curve: CurveEcho::new(e)?,
        hypotheses_passed: failure.is_none(),
        hypotheses_failure: failure,
        hypotheses,
        field,
        groups,
        selmer,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistsReport {
    pub schema_version: u32,
    pub curve: CurveEcho,
    #[serde(flatten)]
    pub family: TwistFamilyReport,
}

/// Family report for prime twists, with the root number of `E` taken from
/// `root_override` or computed when every bad prime is multiplicative.
pub fn twists(
    e: &CurveModel,
    limit: u64,
    root_override: Option<i8>,
    verify_up_to: u64,
) -> Result<TwistsReport> {
    if let Some(reason) = e.hypotheses_check()?.failure() {
        return Err(Error::HypothesesFailed(reason));
    }
    let root = match root_number(e, root_override) {
        Ok(r) => Some(r),
        Err(Error::RootNumberRequiresOverride(_)) => None,
        Err(err) => return Err(err),
    };
    let k = CubicField::new(e.cubic())?;
    let cu = ClassUnits::compute(&k)?;
    Ok(TwistsReport {
        schema_version: REPORT_SCHEMA_VERSION,
        curve: CurveEcho::new(e)?,
        family: twist_family_report(e, &cu, limit, root, verify_up_to)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: String,
    pub y: String,
    pub in_c_tilde: bool,
    pub in_c_star: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub schema_version: u32,
    pub curve: CurveEcho,
    pub height: u64,
    pub points: Vec<PointRecord>,
    /// F2-rank of the Kummer classes of the points.
    pub certified_rank: usize,
    pub lower: usize,
    pub upper: usize,
}

/// Searches points up to `height`, maps them to square classes and checks
/// `C_*(E) ⊆ Sel_2(E) ⊆ C̃(E)` on them: every class must lie in `C̃`, and
/// their rank cannot exceed the upper bound.
pub fn certify(e: &CurveModel, height: u64) -> Result<CertifyReport> {
    if let Some(reason) = e.hypotheses_check()?.failure() {
        return Err(Error::HypothesesFailed(reason));
    }
    let k = CubicField::new(e.cubic())?;
    let cu = ClassUnits::compute(&k)?;
    let mut star = StarClass::new(&cu, RealPlaces::of_field(&k))?;
    let found = point_search(e, height);
    let mut points = Vec::with_capacity(found.len());
    for p in &found {
        let class = kummer_class(&mut star, p)?;
        let Point::Affine { x, y } = p else { continue };
        points.push(PointRecord {
            x: x.to_string(),
            y: y.to_string(),
            in_c_tilde: star.in_c_tilde(&class),
            in_c_star: star.in_c_star(&class),
        });
    }
    // certified_rank refuses classes outside C̃
    let rank = certified_rank(&mut star, &found)?;
    let lower = star.star_class_group().two_rank();
    if rank > lower + 1 {
        return Err(Error::Inconsistent(format!(
            "{rank} independent points exceed the upper bound {}",
            lower + 1
        )));
    }
    Ok(CertifyReport {
        schema_version: REPORT_SCHEMA_VERSION,
        curve: CurveEcho::new(e)?,
        height,
        points,
        certified_rank: rank,
        lower,
        upper: lower + 1,
    })
}

fn provenance(p: Provenance) -> &'static str {
    match p {
        Provenance::Computed => "computed",
        Provenance::UserSupplied => "user-supplied",
    }
}

fn divisors(g: &GroupSummary) -> String {
    if g.elementary_divisors.is_empty() {
        "trivial".into()
    } else {
        g.elementary_divisors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let c = &r.curve;
    if let Some(label) = &c.label {
        let _ = writeln!(s, "curve      {label}");
    }
    let _ = writeln!(s, "equation   {}", c.equation);
    let _ = writeln!(s, "disc       {}", c.disc);
    let _ = writeln!(s, "conductor  {}", c.conductor);
    let _ = writeln!(
        s,
        "\nhypotheses {}",
        if r.hypotheses_passed { "PASS" } else { "FAIL" }
    );
    if let Some(why) = &r.hypotheses_failure {
        let _ = writeln!(s, "  reason   {why}");
    }
    for v in &r.hypotheses.verdicts {
        let l = &v.witness.local;
        let _ = writeln!(
            s,
            "  p = {:<8} case {:<5} type {:<5} f = {} c = {} v(disc F) = {} v(index) = {}",
            v.p,
            format!("{:?}", v.case),
            l.kodaira.to_string(),
            l.f_p,
            l.c_p,
            v.witness.disc_valuation,
            v.witness.index_valuation
        );
    }
    if let Some(f) = &r.field {
        let _ = writeln!(
            s,
            "\nfield disc {}  index {}  signature ({}, {})",
            f.field_disc, f.index, f.signature[0], f.signature[1]
        );
    }
    if let Some(g) = &r.groups {
        let _ = writeln!(s, "Cl         {}", divisors(&g.class_group));
        let _ = writeln!(s, "Cl+        {}", divisors(&g.narrow_class_group));
        let _ = writeln!(s, "Cl*        {}", divisors(&g.star_class_group));
        let cert = &g.certification;
        let _ = writeln!(
            s,
            "certified  class group {}, units {}",
            cert.class_group, cert.fundamental_units
        );
    }
    if let Some(sel) = &r.selmer {
        let _ = writeln!(s, "\n2-Selmer rank in [{}, {}]", sel.lower, sel.upper);
        if let (Some(n), Some(root)) = (sel.exact, sel.root_number) {
            let _ = writeln!(
                s,
                "exact rank {n} (root number {:+}, {})",
                root.value,
                provenance(root.provenance)
            );
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn render_twists(report: &TwistsReport) -> String {
    let r = &report.family;
    let mut s = String::new();
    let _ = writeln!(s, "{}\n", report.curve.equation);
    let _ = writeln!(
        s,
        "odd primes p <= {} not dividing disc(E): {}",
        r.limit, r.primes_considered
    );
    let _ = writeln!(
        s,
        "inert density {:.4} (expected {:.4}{})",
        r.inert_density,
        r.expected_inert_density,
        if r.galois { ", Galois" } else { "" }
    );
    let _ = writeln!(
        s,
        "\n{:<10} {:>8} {:>9}  root number",
        "set", "primes", "density"
    );
    for c in &r.set_counts {
        let keep = match c.set.preserves_root_number() {
            Some(true) => "kept",
            Some(false) => "flipped",
            None => "",
        };
        let _ = writeln!(
            s,
            "{:<10} {:>8} {:>9.4}  {keep}",
            c.set.label(),
            c.count,
            c.density
        );
    }
    if !r.totally_ramified.is_empty() {
        let _ = writeln!(s, "totally ramified: {:?}", r.totally_ramified);
    }
    let _ = writeln!(s, "\nCl* for d > 0: {}", divisors(&r.star_positive));
    let _ = writeln!(s, "Cl* for d < 0: {}", divisors(&r.star_negative));
    match r.root_number {
        Some(root) => {
            let _ = writeln!(
                s,
                "root number of E: {:+} ({})",
                root.value,
                provenance(root.provenance)
            );
        }
        None => {
            let _ = writeln!(
                s,
                "root number of E unknown: twist ranks given as intervals"
            );
        }
    }
    let _ = writeln!(
        s,
        "hypotheses re-checked on {} twists with |d| <= {}",
        r.hypotheses_verified, r.hypotheses_verified_up_to
    );
    let _ = writeln!(s, "\n{:>8} {:<10} {:>9}  exact", "d", "set", "interval");
    for t in r.twists.iter().take(20) {
        let exact = t.exact.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:>8} {:<10} {:>9}  {exact}",
            t.d,
            t.set.label(),
            format!("[{}, {}]", t.lower, t.upper)
        );
    }
    if r.twists.len() > 20 {
        let _ = writeln!(s, "... {} more", r.twists.len() - 20);
    }
    if !r.rank_counts.is_empty() {
        let _ = writeln!(s, "\ntwists by predicted rank:");
        for (rank, n) in &r.rank_counts {
            let _ = writeln!(s, "  r = {rank}: {n}");
        }
    }
    if let Some(note) = &r.note {
        let _ = writeln!(s, "\nnote: {note}");
    }
    s
}

pub fn render_certify(r: &CertifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  (height <= {})", r.curve.equation, r.height);
    for p in &r.points {
        let _ = writeln!(
            s,
            "  ({}, {})  in C~: {}  in C*: {}",
            p.x, p.y, p.in_c_tilde, p.in_c_star
        );
    }
    let _ = writeln!(
        s,
        "{} points, Kummer rank {}, Selmer interval [{}, {}]",
        r.points.len(),
        r.certified_rank,
        r.lower,
        r.upper
    );
    s
}

/// Parses a user-facing root number such as `-1`, `+1` or `−1`.
pub fn parse_root_number(s: &str) -> Result<i8> {
    match s.replace('−', "-").trim() {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(Error::Usage(format!(
            "root number must be +1 or -1, got {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests;
