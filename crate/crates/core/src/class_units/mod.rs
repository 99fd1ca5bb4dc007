//! Class groups, unit groups and narrow class groups of cubic fields.
//!
//! Relations come from small elements whose norms factor over the prime
//! ideals up to the Minkowski bound. Their valuation vectors span a
//! lattice `L` in `Z^S`, and `Z^S / L` surjects onto the class group. The
//! surjection is proved injective by showing that one element of every
//! line of `G[ℓ]`, for each prime `ℓ` dividing `|G|`, is non-principal.
//! Units come from relations over the smallest primes that reduce to
//! zero, and are then saturated.
//!
//! Every relation row carries the exact signs of its generator at the real
//! places, which is all that narrow and other sign-modified class groups
//! need on top of the class group.

mod compact;
mod group;
mod precise;
mod principal;
mod search;
mod units;

pub use group::{two_rank, AbelianGroupPresentation, GroupSummary};
pub use search::minkowski_bound;
pub use units::{regulator_lower_bound, UnitGroup, UNIT_BOX};

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubic_field::{CubicField, FieldElement, IdealHnf, OrderCoords};
use crate::error::{Error, Result};
use crate::exact_arith::lattice::{Hnf, RowPayload};
use crate::exact_arith::BigRat;
use compact::{accurate_log, Compact, ElementStore};
use search::{reduce_in_class, FactorBase, ReducedLattice, Sparse};
use units::UnitBuilder;

/// Primes of norm up to this bound always belong to the factor base.
const MIN_FACTOR_BASE: u64 = 30;
/// Relations over the primes up to this norm feed the unit search.
const UNIT_BASE_NORM: u64 = 30;
/// Factor bases beyond this bound are refused.
const MAX_FACTOR_BASE: u64 = 2_000_000;
const MAX_ROUNDS: usize = 60;
const SEED: u64 = 0x5e1_3e7;

/// Sign bits of a relation's generator, combined with the relation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct SignBits(u8);

impl RowPayload for SignBits {
    fn combine(a: &Self, ca: &BigInt, b: &Self, cb: &BigInt) -> Self {
        let pa = if ca.is_odd() { a.0 } else { 0 };
        let pb = if cb.is_odd() { b.0 } else { 0 };
        SignBits(pa ^ pb)
    }
}

/// A class group (plain, narrow, or with modified sign conditions) with
/// ideal representatives for its cyclic generators.
#[derive(Clone, Debug)]
pub struct IdealClassGroup {
    presentation: AbelianGroupPresentation,
    generators: Vec<IdealHnf>,
    sign_columns: usize,
    realizers: Vec<FieldElement>,
    certified: bool,
}

impl IdealClassGroup {
    pub fn presentation(&self) -> &AbelianGroupPresentation {
        &self.presentation
    }

    pub fn elementary_divisors(&self) -> &[BigInt] {
        self.presentation.elementary_divisors()
    }

    pub fn order(&self) -> BigInt {
        self.presentation.order()
    }

    pub fn two_rank(&self) -> usize {
        two_rank(&self.presentation)
    }

    /// One ideal per cyclic factor.
    pub fn generators(&self) -> &[IdealHnf] {
        &self.generators
    }

    /// Elements whose principal ideals stand for the sign columns.
    pub fn sign_realizers(&self) -> &[FieldElement] {
        &self.realizers
    }

    pub fn sign_columns(&self) -> usize {
        self.sign_columns
    }

    /// True when the underlying class group computation was certified.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn summary(&self) -> GroupSummary {
        self.presentation.summary()
    }
}

/// Class group, units and relation data of one cubic field.
#[derive(Clone, Debug)]
pub struct ClassUnits {
    field: CubicField,
    fb: FactorBase,
    o_lat: ReducedLattice,
    lattice: Hnf<SignBits>,
    group: AbelianGroupPresentation,
    units: UnitGroup,
    certified: bool,
    minkowski: BigInt,
    relations_found: usize,
}

struct Search<'a> {
    k: &'a CubicField,
    fb: &'a FactorBase,
    lattice: Hnf<SignBits>,
    ulattice: Hnf<Compact>,
    ucols: usize,
    store: ElementStore,
    kernel: Vec<Compact>,
    // orthogonalized logs of the non-torsion units found so far
    span: Vec<Vec<f64>>,
    nontrivial: usize,
    seen: HashSet<OrderCoords>,
    relations: usize,
    stable: usize,
    det: Option<BigInt>,
}

impl Search<'_> {
    fn add(&mut self, x: OrderCoords, s: Sparse) -> Result<()> {
        let a = self.k.from_order(&x);
        let signs = self.k.sign_bits(&a)?;
        let v = self.fb.dense(&s);
        self.lattice.insert(v.clone(), SignBits(signs));
        self.relations += 1;
        let det = self.lattice.determinant();
        if det.is_some() && det == self.det {
            self.stable += 1;
        } else {
            self.stable = 0;
            self.det = det;
        }
        if s.iter().all(|&(c, _)| c < self.ucols) {
            let i = self.store.push(self.k, x)?;
            let pay = Compact::base(&self.store, i);
            if let Some(mut u) = self.ulattice.insert(v[..self.ucols].to_vec(), pay) {
                u.refresh_log(&self.store);
                self.note_unit(u);
            }
        }
        Ok(())
    }

    fn note_unit(&mut self, u: Compact) {
        let norm = u.log.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 0.05 || u.log_err > 1e-4 {
            return;
        }
        self.nontrivial += 1;
        let mut r = u.log.clone();
        for b in &self.span {
            let c = r.iter().zip(b).map(|(x, y)| x * y).sum::<f64>()
                / b.iter().map(|y| y * y).sum::<f64>();
            for (x, y) in r.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        if r.iter().map(|x| x * x).sum::<f64>().sqrt() > 1e-6 * (1.0 + norm) {
            self.span.push(r);
        }
        self.kernel.push(u);
    }

    fn unit(&mut self, x: OrderCoords) -> Result<()> {
        let i = self.store.push(self.k, x)?;
        let u = Compact::base(&self.store, i);
        self.note_unit(u);
        Ok(())
    }

    /// False for elements (up to sign) already processed.
    fn fresh(&mut self, x: &OrderCoords) -> bool {
        let neg = x
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        let key = if neg {
            x.clone().map(|c| -c)
        } else {
            x.clone()
        };
        self.seen.insert(key)
    }

    /// Processes one element of a reduced lattice.
    fn visit(&mut self, lat: &ReducedLattice, x: &[i64]) -> Result<()> {
        let full = lat.element(x);
        if !self.fresh(&full) {
            return Ok(());
        }
        if let Some(e) = lat.element_small(x) {
            if let Some(n) = self.k.norm_small(&e) {
                if n.unsigned_abs() == 1 {
                    return self.unit(e.map(BigInt::from));
                }
                if let Some(s) = self.fb.factor_small(self.k, &e, n) {
                    return self.add(e.map(BigInt::from), s);
                }
                return Ok(());
            }
        }
        let e = full;
        if self.k.norm_int(&e).abs().is_one() {
            return self.unit(e);
        }
        if let Some(s) = self.fb.factor_element(self.k, &e) {
            self.add(e, s)?;
        }
        Ok(())
    }

    /// Elements with `lo < T2 <= hi`.
    fn sweep(&mut self, lat: &ReducedLattice, lo: f64, hi: f64) -> Result<()> {
        let mut pts: Vec<Vec<i64>> = Vec::new();
        lat.short_vectors(hi, |x| {
            if lat.t2(x) > lo {
                pts.push(x.to_vec());
            }
            pts.len() < 200_000
        });
        for x in pts {
            self.visit(lat, &x)?;
        }
        Ok(())
    }

    fn done(&self, rank: usize) -> bool {
        self.lattice.is_full_rank()
            && self.stable >= 24
            && self.span.len() == rank
            && self.nontrivial >= rank + 6
    }
}

impl ClassUnits {
    pub fn compute(k: &CubicField) -> Result<Self> {
        let minkowski = minkowski_bound(k);
        let mb = minkowski
            .to_u64()
            .filter(|&m| m <= MAX_FACTOR_BASE)
            .ok_or_else(|| {
                Error::RelationSearchExhausted(format!(
                    "Minkowski bound {minkowski} exceeds the supported range"
                ))
            })?;
        let fb = FactorBase::new(k, mb.max(MIN_FACTOR_BASE))?;
        let n = fb.len();
        let ucols = fb
            .primes
            .iter()
            .take_while(|p| p.norm() <= BigInt::from(UNIT_BASE_NORM))
            .count();
        let o_lat = ReducedLattice::new(k, &IdealHnf::unit());
        let mut s = Search {
            k,
            fb: &fb,
            lattice: Hnf::new(n),
            ulattice: Hnf::new(ucols),
            ucols,
            store: ElementStore::default(),
            kernel: Vec::new(),
            span: Vec::new(),
            nontrivial: 0,
            seen: HashSet::new(),
            relations: 0,
            stable: 0,
            det: None,
        };
        let rank = k.unit_rank();
        let t2_min = o_lat.t2(&[1, 0, 0]).min(o_lat.t2(&[0, 1, 0])).max(3.0);
        let mut hi = 4.0 * t2_min;
        let mut lo = 0.0;
        let mut col_hi: Vec<f64> = vec![0.0; n];
        let prime_lats: Vec<ReducedLattice> = fb
            .primes
            .iter()
            .map(|p| ReducedLattice::new(k, p.ideal()))
            .collect();
        let mut round = 0;
        while !s.done(rank) {
            round += 1;
            if round > MAX_ROUNDS {
                return Err(Error::RelationSearchExhausted(format!(
                    "{} relations, rank {} of {n}, units of rank {} of {rank}",
                    s.relations,
                    s.lattice.rank(),
                    s.span.len()
                )));
            }
            s.sweep(&o_lat, lo, hi)?;
            lo = hi;
            hi *= 1.5;
            for c in 0..n {
                if round == 1 || s.lattice.row(c).is_none() {
                    let lat = &prime_lats[c];
                    let start = col_hi[c];
                    let first = lat.t2(&[1, 0, 0]);
                    let top = if start == 0.0 {
                        4.0 * first
                    } else {
                        start * 1.5
                    };
                    s.sweep(lat, start, top)?;
                    col_hi[c] = top;
                }
            }
        }
        let mut lattice = s.lattice;
        let kernel = s.kernel;
        let relations_found = s.relations;
        let mut store = s.store;
        let units = UnitBuilder {
            k,
            store: &mut store,
            char_start: fb.bound.max(1000),
        }
        .build(kernel)?;
        lattice.normalize();
        let group =
            AbelianGroupPresentation::from_hnf(lattice.rows().map(|(_, v, _)| v.clone()).collect());
        let mut cu = ClassUnits {
            field: k.clone(),
            fb,
            o_lat,
            lattice,
            group,
            units,
            certified: false,
            minkowski,
            relations_found,
        };
        cu.certify()?;
        Ok(cu)
    }

    /// Proves `Z^S / L ≅ Cl` line by line, adding any relation found.
    fn certify(&mut self) -> Result<()> {
        'restart: loop {
            let order = self.group.order();
            let ells = crate::exact_arith::factor_integer(&order)?;
            for (ell, _) in ells {
                let l = ell
                    .to_u64()
                    .ok_or_else(|| Error::Inconsistent("class number prime too large".into()))?;
                let basis = self.group.torsion_basis(l);
                let lines = line_representatives(l, basis.len());
                if lines.len() > 50_000 {
                    return Ok(());
                }
                for coeffs in lines {
                    let mut c = vec![BigInt::zero(); self.group.elementary_divisors().len()];
                    for (ci, b) in coeffs.iter().zip(&basis) {
                        for (x, y) in c.iter_mut().zip(b) {
                            *x += BigInt::from(*ci) * y;
                        }
                    }
                    let exps = self.group.element(&c);
                    let (j, rho) = self.ideal_of_exponents(&exps);
                    if let Some(a) =
                        principal::find_generator(&self.field, self.units.log_embeddings(), &j)
                    {
                        // ∏ P^exps = (ρ·α): a relation the search missed
                        let g = self.field.mul(&rho, &self.field.from_order(&a));
                        let signs = self.field.sign_bits(&g)?;
                        self.lattice.insert(exps, SignBits(signs));
                        self.lattice.normalize();
                        self.group = AbelianGroupPresentation::from_hnf(
                            self.lattice.rows().map(|(_, v, _)| v.clone()).collect(),
                        );
                        continue 'restart;
                    }
                }
            }
            self.certified = true;
            return Ok(());
        }
    }

    /// A small integral `J` and `ρ` with `∏ P_c^{e_c} = ρ·J`.
    fn ideal_of_exponents(&self, exps: &[BigInt]) -> (IdealHnf, FieldElement) {
        let k = &self.field;
        let limit = BigInt::from(10) * (k.field_disc().abs().sqrt() + 1u32) + 100u32;
        let mut j = IdealHnf::unit();
        let mut rho = FieldElement::one();
        for (c, e) in exps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let p = &self.fb.primes[c];
            let base = if e.is_positive() {
                p.ideal().clone()
            } else {
                // p·P^{-1} is integral and in the inverse class
                let inv = k.ideal_inverse(p.ideal());
                rho = rho.scale(
                    &BigRat::new(BigInt::one(), p.p().clone()).pow(e.magnitude().to_i32().unwrap()),
                );
                inv.scale(&BigRat::from_integer(p.p().clone()))
            };
            let times = e.magnitude().to_u64().expect("reduced exponents are small");
            for _ in 0..times {
                j = k.ideal_mul(&j, &base);
                if j.norm_int() > limit {
                    let (j2, r2) = reduce_in_class(k, &j);
                    j = j2;
                    rho = k.mul(&rho, &r2);
                }
            }
        }
        if j.norm_int() > limit {
            let (j2, r2) = reduce_in_class(k, &j);
            j = j2;
            rho = k.mul(&rho, &r2);
        }
        (j, rho)
    }

    pub fn field(&self) -> &CubicField {
        &self.field
    }

    pub fn minkowski_bound(&self) -> &BigInt {
        &self.minkowski
    }

    /// Number of prime ideals in the factor base.
    pub fn factor_base_size(&self) -> usize {
        self.fb.len()
    }

    pub fn relations_found(&self) -> usize {
        self.relations_found
    }

    /// True when the class group is proved to equal the computed quotient.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn unit_group(&self) -> &UnitGroup {
        &self.units
    }

    pub fn class_group(&self) -> IdealClassGroup {
        let generators = self
            .group
            .generators()
            .iter()
            .map(|g| self.exact_ideal(g, &[], 0))
            .collect();
        IdealClassGroup {
            presentation: self.group.clone(),
            generators,
            sign_columns: 0,
            realizers: Vec::new(),
            certified: self.certified,
        }
    }

    /// `∏ (γ_j)^{e_j} · ∏ P_c^{e_c}` for an exponent vector whose first
    /// `s` entries refer to the realizers.
    fn exact_ideal(&self, exps: &[BigInt], realizers: &[FieldElement], s: usize) -> IdealHnf {
        let k = &self.field;
        let mut out = IdealHnf::unit();
        for (j, e) in exps[..s].iter().enumerate() {
            if !e.is_zero() {
                let g = k
                    .principal_ideal(&realizers[j])
                    .expect("realizers are nonzero");
                out = k.ideal_mul(&out, &k.ideal_pow(&g, e.to_i64().expect("small exponent")));
            }
        }
        for (c, e) in exps[s..].iter().enumerate() {
            if !e.is_zero() {
                let p = self.fb.primes[c].ideal();
                out = k.ideal_mul(&out, &k.ideal_pow(p, e.to_i64().expect("small exponent")));
            }
        }
        out
    }

    /// Sign bits of `-1` and of the fundamental units.
    fn unit_sign_bits(&self) -> Vec<u8> {
        let all = ((1u16 << self.field.r1()) - 1) as u8;
        std::iter::once(all)
            .chain(self.units.sign_bits().iter().copied())
            .collect()
    }

    /// The class group of ideals modulo principal ideals `(α)` with
    /// `map(sign bits of α) = 0`, where `map` sends sign bits at the real
    /// places to `columns` bits and is linear over F2.
    pub fn signed_class_group(
        &self,
        columns: usize,
        map: &dyn Fn(u8) -> u8,
    ) -> Result<IdealClassGroup> {
        let n = self.fb.len();
        let s = columns;
        let row = |bits: u8, v: &[BigInt]| -> Vec<BigInt> {
            let m = map(bits);
            let mut r: Vec<BigInt> = (0..s).map(|j| BigInt::from(m >> j & 1)).collect();
            r.extend(v.iter().cloned());
            r
        };
        let zero = vec![BigInt::zero(); n];
        let mut rows: Vec<Vec<BigInt>> = self.lattice.rows().map(|(_, v, p)| row(p.0, v)).collect();
        rows.extend(self.unit_sign_bits().into_iter().map(|b| row(b, &zero)));
        for j in 0..s {
            let mut r = vec![BigInt::zero(); s + n];
            r[j] = BigInt::from(2);
            rows.push(r);
        }
        let presentation = AbelianGroupPresentation::from_relations(s + n, rows)?;
        let realizers = (0..s)
            .map(|j| self.realizer(map, 1 << j, s))
            .collect::<Result<Vec<_>>>()?;
        let generators = presentation
            .generators()
            .iter()
            .map(|g| self.exact_ideal(g, &realizers, s))
            .collect();
        Ok(IdealClassGroup {
            presentation,
            generators,
            sign_columns: s,
            realizers,
            certified: self.certified,
        })
    }

    /// `Cl_+`: ideals modulo totally positive principal ideals.
    pub fn narrow_class_group(&self) -> Result<IdealClassGroup> {
        self.signed_class_group(self.field.r1(), &|b| b)
    }

    /// A small element `γ` with `map(sign bits of γ) = target`.
    fn realizer(&self, map: &dyn Fn(u8) -> u8, target: u8, s: usize) -> Result<FieldElement> {
        let k = &self.field;
        let mut hi = 4.0 * self.o_lat.t2(&[1, 0, 0]).max(3.0);
        for _ in 0..30 {
            let mut hit: Option<OrderCoords> = None;
            self.o_lat.short_vectors(hi, |x| {
                let e = self.o_lat.element(x);
                for cand in [e.clone(), e.clone().map(|c| -c)] {
                    if let Ok(b) = k.sign_bits(&k.from_order(&cand)) {
                        if map(b) == target {
                            hit = Some(cand);
                            return false;
                        }
                    }
                }
                true
            });
            if let Some(e) = hit {
                return Ok(k.from_order(&e));
            }
            hi *= 2.0;
        }
        Err(Error::RealizerNotFound {
            pattern: (0..s)
                .map(|j| if target >> j & 1 == 1 { -1 } else { 1 })
                .collect(),
        })
    }

    /// Writes an integral ideal `A` as `(β) · ∏P^{-r} · J^{-1}` with `J`
    /// smooth, returning `β` and the exponent vector `-r - v(J)` of `[A]`.
    fn smooth_class(&self, a: &IdealHnf) -> Result<(FieldElement, Vec<BigInt>)> {
        let k = &self.field;
        let (a, _) = k.integral_part(a);
        let n = self.fb.len();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let small_cols = n.min(8);
        for attempt in 0..400 {
            let mut r = vec![0i64; n];
            let mut b = a.clone();
            if attempt > 0 {
                for _ in 0..1 + attempt / 40 {
                    let c = rng.gen_range(0..small_cols);
                    r[c] += 1;
                    b = k.ideal_mul(&b, self.fb.primes[c].ideal());
                }
            }
            let lat = ReducedLattice::new(k, &b);
            let binv = k.ideal_inverse(&b);
            let mut cands: Vec<OrderCoords> = lat.basis.clone();
            lat.short_vectors(lat.t2(&[1, 0, 0]) * 2.5, |x| {
                cands.push(lat.element(x));
                cands.len() < 24
            });
            for beta in cands {
                let fe = k.from_order(&beta);
                let j = k.ideal_mul(&k.principal_ideal(&fe)?, &binv);
                if let Some(sv) = self.fb.factor_ideal(k, &j) {
                    let mut v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(-x)).collect();
                    for (c, e) in sv {
                        v[c] -= e;
                    }
                    return Ok((fe, v));
                }
            }
        }
        Err(Error::RelationSearchExhausted(
            "no smooth representative for an ideal class".into(),
        ))
    }

    /// Coordinates of the class of `a` on the cyclic generators of `Cl`.
    pub fn class_of(&self, a: &IdealHnf) -> Result<Vec<BigInt>> {
        let (_, v) = self.smooth_class(a)?;
        Ok(self.group.coordinates(&v))
    }

    /// Coordinates of `a` in a group from `signed_class_group`.
    pub fn signed_class_of(
        &self,
        g: &IdealClassGroup,
        map: &dyn Fn(u8) -> u8,
        a: &IdealHnf,
    ) -> Result<Vec<BigInt>> {
        let (beta, v) = self.smooth_class(a)?;
        let bits = map(self.field.sign_bits(&beta)?);
        let mut x: Vec<BigInt> = (0..g.sign_columns)
            .map(|j| BigInt::from(bits >> j & 1))
            .collect();
        x.extend(v);
        Ok(g.presentation.coordinates(&x))
    }

    /// A generator of `a`, reduced by the units, or `None` when `a` is not
    /// principal.
    pub fn is_principal(&self, a: &IdealHnf) -> Result<Option<FieldElement>> {
        let k = &self.field;
        let (j, rho) = reduce_in_class(k, a);
        let Some(g) = principal::find_generator(k, self.units.log_embeddings(), &j) else {
            return Ok(None);
        };
        let alpha = k.mul(&rho, &k.from_order(&g));
        let alpha = self.reduce_by_units(&alpha)?;
        if k.principal_ideal(&alpha)? != *a {
            return Err(Error::Inconsistent(
                "principal generator does not generate the ideal".into(),
            ));
        }
        Ok(Some(alpha))
    }

    /// Multiplies `α` by the unit that brings its centered log embedding
    /// closest to zero (Babai rounding on the unit lattice).
    pub fn reduce_by_units(&self, alpha: &FieldElement) -> Result<FieldElement> {
        let k = &self.field;
        let log = accurate_log(k, alpha)?;
        let total: f64 = log.iter().sum();
        let r1 = k.r1();
        let centered: Vec<f64> = log
            .iter()
            .enumerate()
            .map(|(i, l)| l - total / 3.0 * if i < r1 { 1.0 } else { 2.0 })
            .collect();
        let logs = self.units.log_embeddings();
        let c = units_coords(logs, &centered);
        let mut out = alpha.clone();
        for (t, u) in c.iter().zip(self.units.fundamental_units()) {
            let e = t.round() as i64;
            if e != 0 {
                let base = if e > 0 { k.inv(u)? } else { u.clone() };
                out = k.mul(&out, &k.pow(&base, e.unsigned_abs()));
            }
        }
        Ok(out)
    }
}

fn units_coords(logs: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    let n = logs.len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let g: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| dot(&logs[i], &logs[j])).collect())
        .collect();
    let r: Vec<f64> = logs.iter().map(|l| dot(l, v)).collect();
    match n {
        1 => vec![r[0] / g[0][0]],
        2 => {
            let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
            vec![
                (r[0] * g[1][1] - r[1] * g[0][1]) / det,
                (g[0][0] * r[1] - g[1][0] * r[0]) / det,
            ]
        }
        _ => Vec::new(),
    }
}

/// Coefficient vectors of one representative per line of `F_ell^dim`.
fn line_representatives(ell: u64, dim: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..dim {
        let free = dim - lead - 1;
        let count = ell
            .checked_pow(free as u32)
            .unwrap_or(u64::MAX)
            .min(1 << 20);
        for idx in 0..count {
            let mut v = vec![0u64; dim];
            v[lead] = 1;
            let mut t = idx;
            for x in v.iter_mut().skip(lead + 1) {
                *x = t % ell;
                t /= ell;
            }
            out.push(v);
        }
    }
    out
}

/// The class group of the maximal order.
pub fn class_group(k: &CubicField) -> Result<IdealClassGroup> {
    Ok(ClassUnits::compute(k)?.class_group())
}

/// The unit group, saturated and (when possible) certified fundamental.
pub fn unit_group(k: &CubicField) -> Result<UnitGroup> {
    Ok(ClassUnits::compute(k)?.unit_group().clone())
}

pub fn narrow_class_group(k: &CubicField) -> Result<IdealClassGroup> {
    ClassUnits::compute(k)?.narrow_class_group()
}

pub fn is_principal(k: &CubicField, i: &IdealHnf) -> Result<Option<FieldElement>> {
    ClassUnits::compute(k)?.is_principal(i)
}
