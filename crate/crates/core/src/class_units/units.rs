//! Unit groups: reduction of the unit log lattice, saturation at small
//! primes through power-residue characters, and a certificate of
//! fundamentality from a lower bound on the regulator.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::compact::{materialize_unit, unit_root, Compact, ElementStore, SplitPrime};
use crate::cubic_field::{CubicField, FieldElement, OrderCoords};
use crate::error::{Error, Result};
use crate::exact_arith::lattice::{lll_real, RowPayload};
use crate::exact_arith::modp::Fp;
use crate::exact_arith::{is_prime, primes_up_to};

/// Logs of a non-torsion unit have norm well above this (the smallest
/// Mahler measure of a cubic unit is about 1.3247).
const TORSION_LOG: f64 = 0.05;
/// Saturation is attempted at every prime up to this size at most.
const MAX_SATURATION_PRIME: u32 = 1000;
/// Half-width of the coefficient box searched for small units.
pub const UNIT_BOX: i64 = 20;

/// `O^× = {±1} × ⟨ε_1, …, ε_r⟩`.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    rank: usize,
    fundamental: Vec<FieldElement>,
    logs: Vec<Vec<f64>>,
    signs: Vec<u8>,
    regulator: f64,
    regulator_lower_bound: f64,
    saturated_at: Vec<u32>,
    fundamental_certified: bool,
    box_units: usize,
}

impl UnitGroup {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The torsion subgroup is `{±1}` for every cubic field.
    pub fn torsion_order(&self) -> u32 {
        2
    }

    pub fn fundamental_units(&self) -> &[FieldElement] {
        &self.fundamental
    }

    /// Log embeddings of the fundamental units (complex place doubled).
    pub fn log_embeddings(&self) -> &[Vec<f64>] {
        &self.logs
    }

    /// Sign bits at the real places (bit i set for a negative embedding).
    pub fn sign_bits(&self) -> &[u8] {
        &self.signs
    }

    /// Signatures as `±1` vectors at the `r1` real places.
    pub fn signatures(&self, r1: usize) -> Vec<Vec<i8>> {
        self.signs
            .iter()
            .map(|&b| {
                (0..r1)
                    .map(|i| if b >> i & 1 == 1 { -1 } else { 1 })
                    .collect()
            })
            .collect()
    }

    pub fn regulator(&self) -> f64 {
        self.regulator
    }

    /// Unconditional lower bound for the regulator of the field.
    pub fn regulator_lower_bound(&self) -> f64 {
        self.regulator_lower_bound
    }

    /// Primes at which the unit lattice was proved saturated.
    pub fn saturated_primes(&self) -> &[u32] {
        &self.saturated_at
    }

    pub fn two_saturated(&self) -> bool {
        self.saturated_at.contains(&2)
    }

    /// True when the units are proved fundamental: saturated at every
    /// prime below `regulator / regulator_lower_bound`.
    pub fn fundamental_certified(&self) -> bool {
        self.fundamental_certified
    }

    /// Units found by the coefficient-box search, all of which lie in the
    /// lattice spanned by the fundamental units.
    pub fn box_units_checked(&self) -> usize {
        self.box_units
    }
}

/// Lower bound for the regulator: `(1/16) log²(D/4)` for totally real
/// cubic fields (Cusick) and `max(log 1.3247, (1/3) log((|D| - 24)/4))`
/// for complex cubic fields (Artin's `|D| < 4ε³ + 24`).
pub fn regulator_lower_bound(k: &CubicField) -> f64 {
    let d = k.field_disc().abs().to_f64().unwrap_or(f64::INFINITY);
    if k.r1() == 3 {
        let l = (d / 4.0).ln();
        l * l / 16.0
    } else {
        let smyth = 1.324_717_957_f64.ln();
        if d > 28.0 {
            smyth.max(((d - 24.0) / 4.0).ln() / 3.0)
        } else {
            smyth
        }
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Real coordinates of `v` in the span of `basis` (least squares).
fn coords_in(basis: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    let n = basis.len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut g: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| dot(&basis[i], &basis[j])).collect())
        .collect();
    let mut rhs: Vec<f64> = basis.iter().map(|b| dot(b, v)).collect();
    // Gaussian elimination with partial pivoting on a tiny system
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| g[a][c].abs().total_cmp(&g[b][c].abs()))
            .unwrap();
        g.swap(c, p);
        rhs.swap(c, p);
        for r in c + 1..n {
            let f = g[r][c] / g[c][c];
            for k in c..n {
                g[r][k] -= f * g[c][k];
            }
            rhs[r] -= f * rhs[c];
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = (c + 1..n).map(|k| g[c][k] * x[k]).sum();
        x[c] = (rhs[c] - s) / g[c][c];
    }
    x
}

fn residual(basis: &[Vec<f64>], v: &[f64]) -> f64 {
    if basis.is_empty() {
        return norm2(v);
    }
    let c = coords_in(basis, v);
    let mut r = v.to_vec();
    for (ci, b) in c.iter().zip(basis) {
        for (x, y) in r.iter_mut().zip(b) {
            *x -= ci * y;
        }
    }
    norm2(&r)
}

/// Basis of the lattice spanned by the log vectors of `units`, found by
/// repeatedly exchanging a basis vector with a dependent vector whose
/// fractional coordinate is largest (each exchange halves the covolume).
pub(crate) fn reduce_units(
    store: &ElementStore,
    rank: usize,
    units: Vec<Compact>,
) -> Result<Vec<Compact>> {
    let mut basis: Vec<Compact> = Vec::new();
    let mut queue: VecDeque<Compact> = units.into_iter().filter(|u| u.log_err < 1e-4).collect();
    let mut guard = 0;
    while let Some(mut u) = queue.pop_front() {
        loop {
            guard += 1;
            if guard > 20_000 {
                return Err(Error::Inconsistent(
                    "unit lattice reduction does not terminate".into(),
                ));
            }
            if norm2(&u.log) < TORSION_LOG {
                break;
            }
            let logs: Vec<Vec<f64>> = basis.iter().map(|b| b.log.clone()).collect();
            if basis.len() < rank && residual(&logs, &u.log) > 1e-6 * (1.0 + norm2(&u.log)) {
                basis.push(u);
                break;
            }
            let c = coords_in(&logs, &u.log);
            for (ci, b) in c.iter().zip(&basis) {
                let q = ci.round();
                if q != 0.0 {
                    u = Compact::combine(&u, &BigInt::one(), b, &-BigInt::from(q as i64));
                }
            }
            u.refresh_log(store);
            if norm2(&u.log) < TORSION_LOG {
                break;
            }
            let frac: Vec<f64> = c.iter().map(|x| x - x.round()).collect();
            let j = (0..frac.len())
                .max_by(|&a, &b| frac[a].abs().total_cmp(&frac[b].abs()))
                .unwrap();
            if frac[j].abs() < 1e-9 {
                return Err(Error::Inconsistent(
                    "unit log coordinates are numerically unstable".into(),
                ));
            }
            std::mem::swap(&mut u, &mut basis[j]);
        }
    }
    lll_units(store, &mut basis);
    Ok(basis)
}

fn lll_units(store: &ElementStore, basis: &mut [Compact]) {
    let n = basis.len();
    let mut logs: Vec<Vec<f64>> = basis.iter().map(|b| b.log.clone()).collect();
    let mut t: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    lll_real(&mut logs, &mut t);
    let old = basis.to_vec();
    for (i, ti) in t.iter().enumerate() {
        let mut c = Compact::one(old[0].log.len());
        for (j, &e) in ti.iter().enumerate() {
            if e != 0 {
                c = Compact::combine(&c, &BigInt::one(), &old[j], &BigInt::from(e));
            }
        }
        c.refresh_log(store);
        basis[i] = c;
    }
}

/// `|det|` of the log matrix with the last place dropped.
pub(crate) fn regulator_of(logs: &[Vec<f64>]) -> f64 {
    match logs.len() {
        0 => 1.0,
        1 => logs[0][0].abs(),
        2 => (logs[0][0] * logs[1][1] - logs[0][1] * logs[1][0]).abs(),
        _ => unreachable!("cubic fields have unit rank at most 2"),
    }
}

/// A degree-one prime `(q, θ - r)` used for power-residue characters.
struct CharacterPrime {
    fp: Fp,
    omega: [u64; 3],
}

impl CharacterPrime {
    fn residue(&self, x: &OrderCoords) -> u64 {
        (0..3).fold(0, |acc, i| {
            self.fp
                .add(acc, self.fp.mul(self.fp.reduce(&x[i]), self.omega[i]))
        })
    }
}

fn character_primes(k: &CubicField, ell: u32, start: u64, count: usize) -> Vec<CharacterPrime> {
    let basis = k.integral_basis();
    let bad = k.poly_disc() * &basis.den;
    let step = u64::from(ell);
    let mut q = (start / step + 1) * step + 1;
    let mut out = Vec::new();
    while out.len() < count {
        let bq = BigInt::from(q);
        if q % 2 == 1 && is_prime(&bq) && !(&bad % &bq).is_zero() {
            let fp = Fp::new(q);
            for r in fp.roots(&fp.poly(k.poly())) {
                let dinv = fp.inv(fp.reduce(&basis.den));
                let omega = std::array::from_fn(|i| {
                    let v = fp.add(
                        fp.reduce(&basis.num[i][0]),
                        fp.add(
                            fp.mul(fp.reduce(&basis.num[i][1]), r),
                            fp.mul(fp.reduce(&basis.num[i][2]), fp.mul(r, r)),
                        ),
                    );
                    fp.mul(v, dinv)
                });
                out.push(CharacterPrime { fp, omega });
            }
        }
        q += step;
    }
    out
}

/// Discrete log of `x^{(q-1)/ell}` in `μ_ell`, or `None` if `x ≡ 0`.
fn power_character(cp: &CharacterPrime, x: u64, ell: u32) -> Option<u64> {
    let fp = &cp.fp;
    if x == 0 {
        return None;
    }
    let e = (fp.p - 1) / u64::from(ell);
    let w = fp.pow(x, e);
    let zeta = (2..).map(|h| fp.pow(h, e)).find(|&z| z != 1).unwrap();
    let mut z = 1;
    for k in 0..u64::from(ell) {
        if z == w {
            return Some(k);
        }
        z = fp.mul(z, zeta);
    }
    None
}

pub(crate) struct UnitBuilder<'a> {
    pub k: &'a CubicField,
    pub store: &'a mut ElementStore,
    pub char_start: u64,
}

impl UnitBuilder<'_> {
    /// Reduces a list of compact units to exact basis units, stored as
    /// base elements.
    fn exact_basis(&mut self, units: Vec<Compact>) -> Result<Vec<Compact>> {
        let rank = self.k.unit_rank();
        let basis = reduce_units(self.store, rank, units)?;
        if basis.len() < rank {
            return Err(Error::RelationSearchExhausted(format!(
                "found {} of {rank} independent units",
                basis.len()
            )));
        }
        let sp = SplitPrime::find(self.k, 1 << 24, |_| true);
        let mut out = Vec::with_capacity(rank);
        for b in basis {
            let x = materialize_unit(self.k, self.store, &b, &sp)
                .ok_or_else(|| Error::Inconsistent("cannot multiply out a unit".into()))?;
            let signs = b.signs;
            let mut log = b.log.clone();
            // exact coordinates give a fresh, more accurate log when they fit
            if let Ok(l) = super::compact::accurate_log(self.k, &self.k.from_order(&x)) {
                if l.iter().all(|v| v.is_finite()) {
                    log = l;
                }
            }
            let i = self.store.push_with(x, log, signs);
            out.push(Compact::base(self.store, i));
        }
        Ok(out)
    }

    fn box_units(&mut self) -> Result<Vec<Compact>> {
        let mut out = Vec::new();
        let b = UNIT_BOX;
        if self.k.norm_small(&[1, 0, 0]).is_none() {
            return Ok(out);
        }
        for x0 in -b..=b {
            for x1 in -b..=b {
                for x2 in 0..=b {
                    if x2 == 0 && (x1 < 0 || (x1 == 0 && x0 <= 1)) {
                        continue;
                    }
                    let x = [x0, x1, x2];
                    if self.k.norm_small(&x).map(|n| n.abs()) == Some(1) {
                        let i = self.store.push(self.k, x.map(BigInt::from))?;
                        out.push(Compact::base(self.store, i));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Looks for a nontrivial `ell`-th power among products of the current
    /// units (and `-1` when `ell = 2`); returns its root if found.
    fn find_root(&mut self, basis: &[Compact], ell: u32) -> Result<Option<Compact>> {
        let places = basis[0].log.len();
        let mut gens: Vec<Compact> = Vec::new();
        if ell == 2 {
            let i = self
                .store
                .push(self.k, [BigInt::from(-1), BigInt::zero(), BigInt::zero()])?;
            let mut m = Compact::base(self.store, i);
            m.log = vec![0.0; places];
            gens.push(m);
        }
        gens.extend(basis.iter().cloned());
        let fp = Fp::new(u64::from(ell));
        let mut cols: Vec<Vec<u64>> = Vec::new();
        let mut tried = 0usize;
        let mut start = self.char_start;
        loop {
            let cps = character_primes(self.k, ell, start, 8);
            start = cps.last().map(|c| c.fp.p).unwrap_or(start) + 1;
            for cp in &cps {
                let mut col = Vec::with_capacity(gens.len());
                for g in &gens {
                    let r = g.exps.iter().try_fold(1u64, |acc, (i, e)| {
                        let x = cp.residue(&self.store.get(*i).coords);
                        if x == 0 {
                            return None;
                        }
                        let base = if e.is_negative() { cp.fp.inv(x) } else { x };
                        let ee = (e.abs() % BigInt::from(cp.fp.p - 1)).to_u64().unwrap();
                        Some(cp.fp.mul(acc, cp.fp.pow(base, ee)))
                    });
                    match r.and_then(|r| power_character(cp, r, ell)) {
                        Some(c) => col.push(c),
                        None => break,
                    }
                }
                if col.len() == gens.len() {
                    cols.push(col);
                }
            }
            tried += cps.len();
            let rows: Vec<Vec<u64>> = (0..gens.len())
                .map(|g| cols.iter().map(|c| c[g]).collect())
                .collect();
            let kernel = fp.left_kernel(&rows);
            if kernel.is_empty() {
                return Ok(None);
            }
            if cols.len() >= gens.len() + 12 {
                for a in &kernel {
                    let mut w = Compact::one(places);
                    for (ai, g) in a.iter().zip(&gens) {
                        if *ai != 0 {
                            w = Compact::combine(&w, &BigInt::one(), g, &BigInt::from(*ai));
                        }
                    }
                    w.refresh_log(self.store);
                    if let Some(x) = unit_root(self.k, self.store, &w, ell) {
                        let log: Vec<f64> = w.log.iter().map(|l| l / ell as f64).collect();
                        let signs = self.k.sign_bits(&self.k.from_order(&x))?;
                        let i = self.store.push_with(x, log, signs);
                        return Ok(Some(Compact::base(self.store, i)));
                    }
                }
                if tried > 400 {
                    return Err(Error::Inconsistent(format!(
                        "{ell}-saturation: characters do not separate"
                    )));
                }
            }
        }
    }

    pub fn build(mut self, kernel: Vec<Compact>) -> Result<UnitGroup> {
        let k = self.k;
        let rank = k.unit_rank();
        let mut basis = self.exact_basis(kernel)?;
        let extra = self.box_units()?;
        let box_units = extra.len();
        if !extra.is_empty() {
            let mut all = basis.clone();
            all.extend(extra);
            basis = self.exact_basis(all)?;
        }
        let lower = regulator_lower_bound(k);
        let mut saturated: Vec<u32> = Vec::new();
        let mut certified = false;
        loop {
            let reg = regulator_of(&basis.iter().map(|b| b.log.clone()).collect::<Vec<_>>());
            let limit = (reg / lower).floor().max(7.0);
            if limit > MAX_SATURATION_PRIME as f64 {
                saturate_fixed(&mut self, &mut basis, &mut saturated, MAX_SATURATION_PRIME)?;
                break;
            }
            let before = basis.iter().map(|b| b.exps.clone()).collect::<Vec<_>>();
            saturate_fixed(&mut self, &mut basis, &mut saturated, limit as u32)?;
            let after = basis.iter().map(|b| b.exps.clone()).collect::<Vec<_>>();
            if before == after {
                // every prime up to reg/lower is saturated, so the index is one
                certified = true;
                break;
            }
        }
        let logs: Vec<Vec<f64>> = basis.iter().map(|b| b.log.clone()).collect();
        let regulator = regulator_of(&logs);
        let fundamental = basis
            .iter()
            .map(|b| k.from_order(&self.store.get(b.exps[0].0).coords))
            .collect();
        let signs = basis.iter().map(|b| b.signs).collect();
        saturated.sort_unstable();
        saturated.dedup();
        Ok(UnitGroup {
            rank,
            fundamental,
            logs,
            signs,
            regulator,
            regulator_lower_bound: lower,
            saturated_at: saturated,
            fundamental_certified: certified,
            box_units,
        })
    }
}

/// Saturates at every prime up to `limit`, restarting when a root is found.
fn saturate_fixed(
    b: &mut UnitBuilder<'_>,
    basis: &mut Vec<Compact>,
    done: &mut Vec<u32>,
    limit: u32,
) -> Result<()> {
    let primes: Vec<u32> = primes_up_to(u64::from(limit))
        .into_iter()
        .map(|p| p as u32)
        .collect();
    let mut i = 0;
    while i < primes.len() {
        let ell = primes[i];
        match b.find_root(basis, ell)? {
            None => {
                if !done.contains(&ell) {
                    done.push(ell);
                }
                i += 1;
            }
            Some(root) => {
                let mut all = basis.clone();
                all.push(root);
                *basis = b.exact_basis(all)?;
                // the lattice grew; earlier primes must be rechecked
                done.clear();
                i = 0;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::IntPolynomial;

    fn unit_group_from(k: &CubicField, units: &[[i64; 3]]) -> UnitGroup {
        let mut store = ElementStore::default();
        let cs: Vec<Compact> = units
            .iter()
            .map(|u| {
                let i = store.push(k, u.map(BigInt::from)).unwrap();
                Compact::base(&store, i)
            })
            .collect();
        UnitBuilder {
            k,
            store: &mut store,
            char_start: 1000,
        }
        .build(cs)
        .unwrap()
    }

    #[test]
    fn saturation_recovers_fundamental_unit_from_a_power() {
        // θ^3 - θ - 1: θ is fundamental with regulator log(1.3247...)
        let k = CubicField::new(&IntPolynomial::monic_cubic(0, -1, -1)).unwrap();
        let theta5 = k.to_order(&k.pow(&FieldElement::theta(), 5)).unwrap();
        let x: [i64; 3] = theta5.clone().map(|c| c.to_i64().unwrap());
        let u = unit_group_from(&k, &[x]);
        assert!((u.regulator() - 1.324_717_957_f64.ln()).abs() < 1e-9);
        assert!(u.fundamental_certified());
        assert!(u.two_saturated());
    }

    #[test]
    fn exchange_reduction_finds_the_lattice() {
        let k = CubicField::new(&IntPolynomial::monic_cubic(0, -7, 3)).unwrap();
        let mut store = ElementStore::default();
        // collect all units in a small box, feed powers and products
        let mut units = Vec::new();
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in -6i64..=6 {
                    if k.norm_small(&[a, b, c]).map(|n| n.abs()) == Some(1) && (b, c) != (0, 0) {
                        units.push([a, b, c]);
                    }
                }
            }
        }
        assert!(units.len() >= 4);
        let cs: Vec<Compact> = units
            .iter()
            .map(|u| {
                let i = store.push(&k, u.map(BigInt::from)).unwrap();
                Compact::base(&store, i).pow(&BigInt::from(6))
            })
            .collect();
        let basis = reduce_units(&store, 2, cs).unwrap();
        assert_eq!(basis.len(), 2);
        let reg6 = regulator_of(&basis.iter().map(|b| b.log.clone()).collect::<Vec<_>>());
        let g = unit_group_from(&k, &units);
        // sixth powers span a sublattice of index 36
        assert!(
            (reg6 / g.regulator() - 36.0).abs() < 1e-6,
            "{reg6} {}",
            g.regulator()
        );
        assert!(g.regulator() >= g.regulator_lower_bound());
    }
}
