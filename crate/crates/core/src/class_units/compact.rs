//! Elements kept as power products of stored base elements, and their exact
//! recovery by Chinese remaindering at primes that split completely.
//!
//! A unit found as a combination of relations can have enormous height
//! when multiplied out, yet its logarithmic embedding and its residues
//! modulo any prime coprime to the base elements are cheap to obtain. The
//! residues at the three degree-1 primes above a split `q`, lifted to
//! `q^k`, determine the element once `q^k` exceeds a bound derived from
//! the logarithms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cubic_field::{CubicField, FieldElement, OrderCoords};
use crate::error::{Error, Result};
use crate::exact_arith::lattice::RowPayload;
use crate::exact_arith::modp::Fp;
use crate::exact_arith::padic::{hensel_lift, mod_inverse};
use crate::exact_arith::{is_prime, BigRat};

/// Natural log of `|n|` for integers of any size.
pub(crate) fn ln_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (n.abs() >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log|σ(x)|` per place (complex place doubled) with the most cancelling
/// entry recomputed from the exact norm.
pub(crate) fn accurate_log(k: &CubicField, a: &FieldElement) -> Result<Vec<f64>> {
    let mut l = k.log_embedding(a);
    let n = k.norm(a);
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ln = ln_abs(n.numer()) - ln_abs(n.denom());
    let (imin, _) = l.iter().enumerate().fold(
        (0, f64::INFINITY),
        |b, (i, &v)| if v < b.1 { (i, v) } else { b },
    );
    let rest: f64 = l
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != imin)
        .map(|(_, v)| v)
        .sum();
    l[imin] = ln - rest;
    Ok(l)
}

#[derive(Clone, Debug)]
pub(crate) struct BaseElement {
    pub coords: OrderCoords,
    pub log: Vec<f64>,
    pub signs: u8,
}

/// Append-only table of the elements that compact products refer to.
#[derive(Clone, Debug, Default)]
pub(crate) struct ElementStore {
    elems: Vec<BaseElement>,
}

impl ElementStore {
    pub fn push(&mut self, k: &CubicField, coords: OrderCoords) -> Result<u32> {
        let a = k.from_order(&coords);
        let log = accurate_log(k, &a)?;
        let signs = k.sign_bits(&a)?;
        Ok(self.push_with(coords, log, signs))
    }

    pub fn push_with(&mut self, coords: OrderCoords, log: Vec<f64>, signs: u8) -> u32 {
        self.elems.push(BaseElement { coords, log, signs });
        (self.elems.len() - 1) as u32
    }

    pub fn get(&self, i: u32) -> &BaseElement {
        &self.elems[i as usize]
    }
}

/// `∏ β_i^{e_i}` over base elements, with its log embedding, an error
/// bound on that log, and the exact sign bits at the real places.
#[derive(Clone, Debug, Default)]
pub(crate) struct Compact {
    pub exps: Vec<(u32, BigInt)>,
    pub log: Vec<f64>,
    pub log_err: f64,
    pub signs: u8,
}

const LOG_EPS: f64 = 4e-16;

impl Compact {
    pub fn base(store: &ElementStore, i: u32) -> Self {
        let b = store.get(i);
        let mag: f64 = b.log.iter().map(|x| x.abs()).sum::<f64>() + 1.0;
        Compact {
            exps: vec![(i, BigInt::one())],
            log: b.log.clone(),
            log_err: mag * 1e-13,
            signs: b.signs,
        }
    }

    pub fn one(places: usize) -> Self {
        Compact {
            exps: Vec::new(),
            log: vec![0.0; places],
            log_err: 0.0,
            signs: 0,
        }
    }

    #[cfg(test)]
    pub fn pow(&self, e: &BigInt) -> Self {
        Self::combine(self, e, self, &BigInt::zero())
    }

    /// Recomputes the log from the exponents, which removes drift from
    /// long chains of combinations.
    pub fn refresh_log(&mut self, store: &ElementStore) {
        let places = self.log.len();
        let mut log = vec![0.0; places];
        let mut err = 0.0;
        for (i, e) in &self.exps {
            let b = store.get(*i);
            let ef = e.to_f64().unwrap_or(f64::INFINITY);
            for (l, bl) in log.iter_mut().zip(&b.log) {
                *l += ef * bl;
                err += ef.abs() * (bl.abs() * LOG_EPS + 1e-13);
            }
        }
        self.log = log;
        self.log_err = err;
    }
}

impl RowPayload for Compact {
    fn combine(a: &Self, ca: &BigInt, b: &Self, cb: &BigInt) -> Self {
        let mut exps: Vec<(u32, BigInt)> = Vec::with_capacity(a.exps.len() + b.exps.len());
        let (mut i, mut j) = (0, 0);
        let push = |exps: &mut Vec<(u32, BigInt)>, idx: u32, v: BigInt| {
            if !v.is_zero() {
                exps.push((idx, v));
            }
        };
        while i < a.exps.len() || j < b.exps.len() {
            let ia = a.exps.get(i).map(|x| x.0).unwrap_or(u32::MAX);
            let ib = b.exps.get(j).map(|x| x.0).unwrap_or(u32::MAX);
            if ia < ib {
                push(&mut exps, ia, ca * &a.exps[i].1);
                i += 1;
            } else if ib < ia {
                push(&mut exps, ib, cb * &b.exps[j].1);
                j += 1;
            } else {
                push(&mut exps, ia, ca * &a.exps[i].1 + cb * &b.exps[j].1);
                i += 1;
                j += 1;
            }
        }
        let (fa, fb) = (
            ca.to_f64().unwrap_or(f64::INFINITY),
            cb.to_f64().unwrap_or(f64::INFINITY),
        );
        let places = a.log.len().max(b.log.len());
        let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
        let log: Vec<f64> = (0..places)
            .map(|k| {
                let x = if ca.is_zero() {
                    0.0
                } else {
                    fa * at(&a.log, k)
                };
                let y = if cb.is_zero() {
                    0.0
                } else {
                    fb * at(&b.log, k)
                };
                x + y
            })
            .collect();
        let mag: f64 = log.iter().map(|x| x.abs()).sum();
        let term = |c: &BigInt, f: f64, e: f64| if c.is_zero() { 0.0 } else { f.abs() * e };
        let log_err = term(ca, fa, a.log_err) + term(cb, fb, b.log_err) + mag * LOG_EPS;
        let odd = |c: &BigInt| c.is_odd();
        let signs = (if odd(ca) { a.signs } else { 0 }) ^ (if odd(cb) { b.signs } else { 0 });
        Compact {
            exps,
            log,
            log_err,
            signs,
        }
    }
}

/// A prime `q` with three distinct roots of the defining cubic mod `q`.
#[derive(Clone, Debug)]
pub(crate) struct SplitPrime {
    pub q: u64,
    roots: [u64; 3],
}

/// Residue maps `O → (Z/q^k)^3` at the three primes above a split `q`.
pub(crate) struct SplitLevel {
    modulus: BigInt,
    phi: BigInt,
    // omega[j][i] = ω_i(r_j) mod q^k
    omega: [[BigInt; 3]; 3],
    // power coordinates from values at the roots
    vinv: [[BigInt; 3]; 3],
    den: BigInt,
}

impl SplitPrime {
    /// The first prime `q >= start` that splits completely, does not
    /// divide the polynomial discriminant, and satisfies `accept`.
    pub fn find(k: &CubicField, start: u64, accept: impl Fn(u64) -> bool) -> Self {
        let disc = k.poly_disc();
        let mut q = start | 1;
        loop {
            let bq = BigInt::from(q);
            if accept(q) && is_prime(&bq) && !disc.is_multiple_of(&bq) {
                let fp = Fp::new(q);
                let roots = fp.roots(&fp.poly(k.poly()));
                if roots.len() == 3 {
                    return SplitPrime {
                        q,
                        roots: [roots[0], roots[1], roots[2]],
                    };
                }
            }
            q += 2;
        }
    }

    pub fn level(&self, k: &CubicField, e: u32) -> SplitLevel {
        let bq = BigInt::from(self.q);
        let modulus = bq.pow(e);
        let phi = bq.pow(e - 1) * (self.q - 1);
        let roots: [BigInt; 3] = self
            .roots
            .map(|r| hensel_lift(k.poly(), &BigInt::from(r), &bq, e));
        let basis = k.integral_basis();
        let den = basis.den.clone();
        let dinv = mod_inverse(&den, &modulus).expect("q does not divide the index");
        let omega = std::array::from_fn(|j| {
            std::array::from_fn(|i| {
                let r = &roots[j];
                let v = &basis.num[i][0] + &basis.num[i][1] * r + &basis.num[i][2] * r * r;
                (v * &dinv).mod_floor(&modulus)
            })
        });
        let mut vinv: [[BigInt; 3]; 3] = Default::default();
        for j in 0..3 {
            let (a, b) = (&roots[(j + 1) % 3], &roots[(j + 2) % 3]);
            let d = (&roots[j] - a) * (&roots[j] - b);
            let dinv = mod_inverse(&d, &modulus).expect("distinct roots mod q");
            vinv[0][j] = (a * b * &dinv).mod_floor(&modulus);
            vinv[1][j] = (-(a + b) * &dinv).mod_floor(&modulus);
            vinv[2][j] = dinv;
        }
        SplitLevel {
            modulus,
            phi,
            omega,
            vinv,
            den,
        }
    }
}

impl SplitLevel {
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn residues(&self, x: &OrderCoords) -> [BigInt; 3] {
        std::array::from_fn(|j| {
            let v = (0..3).fold(BigInt::zero(), |acc, i| acc + &x[i] * &self.omega[j][i]);
            v.mod_floor(&self.modulus)
        })
    }

    /// Residues of a compact product; `None` when a base element is not a
    /// unit at one of the primes.
    pub fn compact_residues(&self, store: &ElementStore, c: &Compact) -> Option<[BigInt; 3]> {
        let mut out: [BigInt; 3] = std::array::from_fn(|_| BigInt::one());
        for (i, e) in &c.exps {
            let r = self.residues(&store.get(*i).coords);
            for j in 0..3 {
                let base = if e.is_negative() {
                    mod_inverse(&r[j], &self.modulus)?
                } else {
                    r[j].clone()
                };
                if (&base % &self.modulus).is_zero() {
                    return None;
                }
                let ee = e.abs().mod_floor(&self.phi);
                out[j] = out[j].clone() * base.modpow(&ee, &self.modulus) % &self.modulus;
            }
        }
        Some(out)
    }

    /// The integral element with the given residues whose power
    /// coordinates (scaled by the basis denominator) are at most `bound`.
    pub fn reconstruct(
        &self,
        k: &CubicField,
        vals: &[BigInt; 3],
        bound: &BigInt,
    ) -> Option<OrderCoords> {
        let half = &self.modulus >> 1;
        let mut c: [BigInt; 3] = Default::default();
        for (m, cm) in c.iter_mut().enumerate() {
            let v = (0..3).fold(BigInt::zero(), |acc, j| {
                acc + &self.vinv[m][j] * &vals[j] * &self.den
            });
            let mut v = v.mod_floor(&self.modulus);
            if v > half {
                v -= &self.modulus;
            }
            if &v.abs() > bound {
                return None;
            }
            *cm = v;
        }
        let a = FieldElement::new(c.map(|x| BigRat::new(x, self.den.clone())));
        k.to_order(&a)
    }
}

/// Upper bound on `log` of the scaled power coordinates of an element with
/// log embedding `log` (complex place doubled).
pub(crate) fn log_coord_bound(k: &CubicField, log: &[f64]) -> f64 {
    let (_, single) = place_data(k, log);
    let vinv = complex_vandermonde_inverse_abs(k);
    let mut best = f64::NEG_INFINITY;
    for row in &vinv {
        // log Σ_j |V^{-1}_{mj}| |σ_j|
        let terms: Vec<f64> = row.iter().zip(&single).map(|(v, l)| v.ln() + l).collect();
        let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let s: f64 = terms.iter().map(|t| (t - m).exp()).sum();
        best = best.max(m + s.ln());
    }
    best + ln_abs(&k.integral_basis().den)
}

/// `(|z_j|, log|σ_j|)` for the three conjugates in root order.
fn place_data(k: &CubicField, log: &[f64]) -> ([f64; 3], [f64; 3]) {
    let r1 = k.r1();
    let mut mods = [0.0; 3];
    let mut single = [0.0; 3];
    for (i, &x) in k.real_root_approx().iter().enumerate() {
        mods[i] = x.abs();
        single[i] = log[i];
    }
    if let Some((re, im)) = k.complex_root_approx() {
        mods[1] = re.hypot(im);
        mods[2] = mods[1];
        single[1] = log[r1] / 2.0;
        single[2] = log[r1] / 2.0;
    }
    (mods, single)
}

fn complex_vandermonde_inverse_abs(k: &CubicField) -> [[f64; 3]; 3] {
    type C = (f64, f64);
    let mul = |a: C, b: C| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let sub = |a: C, b: C| (a.0 - b.0, a.1 - b.1);
    let abs = |a: C| a.0.hypot(a.1);
    let z: Vec<C> = match k.complex_root_approx() {
        Some((re, im)) => vec![(k.real_root_approx()[0], 0.0), (re, im), (re, -im)],
        None => k.real_root_approx().iter().map(|&x| (x, 0.0)).collect(),
    };
    let mut out = [[0.0; 3]; 3];
    for j in 0..3 {
        let (a, b) = (z[(j + 1) % 3], z[(j + 2) % 3]);
        let d = abs(mul(sub(z[j], a), sub(z[j], b)));
        out[0][j] = abs(mul(a, b)) / d;
        out[1][j] = abs((a.0 + b.0, a.1 + b.1)) / d;
        out[2][j] = 1.0 / d;
    }
    out
}

/// Precision exponent `e` such that `q^e` separates candidates with the
/// coordinate bound `lb` (natural log), and also certifies that an
/// `ell`-th root candidate of a unit with log embedding `target` is exact.
fn precision(k: &CubicField, q: u64, lb: f64, ell: u32, target: &[f64]) -> u32 {
    let (mods, single) = place_data(k, target);
    let lden = ln_abs(&k.integral_basis().den);
    let mut need = lb + 2.0;
    for j in 0..3 {
        let lz = (1.0 + mods[j] + mods[j] * mods[j]).ln();
        let eta = ell as f64 * (lb - lden + lz) - single[j];
        need = need.max(eta + 2.0);
    }
    ((need / (q as f64).ln()).ceil() as u32).max(1)
}

/// Multiplies out a compact unit. `None` when the logs are too inaccurate
/// or the product is not a unit.
pub(crate) fn materialize_unit(
    k: &CubicField,
    store: &ElementStore,
    c: &Compact,
    sp: &SplitPrime,
) -> Option<OrderCoords> {
    if c.log_err > 1e-3 {
        return None;
    }
    let slack: Vec<f64> = c.log.iter().map(|l| l + c.log_err + 1e-9).collect();
    let lb = log_coord_bound(k, &slack) + 1e-6;
    let e = precision(k, sp.q, lb, 1, &c.log);
    let lvl = sp.level(k, e);
    let vals = lvl.compact_residues(store, c)?;
    let bound = big_exp(lb);
    let x = lvl.reconstruct(k, &vals, &bound)?;
    k.norm_int(&x).abs().is_one().then_some(x)
}

/// An `ell`-th root of a compact unit, if it exists, for `ell` prime.
pub(crate) fn unit_root(
    k: &CubicField,
    store: &ElementStore,
    c: &Compact,
    ell: u32,
) -> Option<OrderCoords> {
    if c.log_err > 1e-3 {
        return None;
    }
    let root_log: Vec<f64> = c
        .log
        .iter()
        .map(|l| (l + c.log_err) / ell as f64 + 1e-9)
        .collect();
    let lb = log_coord_bound(k, &root_log) + 1e-6;
    let bound = big_exp(lb);
    let sp = if ell == 2 {
        SplitPrime::find(k, 1 << 24, |q| q % 4 == 3)
    } else {
        SplitPrime::find(k, 1 << 24, |q| (q - 1) % ell as u64 != 0)
    };
    let e = precision(k, sp.q, lb, ell, &c.log);
    let lvl = sp.level(k, e);
    let vals = lvl.compact_residues(store, c)?;
    let bq = BigInt::from(sp.q);
    let check = |x: &OrderCoords| k.norm_int(x).abs().is_one();
    if ell == 2 {
        let mut roots: Vec<BigInt> = Vec::with_capacity(3);
        for v in &vals {
            let fp = Fp::new(sp.q);
            let r0 = fp.sqrt(fp.reduce(v))?;
            roots.push(lift_sqrt(v, BigInt::from(r0), &bq, e));
        }
        for mask in 0..4u8 {
            let cand: [BigInt; 3] = std::array::from_fn(|j| {
                if j > 0 && mask >> (j - 1) & 1 == 1 {
                    (lvl.modulus() - &roots[j]) % lvl.modulus()
                } else {
                    roots[j].clone()
                }
            });
            if let Some(x) = lvl.reconstruct(k, &cand, &bound) {
                if check(&x) {
                    return Some(x);
                }
            }
        }
        None
    } else {
        let d = mod_inverse(&BigInt::from(ell), &lvl.phi)?;
        let cand: [BigInt; 3] = std::array::from_fn(|j| vals[j].modpow(&d, lvl.modulus()));
        lvl.reconstruct(k, &cand, &bound).filter(check)
    }
}

fn lift_sqrt(a: &BigInt, r0: BigInt, q: &BigInt, e: u32) -> BigInt {
    let m = q.pow(e);
    let mut x = r0;
    let mut prec = 1u32;
    while prec < e {
        prec = (2 * prec).min(e);
        let pm = q.pow(prec);
        let inv = mod_inverse(&(BigInt::from(2) * &x), &pm).expect("q odd and x a unit");
        x = (&x - (&x * &x - a) * inv).mod_floor(&pm);
    }
    x.mod_floor(&m)
}

/// `⌈exp(x)⌉` as an integer, for bounds given in log form.
pub(crate) fn big_exp(x: f64) -> BigInt {
    if x < 50.0 {
        return BigInt::from(x.exp().ceil() as u128 + 1);
    }
    let bits = (x / std::f64::consts::LN_2).ceil() as u64 + 2;
    BigInt::one() << bits
}
