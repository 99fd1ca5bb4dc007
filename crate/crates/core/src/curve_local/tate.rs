//! Tate's algorithm over Z_p for a long Weierstrass model.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_arith::{kronecker_symbol, valuation};

/// Kodaira symbol of the special fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kodaira {
    /// `I_0`: good reduction.
    Good,
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl Kodaira {
    /// Number of irreducible components of the special fibre of the
    /// Néron model.
    pub fn components(self) -> u32 {
        match self {
            Kodaira::Good => 1,
            Kodaira::I(n) => n,
            Kodaira::IStar(m) => m + 5,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }
}

impl std::fmt::Display for Kodaira {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kodaira::Good => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::IStar(m) => write!(f, "I{m}*"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IIStar => write!(f, "II*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IVStar => write!(f, "IV*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionType {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

/// Local data at one prime, computed on a model minimal at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReduction {
    #[serde(with = "crate::exact_arith::decimal")]
    pub p: BigInt,
    pub kodaira: Kodaira,
    /// Exponent of `p` in the conductor.
    pub f_p: u32,
    /// Tamagawa number `[E(Q_p) : E_0(Q_p)]`.
    pub c_p: u32,
    pub reduction: ReductionType,
    /// `v_p` of the discriminant of the minimal model.
    pub min_disc_valuation: u32,
}

/// `[a1, a2, a3, a4, a6]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weierstrass(pub [BigInt; 5]);

impl Weierstrass {
    fn b(&self) -> [BigInt; 4] {
        let [a1, a2, a3, a4, a6] = &self.0;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = a1 * a3 + 2 * a4;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn c4(&self) -> BigInt {
        let [b2, b4, _, _] = self.b();
        &b2 * &b2 - 24 * b4
    }

    pub fn c6(&self) -> BigInt {
        let [b2, b4, b6, _] = self.b();
        -(&b2 * &b2 * &b2) + 36 * &b2 * b4 - 216 * b6
    }

    pub fn discriminant(&self) -> BigInt {
        let [b2, b4, b6, b8] = self.b();
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// Substitution `x = x' + r`, `y = y' + s x' + t`.
    fn shift(&mut self, r: &BigInt, s: &BigInt, t: &BigInt) {
        let [a1, a2, a3, a4, a6] = self.0.clone();
        let n1 = &a1 + 2 * s;
        let n2 = &a2 - s * &a1 + 3 * r - s * s;
        let n3 = &a3 + r * &a1 + 2 * t;
        let n4 = &a4 - s * &a3 + 2 * r * &a2 - (t + r * s) * &a1 + 3 * r * r - 2 * s * t;
        let n6 = &a6 + r * &a4 + r * r * &a2 + r * r * r - t * &a3 - t * t - r * t * &a1;
        self.0 = [n1, n2, n3, n4, n6];
    }

    /// Divides `a_i` by `u^i`.
    fn unscale(&mut self, u: &BigInt) {
        for (a, e) in self.0.iter_mut().zip([1u32, 2, 3, 4, 6]) {
            *a = &*a / u.pow(e);
        }
    }

    /// A point of the reduction mod `p` where both partials vanish, by
    /// exhaustion (only used for `p` = 2, 3).
    fn singular_point_small(&self, p: &BigInt) -> (BigInt, BigInt) {
        let [a1, a2, a3, a4, a6] = &self.0;
        let pp: i64 = p.try_into().expect("small prime");
        for x in 0..pp {
            for y in 0..pp {
                let (x, y) = (BigInt::from(x), BigInt::from(y));
                let f =
                    &y * &y + a1 * &x * &y + a3 * &y - &x * &x * &x - a2 * &x * &x - a4 * &x - a6;
                let fx = a1 * &y - 3 * &x * &x - 2 * a2 * &x - a4;
                let fy = 2 * &y + a1 * &x + a3;
                if [f, fx, fy].iter().all(|v| v.is_multiple_of(p)) {
                    return (x, y);
                }
            }
        }
        unreachable!("a singular reduction has a singular point")
    }
}

fn v(x: &BigInt, p: &BigInt) -> u32 {
    if x.is_zero() {
        u32::MAX
    } else {
        valuation(x, p)
    }
}

fn divides(p: &BigInt, x: &BigInt) -> bool {
    x.is_multiple_of(p)
}

fn inv_mod(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.mod_floor(p).extended_gcd(p);
    e.x.mod_floor(p)
}

/// Distinct roots of `c0 + c1 x + c2 x^2 + …` (degree ≤ 3) modulo `p`,
/// each with its multiplicity.
fn roots_mod_p(c: &[BigInt], p: &BigInt) -> Vec<(BigInt, u32)> {
    let c: Vec<BigInt> = c.iter().map(|x| x.mod_floor(p)).collect();
    let mut deg = c.len() - 1;
    while deg > 0 && c[deg].is_zero() {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    if p.bits() <= 12 {
        let mut out = Vec::new();
        let mut x = BigInt::zero();
        while &x < p {
            let mult = multiplicity(&c, &x, p);
            if mult > 0 {
                out.push((x.clone(), mult));
            }
            x += 1;
        }
        return out;
    }
    // large p: gcd with x^p - x, then solve the split part
    let split = poly_gcd(&c[..=deg], &x_pow_p_minus_x(&c[..=deg], p), p);
    let mut out = Vec::new();
    match split.len().saturating_sub(1) {
        0 => {}
        1 => out.push((-&split[0] * inv_mod(&split[1], p)).mod_floor(p)),
        2 => out.extend(quadratic_roots(&split, p)),
        _ => out.extend(cubic_split_roots(&split, p)),
    }
    out.into_iter()
        .map(|r| (r.clone(), multiplicity(&c, &r, p)))
        .collect()
}

fn eval_mod(c: &[BigInt], x: &BigInt, p: &BigInt) -> BigInt {
    c.iter()
        .rev()
        .fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(p))
}

fn multiplicity(c: &[BigInt], x: &BigInt, p: &BigInt) -> u32 {
    let mut poly = c.to_vec();
    let mut m = 0;
    while poly.len() > 1 && eval_mod(&poly, x, p).is_zero() {
        m += 1;
        // synthetic division by (T - x)
        let n = poly.len() - 1;
        let mut q = vec![BigInt::zero(); n];
        let mut carry = BigInt::zero();
        for i in (0..n).rev() {
            carry = (&poly[i + 1] + &carry * x).mod_floor(p);
            q[i] = carry.clone();
        }
        poly = q;
        while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
            poly.pop();
        }
    }
    m
}

fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.len() > 1 && a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    if a.is_empty() {
        a.push(BigInt::zero());
    }
    a
}

fn poly_rem(a: &[BigInt], m: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.iter().map(|x| x.mod_floor(p)).collect();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(&m[dm], p);
    while r.len() > dm && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - 1;
        let f = (&r[k] * &lead_inv).mod_floor(p);
        for i in 0..=dm {
            r[k - dm + i] = (&r[k - dm + i] - &f * &m[i]).mod_floor(p);
        }
        r.pop();
        r = trim(r);
        if r.len() <= dm {
            break;
        }
    }
    trim(r)
}

fn poly_mul_mod(a: &[BigInt], b: &[BigInt], m: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_rem(&out, m, p)
}

fn x_pow_p_minus_x(m: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut result = vec![BigInt::one()];
    let mut base = poly_rem(&[BigInt::zero(), BigInt::one()], m, p);
    let mut e = p.clone();
    while !e.is_zero() {
        if e.is_odd() {
            result = poly_mul_mod(&result, &base, m, p);
        }
        base = poly_mul_mod(&base, &base, m, p);
        e >>= 1;
    }
    let mut r = result;
    r.resize(r.len().max(2), BigInt::zero());
    r[1] = (&r[1] - BigInt::one()).mod_floor(p);
    trim(r)
}

fn poly_gcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut a = trim(a.iter().map(|x| x.mod_floor(p)).collect());
    let mut b = trim(b.iter().map(|x| x.mod_floor(p)).collect());
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    let inv = inv_mod(a.last().unwrap(), p);
    a.iter().map(|c| (c * &inv).mod_floor(p)).collect()
}

/// Square root mod an odd prime by Tonelli–Shanks.
fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(a);
    }
    if kronecker_symbol(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let pm1: BigInt = p - 1;
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while kronecker_symbol(&z, p) != -1 {
        z += 1;
    }
    let mut c = z.modpow(&q, p);
    let mut x = a.modpow(&((&q + 1) >> 1), p);
    let mut t = a.modpow(&q, p);
    let mut m = s;
    while t != one {
        let mut i = 0;
        let mut tt = t.clone();
        while tt != one {
            tt = (&tt * &tt).mod_floor(p);
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        x = (x * &b).mod_floor(p);
        c = (&b * &b).mod_floor(p);
        t = (t * &c).mod_floor(p);
        m = i;
    }
    Some(x)
}

fn quadratic_roots(q: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    // q0 + q1 x + q2 x^2 with q2 invertible, p odd
    let disc = (&q[1] * &q[1] - BigInt::from(4) * &q[0] * &q[2]).mod_floor(p);
    let Some(s) = sqrt_mod(&disc, p) else {
        return Vec::new();
    };
    let inv = inv_mod(&(2 * &q[2]), p);
    let r1 = ((-&q[1] + &s) * &inv).mod_floor(p);
    let r2 = ((-&q[1] - &s) * &inv).mod_floor(p);
    if r1 == r2 {
        vec![r1]
    } else {
        vec![r1, r2]
    }
}

/// Roots of a monic cubic that splits into distinct linear factors, by
/// random splitting with `(x + a)^((p-1)/2) - 1`.
fn cubic_split_roots(c: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let e: BigInt = (p - 1) >> 1;
    let mut a = BigInt::zero();
    loop {
        a += 1;
        let mut result = vec![BigInt::one()];
        let mut base = poly_rem(&[a.clone(), BigInt::one()], c, p);
        let mut k = e.clone();
        while !k.is_zero() {
            if k.is_odd() {
                result = poly_mul_mod(&result, &base, c, p);
            }
            base = poly_mul_mod(&base, &base, c, p);
            k >>= 1;
        }
        result[0] = (&result[0] - BigInt::one()).mod_floor(p);
        let g = poly_gcd(c, &trim(result), p);
        let dg = g.len() - 1;
        if dg == 1 || dg == 2 {
            let (other, _) = div_poly(c, &g, p);
            let mut out = Vec::new();
            for f in [g, other] {
                match f.len() - 1 {
                    1 => out.push((-&f[0] * inv_mod(&f[1], p)).mod_floor(p)),
                    2 => out.extend(quadratic_roots(&f, p)),
                    _ => {}
                }
            }
            return out;
        }
    }
}

fn div_poly(a: &[BigInt], m: &[BigInt], p: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r: Vec<BigInt> = a.iter().map(|x| x.mod_floor(p)).collect();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(&m[dm], p);
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(dm).max(1)];
    while r.len() > dm {
        let k = r.len() - 1;
        let f = (&r[k] * &lead_inv).mod_floor(p);
        q[k - dm] = f.clone();
        for i in 0..=dm {
            r[k - dm + i] = (&r[k - dm + i] - &f * &m[i]).mod_floor(p);
        }
        r.pop();
    }
    (trim(q), trim(r))
}

/// Whether `c0 + c1 x + c2 x^2` has a root mod `p`.
fn has_root(c0: &BigInt, c1: &BigInt, c2: &BigInt, p: &BigInt) -> bool {
    !roots_mod_p(&[c0.clone(), c1.clone(), c2.clone()], p).is_empty()
}

/// The root of multiplicity at least `m` (there is exactly one).
fn multiple_root(c: &[BigInt], m: u32, p: &BigInt) -> BigInt {
    roots_mod_p(c, p)
        .into_iter()
        .find(|(_, k)| *k >= m)
        .map(|(r, _)| r)
        .expect("caller checked that a multiple root exists")
}

/// Runs Tate's algorithm; the model is replaced by one minimal at `p`.
pub fn tate(model: &mut Weierstrass, p: &BigInt) -> LocalReduction {
    let two = BigInt::from(2);
    let zero = BigInt::zero();
    loop {
        let disc = model.discriminant();
        let n = v(&disc, p);
        if n == 0 {
            return LocalReduction {
                p: p.clone(),
                kodaira: Kodaira::Good,
                f_p: 0,
                c_p: 1,
                reduction: ReductionType::Good,
                min_disc_valuation: 0,
            };
        }
        // move the singular point of the reduction to (0, 0)
        let (r, t) = if p.bits() <= 2 {
            model.singular_point_small(p)
        } else {
            let [b2, _, _, _] = model.b();
            let c4 = model.c4();
            let r = if divides(p, &c4) {
                -&b2 * inv_mod(&BigInt::from(12), p)
            } else {
                -(model.c6() + &b2 * &c4) * inv_mod(&(12 * &c4), p)
            };
            let r = r.mod_floor(p);
            let t = (-inv_mod(&two, p) * (&model.0[0] * &r + &model.0[2])).mod_floor(p);
            (r, t)
        };
        model.shift(&r, &zero, &t);
        debug_assert!(
            divides(p, &model.0[2]) && divides(p, &model.0[3]) && divides(p, &model.0[4])
        );
        let local = |kodaira, f_p, c_p, reduction| LocalReduction {
            p: p.clone(),
            kodaira,
            f_p,
            c_p,
            reduction,
            min_disc_valuation: n,
        };
        let [a1, a2, a3, _, a6] = model.0.clone();
        if !divides(p, &model.c4()) {
            // nodal: split when the tangents T^2 + a1 T - a2 are rational
            let split = has_root(&-&a2, &a1, &BigInt::one(), p);
            let c = if split {
                n
            } else if n.is_multiple_of(2) {
                2
            } else {
                1
            };
            let red = if split {
                ReductionType::SplitMultiplicative
            } else {
                ReductionType::NonsplitMultiplicative
            };
            return local(Kodaira::I(n), 1, c, red);
        }
        let p2 = p * p;
        let p3 = &p2 * p;
        if v(&a6, p) < 2 {
            return local(Kodaira::II, n, 1, ReductionType::Additive);
        }
        let [_, _, b6, b8] = model.b();
        if v(&b8, p) < 3 {
            return local(Kodaira::III, n - 1, 2, ReductionType::Additive);
        }
        if v(&b6, p) < 3 {
            let c = if has_root(&-(&a6 / &p2), &(&a3 / p), &BigInt::one(), p) {
                3
            } else {
                1
            };
            return local(Kodaira::IV, n - 2, c, ReductionType::Additive);
        }
        // arrange p | a1, a2 and p^2 | a3, a4 and p^3 | a6
        let (s, t) = if p == &two {
            (a2.mod_floor(p), (&a6 / BigInt::from(4)).mod_floor(&two) * 2)
        } else {
            let i2 = inv_mod(&two, p);
            (
                (-&a1 * &i2).mod_floor(p),
                p * (-(&a3 / p) * &i2).mod_floor(p),
            )
        };
        model.shift(&zero, &s, &t);
        let [_, a2, _, a4, a6] = model.0.clone();
        debug_assert!(divides(&p2, &model.0[2]) && divides(&p2, &a4) && divides(&p3, &a6));
        let (b, c, d) = (&a2 / p, &a4 / &p2, &a6 / &p3);
        let cubic = [d.clone(), c.clone(), b.clone(), BigInt::one()];
        let roots = roots_mod_p(&cubic, p);
        let max_mult = roots.iter().map(|(_, m)| *m).max().unwrap_or(0);
        if max_mult <= 1 {
            let c = 1 + roots.len() as u32;
            return local(Kodaira::IStar(0), n - 4, c, ReductionType::Additive);
        }
        if max_mult == 2 {
            // I_m^*: move the double root to 0 and chase the sub-chain
            let r = p * multiple_root(&cubic, 2, p);
            model.shift(&r, &zero, &zero);
            let mut ix = 3u32;
            let mut iy = 3u32;
            let mut mx = p2.clone();
            let mut my = p2.clone();
            let cp;
            loop {
                let [_, _, a3, _, a6] = model.0.clone();
                let xa3 = &a3 / &my;
                let xa6 = &a6 / (&mx * &my);
                let dy = &xa3 * &xa3 + 4 * &xa6;
                if !divides(p, &dy) {
                    cp = if has_root(&-&xa6, &xa3, &BigInt::one(), p) {
                        4
                    } else {
                        2
                    };
                    break;
                }
                let t = &my * multiple_root(&[-&xa6, xa3.clone(), BigInt::one()], 2, p);
                model.shift(&zero, &zero, &t);
                my *= p;
                iy += 1;
                let [_, a2b, _, a4b, a6b] = model.0.clone();
                let xa2 = &a2b / p;
                let xa4 = &a4b / (p * &mx);
                let xa6 = &a6b / (&mx * &my);
                let dx = &xa4 * &xa4 - 4 * &xa2 * &xa6;
                if !divides(p, &dx) {
                    cp = if has_root(&xa6, &xa4, &xa2, p) { 4 } else { 2 };
                    break;
                }
                let r = &mx * multiple_root(&[xa6.clone(), xa4.clone(), xa2.clone()], 2, p);
                model.shift(&r, &zero, &zero);
                mx *= p;
                ix += 1;
            }
            let m = ix + iy - 5;
            return local(Kodaira::IStar(m), n - m - 4, cp, ReductionType::Additive);
        }
        // triple root: move it to 0
        let r = p * multiple_root(&cubic, 3, p);
        model.shift(&r, &zero, &zero);
        let [_, _, a3, _, a6] = model.0.clone();
        let x3 = &a3 / &p2;
        let x6 = &a6 / (&p2 * &p2);
        let dq = &x3 * &x3 + 4 * &x6;
        if !divides(p, &dq) {
            let c = if has_root(&-&x6, &x3, &BigInt::one(), p) {
                3
            } else {
                1
            };
            return local(Kodaira::IVStar, n - 6, c, ReductionType::Additive);
        }
        let t = &p2 * multiple_root(&[-&x6, x3.clone(), BigInt::one()], 2, p);
        model.shift(&zero, &zero, &t);
        let [_, _, _, a4, a6] = model.0.clone();
        if v(&a4, p) < 4 {
            return local(Kodaira::IIIStar, n - 7, 2, ReductionType::Additive);
        }
        if v(&a6, p) < 6 {
            return local(Kodaira::IIStar, n - 8, 1, ReductionType::Additive);
        }
        // not minimal: scale down and start over
        model.unscale(p);
    }
}
