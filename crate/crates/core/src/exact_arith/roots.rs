//! Exact real root isolation (Descartes' rule of signs with bisection on
//! dyadic endpoints) and sign determination of polynomial expressions at
//! isolated roots.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BigRat, IntPolynomial};

/// A closed interval holding exactly one real root of `poly`.
///
/// Either `lo == hi` (the root is the rational `lo`) or `lo < hi` and the
/// polynomial is nonzero with opposite signs at both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRat,
    pub hi: BigRat,
    poly: IntPolynomial,
}

impl RootInterval {
    pub fn width(&self) -> BigRat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRat {
        (&self.lo + &self.hi) / BigRat::from_integer(BigInt::from(2))
    }

    /// Halves the interval once, keeping the root inside.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let m = self.midpoint();
        let fm = self.poly.eval_rat(&m);
        if fm.is_zero() {
            self.lo = m.clone();
            self.hi = m;
            return;
        }
        let flo = self.poly.eval_rat(&self.lo);
        if flo.is_positive() == fm.is_positive() {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&mut self, width: &BigRat) {
        while !self.is_exact() && &self.width() > width {
            self.bisect();
        }
    }

    /// f64 approximation of the root (midpoint after refining to 2^-60 relative width).
    pub fn approx(&self) -> f64 {
        let mut r = self.clone();
        let scale = self.lo.abs().max(self.hi.abs()).max(BigRat::one());
        let w = scale * BigRat::new(BigInt::one(), BigInt::one() << 60u32);
        r.refine(&w);
        rat_to_f64(&r.midpoint())
    }

    /// Sign of `g(root)` for a polynomial `g` with rational coefficients,
    /// refining the interval as needed. Returns 0 only when `g(root) = 0`,
    /// which for an exact root is decided exactly and otherwise requires
    /// `g` and the root polynomial to share a factor (checked by the caller).
    pub fn sign_of(&mut self, g: &[BigRat]) -> i8 {
        if g.iter().all(|c| c.is_zero()) {
            return 0;
        }
        loop {
            if self.is_exact() {
                return sign(&eval_rat_poly(g, &self.lo));
            }
            let (lo, hi) = interval_eval(g, &self.lo, &self.hi);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            self.bisect();
        }
    }
}

fn sign(x: &BigRat) -> i8 {
    match x.cmp(&BigRat::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub(crate) fn rat_to_f64(x: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    // shift both parts so the quotient is computed on 64-bit mantissas
    let n = x.numer().abs();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let sn = (nb - 60).max(0);
    let sd = (db - 60).max(0);
    let nf = (&n >> sn as usize).to_f64().unwrap_or(0.0);
    let df = (d >> sd as usize).to_f64().unwrap_or(1.0);
    let v = nf / df * 2f64.powi((sn - sd) as i32);
    if x.is_negative() {
        -v
    } else {
        v
    }
}

fn eval_rat_poly(g: &[BigRat], x: &BigRat) -> BigRat {
    let mut acc = BigRat::zero();
    for c in g.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Naive interval Horner evaluation of `g` over `[lo, hi]`.
fn interval_eval(g: &[BigRat], lo: &BigRat, hi: &BigRat) -> (BigRat, BigRat) {
    let mut a = BigRat::zero();
    let mut b = BigRat::zero();
    for c in g.iter().rev() {
        let cands = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

/// Number of sign variations of `p` on the open interval `(a, b)` after the
/// Möbius transform; 0 or 1 is exact, larger values are upper bounds.
fn descartes_count(p: &[BigRat], a: &BigRat, b: &BigRat) -> usize {
    // q(x) = p(a + (b - a) x)
    let w = b - a;
    let n = p.len() - 1;
    let mut q = taylor_shift(p, a);
    let mut pw = BigRat::one();
    for c in q.iter_mut() {
        *c = &*c * &pw;
        pw = &pw * &w;
    }
    // r(x) = (x + 1)^n q(1 / (x + 1)): reverse, then shift by 1
    q.reverse();
    let r = taylor_shift(&q, &BigRat::one());
    let mut count = 0;
    let mut last = 0i8;
    for c in r.iter().take(n + 1) {
        let s = sign(c);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Coefficients of `p(x + s)`.
fn taylor_shift(p: &[BigRat], s: &BigRat) -> Vec<BigRat> {
    let mut c = p.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * s;
            c[j] = &c[j] + t;
        }
    }
    c
}

/// Isolates all real roots of a squarefree integer polynomial into
/// disjoint ascending intervals of width at most `width`.
pub fn isolate_real_roots(f: &IntPolynomial, width: &BigRat) -> Vec<RootInterval> {
    assert!(
        !f.is_zero() && f.degree() >= 1,
        "need a nonconstant polynomial"
    );
    let p: Vec<BigRat> = f
        .coeffs()
        .iter()
        .map(|c| BigRat::from_integer(c.clone()))
        .collect();
    // Cauchy bound, rounded up to a power of two
    let lead = f.leading().abs();
    let maxc = f.coeffs()[..f.degree()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    let bound = BigRat::new(maxc, lead) + BigRat::one();
    let mut b = BigRat::one();
    while b <= bound {
        b *= BigRat::from_integer(BigInt::from(2));
    }
    let two = BigRat::from_integer(BigInt::from(2));
    let mut out: Vec<RootInterval> = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match descartes_count(&p, &lo, &hi) {
            0 => {}
            1 => out.push(settle(f, &p, lo, hi)),
            _ => {
                let m = (&lo + &hi) / &two;
                if f.eval_rat(&m).is_zero() {
                    out.push(RootInterval {
                        lo: m.clone(),
                        hi: m.clone(),
                        poly: f.clone(),
                    });
                }
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    for r in out.iter_mut() {
        r.refine(width);
    }
    out
}

/// Shrinks an open interval with one root until both endpoints are non-roots.
fn settle(f: &IntPolynomial, p: &[BigRat], mut lo: BigRat, mut hi: BigRat) -> RootInterval {
    let two = BigRat::from_integer(BigInt::from(2));
    loop {
        let flo = f.eval_rat(&lo);
        let fhi = f.eval_rat(&hi);
        if !flo.is_zero() && !fhi.is_zero() {
            return RootInterval {
                lo,
                hi,
                poly: f.clone(),
            };
        }
        let m = (&lo + &hi) / &two;
        if f.eval_rat(&m).is_zero() {
            return RootInterval {
                lo: m.clone(),
                hi: m,
                poly: f.clone(),
            };
        }
        if descartes_count(p, &lo, &m) == 1 {
            hi = m;
        } else {
            lo = m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn three_roots_of_fixture() {
        let f = IntPolynomial::monic_cubic(0, -7, 3);
        let roots = isolate_real_roots(&f, &rat(1, 8));
        assert_eq!(roots.len(), 3);
        let approx: Vec<f64> = roots.iter().map(|r| r.approx()).collect();
        // grid oracle: sign changes of F at multiples of 1/100
        let mut grid = Vec::new();
        let fv = |x: f64| x * x * x - 7.0 * x + 3.0;
        for i in -400..400 {
            let (a, b) = (i as f64 / 100.0, (i + 1) as f64 / 100.0);
            if fv(a) * fv(b) < 0.0 {
                grid.push(a);
            }
        }
        assert_eq!(grid.len(), 3);
        for (r, g) in roots.iter().zip(&grid) {
            assert!(r.width() <= rat(1, 8));
            assert!((r.approx() - g).abs() < 0.011);
        }
        // Newton-polished values of the three roots
        assert!((approx[0] + 2.838_469).abs() < 1e-5);
        assert!((approx[1] - 0.440_808).abs() < 1e-5);
        assert!((approx[2] - 2.397_662).abs() < 1e-5);
    }

    #[test]
    fn one_real_root_for_negative_disc() {
        let f = IntPolynomial::monic_cubic(0, 1, 3);
        assert_eq!(isolate_real_roots(&f, &rat(1, 1000)).len(), 1);
    }

    #[test]
    fn rational_roots_are_exact_or_contained() {
        let f = IntPolynomial::monic_cubic(0, -1, 0);
        let roots = isolate_real_roots(&f, &rat(1, 4));
        assert_eq!(roots.len(), 3);
        for (r, v) in roots.iter().zip([-1, 0, 1]) {
            let v = rat(v, 1);
            assert!(r.lo <= v && v <= r.hi);
        }
    }

    #[test]
    fn sign_of_theta_squared_minus_eight() {
        let f = IntPolynomial::monic_cubic(0, -7, 3);
        let mut roots = isolate_real_roots(&f, &rat(1, 2));
        let g = vec![rat(-8, 1), rat(0, 1), rat(1, 1)];
        let signs: Vec<i8> = roots.iter_mut().map(|r| r.sign_of(&g)).collect();
        assert_eq!(signs, vec![1, -1, -1]);
    }
}
