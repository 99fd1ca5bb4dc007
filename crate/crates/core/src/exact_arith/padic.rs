//! Factorization of a squarefree monic cubic over Q_p: Panayi-style
//! recursive root finding, Hensel lifting, and classification of the
//! remaining quadratic or cubic factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::modp::Fp;
use super::IntPolynomial;
use crate::error::{Error, Result};

/// Ramification of a local factor of degree 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadraticKind {
    Unramified,
    Ramified,
}

/// How F splits over Q_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalShape {
    /// F stays irreducible; `ramified` distinguishes e = 3 from f = 3.
    Irreducible {
        ramified: bool,
    },
    LinearTimesQuadratic {
        quadratic: QuadraticKind,
    },
    ThreeLinear,
}

impl LocalShape {
    pub fn is_field(&self) -> bool {
        matches!(self, LocalShape::Irreducible { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub degree: u32,
    pub e: u32,
    pub f: u32,
    /// Monic factor with coefficients reduced into `[0, p^k)`.
    pub poly: Vec<BigInt>,
    /// The p-adic root mod p^k for linear factors.
    pub root: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactorization {
    pub p: BigInt,
    pub precision: u32,
    pub shape: LocalShape,
    pub factors: Vec<LocalFactor>,
}

impl LocalFactorization {
    pub fn modulus(&self) -> BigInt {
        self.p.pow(self.precision)
    }

    /// Product of the factors reduced mod p^k, ascending coefficients.
    pub fn product_mod(&self) -> Vec<BigInt> {
        let m = self.modulus();
        let mut acc = vec![BigInt::one()];
        for fac in &self.factors {
            let mut v = vec![BigInt::zero(); acc.len() + fac.poly.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in fac.poly.iter().enumerate() {
                    v[i + j] += a * b;
                }
            }
            acc = v.into_iter().map(|c| c.mod_floor(&m)).collect();
        }
        acc
    }

    /// `v_p(c_i - c_j)` for each pair of p-adic roots, capped at the precision.
    pub fn root_separations(&self) -> Vec<(usize, usize, u32)> {
        let roots: Vec<&BigInt> = self
            .factors
            .iter()
            .filter_map(|f| f.root.as_ref())
            .collect();
        let mut out = Vec::new();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = roots[i] - roots[j];
                let v = if d.is_zero() {
                    self.precision
                } else {
                    vp(&d, &self.p).min(self.precision)
                };
                out.push((i, j, v));
            }
        }
        out
    }
}

pub(crate) fn vp(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// Lifts a simple root `t` of `g` mod p to a root mod `p^m`.
pub(crate) fn hensel_lift(g: &IntPolynomial, t: &BigInt, p: &BigInt, m: u32) -> BigInt {
    let modulus = p.pow(m);
    let dg = g.derivative();
    let mut x = t.clone();
    let mut prec = 1u32;
    while prec < m {
        prec = (2 * prec).min(m);
        let pm = p.pow(prec);
        let inv = mod_inverse(&dg.eval(&x), &pm).expect("simple root");
        x = (&x - g.eval(&x) * inv).mod_floor(&pm);
    }
    x.mod_floor(&modulus)
}

fn strip_p(g: &IntPolynomial, p: &BigInt) -> IntPolynomial {
    let mut g = g.clone();
    loop {
        match g.div_exact_scalar(p) {
            Some(h) if !h.is_zero() => g = h,
            _ => return g,
        }
    }
}

fn roots_rec(
    g: &IntPolynomial,
    p: &BigInt,
    fp: Fp,
    base: &BigInt,
    depth: u32,
    k: u32,
    out: &mut Vec<BigInt>,
) -> Result<()> {
    if depth >= k {
        return Err(Error::RaisePrecision {
            p: p.clone(),
            precision: k,
        });
    }
    let g = strip_p(g, p);
    let gm = fp.poly(&g);
    let dg = fp.poly(&g.derivative());
    let pd = p.pow(depth);
    let modulus = p.pow(k);
    for t in fp.roots(&gm) {
        let tb = BigInt::from(t);
        if fp.eval(&dg, t) != 0 {
            let y = hensel_lift(&g, &tb, p, k - depth);
            out.push((base + &pd * y).mod_floor(&modulus));
        } else {
            let h = g.shift(&tb).scale_arg(p);
            roots_rec(&h, p, fp, &(base + &pd * &tb), depth + 1, k, out)?;
        }
    }
    Ok(())
}

/// Roots in Z_p of a monic integer polynomial without repeated roots,
/// each returned mod p^k.
pub fn padic_roots(f: &IntPolynomial, p: &BigInt, k: u32) -> Result<Vec<BigInt>> {
    let fp = Fp::from_big(p)?;
    let mut out = Vec::new();
    roots_rec(f, p, fp, &BigInt::zero(), 0, k, &mut out)?;
    out.sort();
    Ok(out)
}

/// e for a cubic with no root in Q_p (so e ∈ {1, 3}).
fn irreducible_cubic_is_ramified(f: &IntPolynomial, p: &BigInt, fp: Fp) -> Result<bool> {
    let mut g = f.clone();
    for _ in 0..256 {
        let gm = fp.poly(&g);
        let roots = fp.roots(&gm);
        if roots.is_empty() {
            return Ok(false);
        }
        if roots.len() > 1 {
            return Err(Error::Inconsistent(format!(
                "cubic without Q_{p} roots has two roots mod p"
            )));
        }
        // g ≡ (x - r)^3 mod p; move the root to 0 and read the Newton polygon
        let h = g.shift(&BigInt::from(roots[0]));
        let v0 = vp(&h.coeff(0), p);
        let v1 = vp(&h.coeff(1), p);
        let v2 = vp(&h.coeff(2), p);
        // single segment from (0, v0) to (3, 0)
        if 3 * v1 as u64 >= 2 * v0 as u64 && 3 * v2 as u64 >= v0 as u64 {
            if !v0.is_multiple_of(3) {
                return Ok(true);
            }
            let m = v0 / 3;
            let pm = p.pow(m);
            g = h
                .scale_arg(&pm)
                .div_exact_scalar(&pm.pow(3))
                .ok_or_else(|| Error::Inconsistent("Newton polygon rescaling".into()))?;
        } else {
            return Err(Error::Inconsistent(format!(
                "cubic without Q_{p} roots has a broken Newton polygon"
            )));
        }
    }
    Err(Error::Inconsistent(
        "ramification loop did not terminate".into(),
    ))
}

/// Classifies `x^2 + b x + c` with no root in Q_p from its discriminant mod p^k.
fn classify_quadratic(b: &BigInt, c: &BigInt, p: &BigInt, k: u32) -> Result<QuadraticKind> {
    let modulus = p.pow(k);
    let disc = (b * b - BigInt::from(4) * c).mod_floor(&modulus);
    let raise = || Error::RaisePrecision {
        p: p.clone(),
        precision: k,
    };
    if disc.is_zero() {
        return Err(raise());
    }
    let v = vp(&disc, p);
    let two = BigInt::from(2);
    let need = if *p == two { v + 3 } else { v + 1 };
    if need > k {
        return Err(raise());
    }
    if v % 2 == 1 {
        return Ok(QuadraticKind::Ramified);
    }
    let unit = &disc / p.pow(v);
    if *p == two {
        match unit.mod_floor(&BigInt::from(8)).to_string().as_str() {
            "5" => Ok(QuadraticKind::Unramified),
            "3" | "7" => Ok(QuadraticKind::Ramified),
            _ => Err(raise()),
        }
    } else {
        let fp = Fp::from_big(p)?;
        match fp.legendre(fp.reduce(&unit)) {
            -1 => Ok(QuadraticKind::Unramified),
            _ => Err(raise()),
        }
    }
}

/// Factorization of a monic squarefree cubic over Q_p to precision `k`.
pub fn cubic_factorization_mod_p(
    f: &IntPolynomial,
    p: &BigInt,
    k: u32,
) -> Result<LocalFactorization> {
    f.require_monic_cubic()?;
    if k == 0 {
        return Err(Error::RaisePrecision {
            p: p.clone(),
            precision: k,
        });
    }
    let fp = Fp::from_big(p)?;
    let modulus = p.pow(k);
    let reduce = |v: Vec<BigInt>| {
        v.into_iter()
            .map(|c| c.mod_floor(&modulus))
            .collect::<Vec<_>>()
    };
    let roots = padic_roots(f, p, k)?;
    let linear = |c: &BigInt| LocalFactor {
        degree: 1,
        e: 1,
        f: 1,
        poly: reduce(vec![-c, BigInt::one()]),
        root: Some(c.clone()),
    };
    let (shape, factors) = match roots.len() {
        0 => {
            let ramified = irreducible_cubic_is_ramified(f, p, fp)?;
            let (e, fdeg) = if ramified { (3, 1) } else { (1, 3) };
            let fac = LocalFactor {
                degree: 3,
                e,
                f: fdeg,
                poly: reduce(f.coeffs().to_vec()),
                root: None,
            };
            (LocalShape::Irreducible { ramified }, vec![fac])
        }
        1 => {
            let c = &roots[0];
            // F = (x - c)(x^2 + b x + d) with b = a2 + c, d = a1 + c b
            let b = (f.coeff(2) + c).mod_floor(&modulus);
            let d = (f.coeff(1) + c * &b).mod_floor(&modulus);
            let kind = classify_quadratic(&b, &d, p, k)?;
            let (e, fdeg) = match kind {
                QuadraticKind::Unramified => (1, 2),
                QuadraticKind::Ramified => (2, 1),
            };
            let quad = LocalFactor {
                degree: 2,
                e,
                f: fdeg,
                poly: vec![d, b, BigInt::one()],
                root: None,
            };
            (
                LocalShape::LinearTimesQuadratic { quadratic: kind },
                vec![linear(c), quad],
            )
        }
        3 => (LocalShape::ThreeLinear, roots.iter().map(linear).collect()),
        n => {
            return Err(Error::Inconsistent(format!(
                "cubic has {n} roots in Q_{p} at precision {k}"
            )));
        }
    };
    Ok(LocalFactorization {
        p: p.clone(),
        precision: k,
        shape,
        factors,
    })
}

/// Retries with doubled precision starting from `v_p(disc) + 5`.
pub fn local_factorization_auto(
    f: &IntPolynomial,
    p: &BigInt,
    disc: &BigInt,
) -> Result<LocalFactorization> {
    let mut k = vp(disc, p).saturating_add(5).min(4096);
    loop {
        match cubic_factorization_mod_p(f, p, k) {
            Err(Error::RaisePrecision { .. }) if k < 4096 => k *= 2,
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn totally_ramified_at_163() {
        let f = IntPolynomial::monic_cubic(-1, -54, 169);
        let fac = local_factorization_auto(&f, &big(163), &big(26569)).unwrap();
        assert_eq!(fac.shape, LocalShape::Irreducible { ramified: true });
        // exhaustive oracle: F ≡ (x - r)^3 mod 163 for a single r
        let r: Vec<i64> = (0i64..163)
            .filter(|&x| (x * x * x - x * x - 54 * x + 169).rem_euclid(163) == 0)
            .collect();
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn three_linear_with_congruent_pair() {
        // x(x + 15)(x - 4)
        let f = IntPolynomial::monic_cubic(11, -60, 0);
        let fac = cubic_factorization_mod_p(&f, &big(5), 6).unwrap();
        assert_eq!(fac.shape, LocalShape::ThreeLinear);
        let seps = fac.root_separations();
        assert_eq!(seps.iter().filter(|(_, _, v)| *v > 0).count(), 1);
        assert_eq!(
            fac.product_mod(),
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&big(5).pow(6)))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn irreducible_mod_two() {
        let f = IntPolynomial::monic_cubic(0, -7, 3);
        let fac = cubic_factorization_mod_p(&f, &big(2), 4).unwrap();
        assert_eq!(fac.shape, LocalShape::Irreducible { ramified: false });
    }

    #[test]
    fn double_root_mod_1129_is_ramified_quadratic() {
        let f = IntPolynomial::monic_cubic(0, -7, 3);
        let fac = local_factorization_auto(&f, &big(1129), &big(1129)).unwrap();
        assert_eq!(
            fac.shape,
            LocalShape::LinearTimesQuadratic {
                quadratic: QuadraticKind::Ramified
            }
        );
        let m = fac.modulus();
        let expect: Vec<BigInt> = f.coeffs().iter().map(|c| c.mod_floor(&m)).collect();
        assert_eq!(fac.product_mod(), expect);
    }

    #[test]
    fn unramified_quadratic_at_good_prime() {
        // x^3 - 7x + 3 mod 5: one root
        let f = IntPolynomial::monic_cubic(0, -7, 3);
        let fp = Fp::new(5);
        let nroots = fp.roots(&fp.poly(&f)).len();
        let fac = cubic_factorization_mod_p(&f, &big(5), 8).unwrap();
        match nroots {
            0 => assert!(matches!(
                fac.shape,
                LocalShape::Irreducible { ramified: false }
            )),
            1 => assert_eq!(
                fac.shape,
                LocalShape::LinearTimesQuadratic {
                    quadratic: QuadraticKind::Unramified
                }
            ),
            _ => assert_eq!(fac.shape, LocalShape::ThreeLinear),
        }
    }

    #[test]
    fn insufficient_precision_is_reported() {
        // roots 0 and 5^4 agree mod 5^4
        let f = IntPolynomial::new(vec![big(0), big(-625), big(-624), big(1)]);
        assert!(matches!(
            cubic_factorization_mod_p(&f, &big(5), 3),
            Err(Error::RaisePrecision { .. })
        ));
        assert!(cubic_factorization_mod_p(&f, &big(5), 10).is_ok());
    }

    #[test]
    fn eisenstein_is_totally_ramified() {
        let f = IntPolynomial::monic_cubic(0, 0, 2);
        let fac = cubic_factorization_mod_p(&f, &big(2), 5).unwrap();
        assert_eq!(fac.shape, LocalShape::Irreducible { ramified: true });
        let g = IntPolynomial::monic_cubic(0, 0, 3);
        let fac = cubic_factorization_mod_p(&g, &big(3), 5).unwrap();
        assert_eq!(fac.shape, LocalShape::Irreducible { ramified: true });
    }
}
