//! Factor bases, LLL-reduced ideal lattices and short-element enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cubic_field::{CubicField, IdealHnf, OrderCoords, PrimeIdeal};
use crate::error::Result;
use crate::exact_arith::lattice::{fincke_pohst, lll_real};
use crate::exact_arith::{primes_up_to, BigRat};

/// Prime ideals of norm at most `bound`, ordered by norm.
#[derive(Clone, Debug)]
pub(crate) struct FactorBase {
    pub primes: Vec<PrimeIdeal>,
    // every prime above each rational p <= bound, with its column if any
    pub above: Vec<(u64, Vec<(PrimeIdeal, Option<usize>)>)>,
    pub bound: u64,
}

/// A sparse exponent vector over the factor base columns.
pub(crate) type Sparse = Vec<(usize, i64)>;

impl FactorBase {
    pub fn new(k: &CubicField, bound: u64) -> Result<Self> {
        let mut all: Vec<PrimeIdeal> = Vec::new();
        let mut raw: Vec<(u64, Vec<PrimeIdeal>)> = Vec::new();
        for p in primes_up_to(bound) {
            let ps = k.factor_prime(&BigInt::from(p))?;
            all.extend(
                ps.iter()
                    .filter(|q| q.norm() <= BigInt::from(bound))
                    .cloned(),
            );
            raw.push((p, ps));
        }
        all.sort_by(|a, b| {
            a.norm()
                .cmp(&b.norm())
                .then_with(|| a.ideal().cmp(b.ideal()))
        });
        let above = raw
            .into_iter()
            .map(|(p, ps)| {
                let tagged = ps.into_iter().map(|q| {
                    let col = all.iter().position(|x| x == &q);
                    (q, col)
                });
                (p, tagged.collect())
            })
            .collect();
        Ok(FactorBase {
            primes: all,
            above,
            bound,
        })
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    /// Valuation vector of a small integral element with norm `n`, when
    /// every prime dividing it lies in the base.
    pub fn factor_small(&self, k: &CubicField, x: &[i64; 3], n: i128) -> Option<Sparse> {
        let mut m = n.unsigned_abs();
        let mut out: Sparse = Vec::new();
        for (p, above) in &self.above {
            if m == 1 {
                break;
            }
            let pp = *p as u128;
            let mut a = 0u32;
            while m.is_multiple_of(pp) {
                m /= pp;
                a += 1;
            }
            if a == 0 {
                continue;
            }
            let vals =
                self.valuations_above(above, a, |q| q.valuation_small(k, x).map(i64::from))?;
            for ((_, col), v) in above.iter().zip(vals) {
                if v > 0 {
                    out.push(((*col)?, v));
                }
            }
        }
        (m == 1).then(|| {
            out.sort_unstable();
            out
        })
    }

    /// As `factor_small` for an arbitrary nonzero integral element.
    pub fn factor_element(&self, k: &CubicField, x: &OrderCoords) -> Option<Sparse> {
        let mut m = k.norm_int(x).abs();
        let mut out: Sparse = Vec::new();
        for (p, above) in &self.above {
            if m.is_one() {
                break;
            }
            let bp = BigInt::from(*p);
            let mut a = 0u32;
            while m.is_multiple_of(&bp) {
                m /= &bp;
                a += 1;
            }
            if a == 0 {
                continue;
            }
            let vals =
                self.valuations_above(above, a, |q| Some(i64::from(q.valuation_int(k, x))))?;
            for ((_, col), v) in above.iter().zip(vals) {
                if v > 0 {
                    out.push(((*col)?, v));
                }
            }
        }
        m.is_one().then(|| {
            out.sort_unstable();
            out
        })
    }

    /// Valuation vector of an integral ideal, when it is smooth over the base.
    pub fn factor_ideal(&self, k: &CubicField, j: &IdealHnf) -> Option<Sparse> {
        let mut m = j.norm_int();
        let mut out: Sparse = Vec::new();
        for (p, above) in &self.above {
            if m.is_one() {
                break;
            }
            let bp = BigInt::from(*p);
            if !m.is_multiple_of(&bp) {
                continue;
            }
            for (q, col) in above {
                let v = q.ideal_valuation(k, j);
                if v > 0 {
                    out.push(((*col)?, v));
                    m /= q.norm().pow(v as u32);
                }
            }
        }
        m.is_one().then(|| {
            out.sort_unstable();
            out
        })
    }

    /// Valuations at the primes above `p` given `v_p(N) = a`; the last one
    /// follows from the norm equation.
    fn valuations_above(
        &self,
        above: &[(PrimeIdeal, Option<usize>)],
        a: u32,
        val: impl Fn(&PrimeIdeal) -> Option<i64>,
    ) -> Option<Vec<i64>> {
        let n = above.len();
        let mut vals = Vec::with_capacity(n);
        let mut rest = i64::from(a);
        for (q, _) in &above[..n - 1] {
            let v = val(q)?;
            rest -= v * i64::from(q.f());
            vals.push(v);
        }
        let fl = i64::from(above[n - 1].0.f());
        if rest < 0 || rest % fl != 0 {
            return None;
        }
        vals.push(rest / fl);
        Some(vals)
    }

    pub fn dense(&self, s: &Sparse) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.len()];
        for &(c, e) in s {
            v[c] += e;
        }
        v
    }
}

/// An integral ideal with a T2-reduced basis and its Gram matrix.
#[derive(Clone, Debug)]
pub(crate) struct ReducedLattice {
    pub basis: Vec<OrderCoords>,
    pub small: Option<Vec<[i64; 3]>>,
    pub mink: Vec<[f64; 3]>,
}

impl ReducedLattice {
    pub fn new(k: &CubicField, ideal: &IdealHnf) -> Self {
        debug_assert!(ideal.is_integral());
        let rows: Vec<OrderCoords> = ideal.rows().to_vec();
        let mut mink: Vec<Vec<f64>> = rows.iter().map(|r| mink_of(k, r).to_vec()).collect();
        let mut t: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|j| i64::from(i == j)).collect())
            .collect();
        lll_real(&mut mink, &mut t);
        let basis: Vec<OrderCoords> = t
            .iter()
            .map(|ti| {
                std::array::from_fn(|c| {
                    (0..3).fold(BigInt::zero(), |acc, j| {
                        acc + BigInt::from(ti[j]) * &rows[j][c]
                    })
                })
            })
            .collect();
        let small = basis
            .iter()
            .map(|b| {
                let v: Option<Vec<i64>> = b
                    .iter()
                    .map(|x| x.to_i64().filter(|y| y.abs() < 1 << 40))
                    .collect();
                v.map(|v| [v[0], v[1], v[2]])
            })
            .collect();
        let mink = basis.iter().map(|b| mink_of(k, b)).collect();
        ReducedLattice { basis, small, mink }
    }

    /// Gram matrix of the weighted form `Σ_t w_t m_t(x)^2`.
    pub fn gram(&self, w: &[f64; 3]) -> Vec<Vec<f64>> {
        (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        (0..3)
                            .map(|t| w[t] * self.mink[i][t] * self.mink[j][t])
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn element(&self, x: &[i64]) -> OrderCoords {
        std::array::from_fn(|c| {
            (0..3).fold(BigInt::zero(), |acc, j| {
                acc + BigInt::from(x[j]) * &self.basis[j][c]
            })
        })
    }

    pub fn element_small(&self, x: &[i64]) -> Option<[i64; 3]> {
        let b = self.small.as_ref()?;
        let mut out = [0i64; 3];
        for (c, o) in out.iter_mut().enumerate() {
            let mut s = 0i64;
            for j in 0..3 {
                s = s.checked_add(x[j].checked_mul(b[j][c])?)?;
            }
            *o = s;
        }
        Some(out)
    }

    /// Shortest basis vector.
    pub fn shortest(&self) -> &OrderCoords {
        &self.basis[0]
    }

    /// Nonzero vectors with `T2 <= bound`, one per sign pair.
    pub fn short_vectors(&self, bound: f64, mut visit: impl FnMut(&[i64]) -> bool) {
        let g = self.gram(&[1.0; 3]);
        fincke_pohst(&g, bound, |x| {
            let lead = x.iter().rev().find(|&&c| c != 0).copied().unwrap_or(0);
            if lead < 0 {
                return true;
            }
            visit(x)
        });
    }

    pub fn t2(&self, x: &[i64]) -> f64 {
        let mut m = [0.0; 3];
        for (j, &xj) in x.iter().enumerate() {
            for t in 0..3 {
                m[t] += xj as f64 * self.mink[j][t];
            }
        }
        m.iter().map(|v| v * v).sum()
    }
}

pub(crate) fn mink_of(k: &CubicField, x: &OrderCoords) -> [f64; 3] {
    k.minkowski_coords(&x.clone().map(BigRat::from_integer))
}

/// `J = (β)·I^{-1}` for the shortest `β` of `I`; `J` is integral of small
/// norm and lies in the inverse class.
pub(crate) fn reduce_once(k: &CubicField, i: &IdealHnf) -> (IdealHnf, OrderCoords) {
    let lat = ReducedLattice::new(k, i);
    let beta = lat.shortest().clone();
    let pb = k
        .principal_ideal(&k.from_order(&beta))
        .expect("nonzero basis vector");
    let j = k.ideal_mul(&pb, &k.ideal_inverse(i));
    (j, beta)
}

/// Small integral `J` in the class of `I` and `ρ` with `I = ρ·J`.
pub(crate) fn reduce_in_class(
    k: &CubicField,
    i: &IdealHnf,
) -> (IdealHnf, crate::cubic_field::FieldElement) {
    let (i0, d) = k.integral_part(i);
    let (j1, b1) = reduce_once(k, &i0);
    let (j2, b2) = reduce_once(k, &j1);
    // I0 = (β1/β2)·J2
    let rho = k
        .div(&k.from_order(&b1), &k.from_order(&b2))
        .expect("nonzero");
    let rho = rho.scale(&BigRat::new(BigInt::one(), d));
    (j2, rho)
}

/// Rounded-up Minkowski bound `(2/9)(4/π)^{r2}·√|D|`, computed exactly
/// from `4/π <= 12733/10000` and `√|D| <= isqrt(|D|) + 1`.
pub fn minkowski_bound(k: &CubicField) -> BigInt {
    let d = k.field_disc().abs();
    let s = d.sqrt() + 1u32;
    let (num, den) = if k.r1() == 1 {
        (BigInt::from(2 * 12733) * s, BigInt::from(9 * 10000))
    } else {
        (BigInt::from(2) * s, BigInt::from(9))
    };
    num.div_ceil(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::IntPolynomial;

    #[test]
    fn minkowski_bounds_of_fixtures() {
        // field discriminant 26569, √ = 163: (2/9)·164 = 36.4
        let k = CubicField::new(&IntPolynomial::monic_cubic(-1, -54, 169)).unwrap();
        assert_eq!(minkowski_bound(&k), BigInt::from(37));
        // -4516, r2 = 1
        let k = CubicField::new(&IntPolynomial::monic_cubic(0, 1, 3)).unwrap();
        assert!(minkowski_bound(&k) >= BigInt::from(2));
    }

    #[test]
    fn smooth_factorization_agrees_with_ideal_factorization() {
        let k = CubicField::new(&IntPolynomial::monic_cubic(0, -7, 3)).unwrap();
        let fb = FactorBase::new(&k, 50).unwrap();
        let lat = ReducedLattice::new(&k, &IdealHnf::unit());
        let mut checked = 0;
        lat.short_vectors(200.0, |x| {
            let e = lat.element_small(x).unwrap();
            let n = k.norm_small(&e).unwrap();
            if let Some(s) = fb.factor_small(&k, &e, n) {
                let big = lat.element(x);
                assert_eq!(fb.factor_element(&k, &big), Some(s.clone()));
                let id = k.principal_ideal(&k.from_order(&big)).unwrap();
                assert_eq!(fb.factor_ideal(&k, &id), Some(s));
                checked += 1;
            }
            true
        });
        assert!(checked > 20);
    }

    #[test]
    fn reduction_keeps_the_class() {
        let k = CubicField::new(&IntPolynomial::monic_cubic(-1, -54, 169)).unwrap();
        let p = k.factor_prime(&BigInt::from(7)).unwrap();
        let i = k.ideal_pow(p[0].ideal(), 5);
        let (j, rho) = reduce_in_class(&k, &i);
        assert!(j.is_integral());
        assert!(j.norm_int() < BigInt::from(1000));
        assert_eq!(k.ideal_mul(&k.principal_ideal(&rho).unwrap(), &j), i);
    }
}
