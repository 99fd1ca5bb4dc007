//! Prime ideals above a rational prime, found by splitting the reduced
//! algebra `O/pO` modulo its radical, and valuations through a
//! uniformizing multiplier.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::order::{unit_u64, TableModP};
use super::{CubicField, FieldElement, IdealHnf, OrderCoords};
use crate::error::{Error, Result};
use crate::exact_arith::modp::{Fp, Subspace};
use crate::exact_arith::{is_prime, valuation};

/// A prime ideal `P | p` with ramification index `e` and residue degree `f`.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    p: BigInt,
    e: u32,
    f: u32,
    ideal: IdealHnf,
    // τ ∈ p·P^{-1} \ pO, so that x ∈ P ⟺ xτ ∈ pO
    tau: OrderCoords,
    tau_small: Option<[i64; 3]>,
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.ideal == o.ideal
    }
}

impl Eq for PrimeIdeal {}

impl PrimeIdeal {
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn ideal(&self) -> &IdealHnf {
        &self.ideal
    }

    /// `N(P) = p^f`.
    pub fn norm(&self) -> BigInt {
        self.p.pow(self.f)
    }

    /// `v_P(x)` for a nonzero integral element.
    pub fn valuation_int(&self, k: &CubicField, x: &OrderCoords) -> u32 {
        assert!(x.iter().any(|c| !c.is_zero()), "valuation of zero");
        let mut x = x.clone();
        let mut v = 0;
        loop {
            let y = k.mul_int(&x, &self.tau);
            if y.iter().any(|c| !c.is_multiple_of(&self.p)) {
                return v;
            }
            x = y.map(|c| c / &self.p);
            v += 1;
        }
    }

    /// `v_P(x)` for a small nonzero integral element, `None` on overflow.
    pub fn valuation_small(&self, k: &CubicField, x: &[i64; 3]) -> Option<u32> {
        let tau = self.tau_small.as_ref()?;
        let p = self.p.to_i64()?;
        let mut x = *x;
        let mut v = 0;
        loop {
            let y = k.mul_small(&x, tau)?;
            if y.iter().any(|c| c % p != 0) {
                return Some(v);
            }
            x = y.map(|c| c / p);
            v += 1;
        }
    }

    pub fn valuation(&self, k: &CubicField, a: &FieldElement) -> Result<i64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let c = k.basis_coords(a);
        let d = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let x = c.map(|q| (q * crate::exact_arith::BigRat::from_integer(d.clone())).to_integer());
        Ok(self.valuation_int(k, &x) as i64 - (self.e * valuation(&d, &self.p)) as i64)
    }

    /// `v_P(I) = min` over a Z-basis.
    pub fn ideal_valuation(&self, k: &CubicField, i: &IdealHnf) -> i64 {
        let m = i
            .rows()
            .iter()
            .map(|r| self.valuation_int(k, r))
            .min()
            .unwrap() as i64;
        m - (self.e * valuation(i.denominator(), &self.p)) as i64
    }

    /// Image in `O/P = F_p` of an integral element, for degree-one primes.
    pub fn residue(&self, x: &OrderCoords) -> Option<BigInt> {
        (self.f == 1).then(|| self.ideal.reduce(x)[0].clone())
    }
}

/// Maximal ideals of `O/pO` containing `j` (an ideal containing the radical).
fn split(tp: &TableModP, j: Subspace, out: &mut Vec<Subspace>) {
    let fp = tp.fp;
    if 3 - j.rank() <= 1 {
        out.push(j);
        return;
    }
    // Berlekamp: {x : x^p ≡ x mod J} has dimension dim J + (number of factors)
    let rows: Vec<Vec<u64>> = (0..3)
        .map(|i| {
            let u = unit_u64(i);
            let xp = tp.pow(&u, fp.p);
            j.reduce(
                &xp.iter()
                    .zip(&u)
                    .map(|(a, b)| fp.sub(*a, *b))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let fixed = fp.left_kernel(&rows);
    if fixed.len() - j.rank() <= 1 {
        out.push(j);
        return;
    }
    let mut base = j.clone();
    base.add(unit_u64(0));
    let x = fixed
        .into_iter()
        .find(|v| !base.contains(v))
        .expect("split algebra has a nontrivial idempotent direction");
    // minimal polynomial of x modulo J
    let mut powers = vec![j.reduce(&unit_u64(0))];
    let mut cur = unit_u64(0);
    let minpoly = loop {
        cur = tp.mul(&cur, &x);
        powers.push(j.reduce(&cur));
        if let Some(dep) = fp.left_kernel(&powers).into_iter().next() {
            break dep;
        }
    };
    for c in fp.roots(&fp.monic(&minpoly)) {
        let xc: Vec<u64> = x
            .iter()
            .enumerate()
            .map(|(i, &a)| if i == 0 { fp.sub(a, c) } else { a })
            .collect();
        let mut jc = j.clone();
        for i in 0..3 {
            jc.add(tp.mul(&xc, &unit_u64(i)));
        }
        split(tp, jc, out);
    }
}

impl CubicField {
    /// The primes above `p` with their `(e, f)`, sorted by residue degree
    /// and then by Hermite basis.
    pub fn factor_prime(&self, p: &BigInt) -> Result<Vec<PrimeIdeal>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.clone()));
        }
        let fp = Fp::from_big(p)?;
        let tp = TableModP::new(self.mult_table(), fp);
        let radical = Subspace::spanned_by(fp, 3, tp.radical());
        let mut maximal = Vec::new();
        split(&tp, radical, &mut maximal);
        let mut out = Vec::with_capacity(maximal.len());
        for j in maximal {
            let gens = j
                .basis()
                .iter()
                .map(|v| v.iter().map(|&c| BigInt::from(c)).collect())
                .chain((0..3).map(|i| {
                    let mut e = vec![BigInt::zero(); 3];
                    e[i] = p.clone();
                    e
                }));
            let ideal = IdealHnf::from_int_rows(gens, BigInt::one()).expect("contains pO");
            let tau: OrderCoords = if j.rank() == 0 {
                self.unit_coords(0)
            } else {
                let rows: Vec<Vec<u64>> = (0..3)
                    .map(|i| {
                        j.basis()
                            .iter()
                            .flat_map(|pi| tp.mul(&unit_u64(i), pi))
                            .collect()
                    })
                    .collect();
                let ker = fp.left_kernel(&rows);
                let t = ker.first().ok_or_else(|| {
                    Error::Inconsistent(format!("no uniformizer multiplier at {p}"))
                })?;
                std::array::from_fn(|i| BigInt::from(t[i]))
            };
            let tau_small = tau
                .iter()
                .map(|c| c.to_i64())
                .collect::<Option<Vec<_>>>()
                .map(|v| [v[0], v[1], v[2]]);
            let f = 3 - j.rank() as u32;
            let mut prime = PrimeIdeal {
                p: p.clone(),
                e: 0,
                f,
                ideal,
                tau,
                tau_small,
            };
            prime.e = prime.valuation_int(self, &[p.clone(), BigInt::zero(), BigInt::zero()]);
            out.push(prime);
        }
        let total: u32 = out.iter().map(|q| q.e * q.f).sum();
        if total != 3 {
            return Err(Error::Inconsistent(format!("Σ e·f = {total} at p = {p}")));
        }
        out.sort_by(|a, b| a.f.cmp(&b.f).then_with(|| a.ideal.cmp(&b.ideal)));
        Ok(out)
    }

    /// `(e, f)` pairs above `p`.
    pub fn splitting_type(&self, p: &BigInt) -> Result<Vec<(u32, u32)>> {
        Ok(self.factor_prime(p)?.iter().map(|q| (q.e, q.f)).collect())
    }

    /// Prime ideal factorization of a nonzero fractional ideal.
    pub fn factor_ideal(&self, i: &IdealHnf) -> Result<Vec<(PrimeIdeal, i64)>> {
        let n = i.norm();
        let mut ps: Vec<BigInt> = crate::exact_arith::factor_integer(n.numer())?
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        ps.extend(
            crate::exact_arith::factor_integer(n.denom())?
                .into_iter()
                .map(|(p, _)| p),
        );
        for (p, _) in crate::exact_arith::factor_integer(i.denominator())? {
            ps.push(p);
        }
        ps.sort();
        ps.dedup();
        let mut out = Vec::new();
        for p in ps {
            for q in self.factor_prime(&p)? {
                let v = q.ideal_valuation(self, i);
                if v != 0 {
                    out.push((q, v));
                }
            }
        }
        Ok(out)
    }
}
