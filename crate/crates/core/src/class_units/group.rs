//! Finite abelian groups given by generators and relations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::lattice::{hnf_basis, smith_normal_form};

/// `Z^n / L` for a full-rank relation lattice `L`, reduced to Smith form.
///
/// Columns that carry a unit pivot in the Hermite basis are eliminated
/// first, so the Smith computation only sees the few columns that survive.
#[derive(Clone, Debug)]
pub struct AbelianGroupPresentation {
    ncols: usize,
    hnf: Vec<Vec<BigInt>>,
    // image of each column in the surviving columns
    sub: Vec<Vec<BigInt>>,
    // column transform of the Smith form over the surviving columns
    v: Vec<Vec<BigInt>>,
    diag: Vec<BigInt>,
    // index of the first diagonal entry above one
    first: usize,
    generators: Vec<Vec<BigInt>>,
}

/// Group invariants in the form stored by reports and caches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub elementary_divisors: Vec<String>,
    pub order: String,
    pub two_rank: usize,
}

impl AbelianGroupPresentation {
    /// Builds the presentation from any spanning set of the relation lattice.
    pub fn from_relations(
        ncols: usize,
        rows: impl IntoIterator<Item = Vec<BigInt>>,
    ) -> Result<Self> {
        let hnf = hnf_basis(ncols, rows);
        if hnf.len() != ncols {
            return Err(Error::Inconsistent(format!(
                "relation lattice has rank {} < {ncols}",
                hnf.len()
            )));
        }
        Ok(Self::from_hnf(hnf))
    }

    /// `hnf` must be the reduced lower-triangular basis, row `c` with pivot `c`.
    pub(crate) fn from_hnf(hnf: Vec<Vec<BigInt>>) -> Self {
        let n = hnf.len();
        let core: Vec<usize> = (0..n).filter(|&c| !hnf[c][c].is_one()).collect();
        let m = core.len();
        let mut sub: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        let mut core_pos = 0;
        for c in 0..n {
            if core.get(core_pos) == Some(&c) {
                let mut e = vec![BigInt::zero(); m];
                e[core_pos] = BigInt::one();
                sub.push(e);
                core_pos += 1;
            } else {
                // e_c = -Σ_{j<c} h_cj e_j
                let mut e = vec![BigInt::zero(); m];
                for j in 0..c {
                    if !hnf[c][j].is_zero() {
                        for (x, y) in e.iter_mut().zip(&sub[j]) {
                            *x -= &hnf[c][j] * y;
                        }
                    }
                }
                sub.push(e);
            }
        }
        let rels: Vec<Vec<BigInt>> = core
            .iter()
            .map(|&c| {
                let mut r = vec![BigInt::zero(); m];
                for j in 0..=c {
                    if !hnf[c][j].is_zero() {
                        for (x, y) in r.iter_mut().zip(&sub[j]) {
                            *x += &hnf[c][j] * y;
                        }
                    }
                }
                r
            })
            .collect();
        let smith = smith_normal_form(&rels, m);
        let first = smith.diag.iter().position(|d| !d.is_one()).unwrap_or(m);
        let mut out = AbelianGroupPresentation {
            ncols: n,
            hnf,
            sub,
            v: smith.v,
            diag: smith.diag,
            first,
            generators: Vec::new(),
        };
        // generator i is row i of V^{-1}, pulled back to the full columns
        out.generators = (first..m)
            .map(|i| {
                let mut g = vec![BigInt::zero(); n];
                for (t, &c) in core.iter().enumerate() {
                    g[c] = smith.v_inv[i][t].clone();
                }
                out.reduce(&g)
            })
            .collect();
        out
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Invariant factors `d_1 | d_2 | …`, all above one.
    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.diag[self.first..]
    }

    pub fn order(&self) -> BigInt {
        self.elementary_divisors().iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.elementary_divisors().is_empty()
    }

    /// Exponent vectors (over the columns) of the cyclic generators.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// The relation lattice in Hermite form.
    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.hnf
    }

    /// Coordinates of the class of `x` on the cyclic generators, each
    /// reduced into `[0, d_i)`.
    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ncols);
        let m = self.diag.len();
        let mut y = vec![BigInt::zero(); m];
        for (xc, s) in x.iter().zip(&self.sub) {
            if xc.is_zero() {
                continue;
            }
            for (yi, si) in y.iter_mut().zip(s) {
                *yi += xc * si;
            }
        }
        (self.first..m)
            .map(|i| {
                let yi = (0..m).fold(BigInt::zero(), |acc, t| acc + &y[t] * &self.v[t][i]);
                yi.mod_floor(&self.diag[i])
            })
            .collect()
    }

    pub fn is_identity(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).iter().all(|c| c.is_zero())
    }

    /// Exponent vector of the element with the given coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut g = vec![BigInt::zero(); self.ncols];
        for (c, gen) in coords.iter().zip(&self.generators) {
            for (x, y) in g.iter_mut().zip(gen) {
                *x += c * y;
            }
        }
        self.reduce(&g)
    }

    /// Canonical representative of `x` modulo the relations: entries in
    /// `[0, h_cc)` and zero on eliminated columns.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut v = x.to_vec();
        for c in (0..self.ncols).rev() {
            let q = v[c].div_floor(&self.hnf[c][c]);
            if !q.is_zero() {
                for (a, b) in v.iter_mut().zip(&self.hnf[c]) {
                    *a -= &q * b;
                }
            }
        }
        v
    }

    /// Number of cyclic factors of order divisible by `ell`.
    pub fn rank_at(&self, ell: u64) -> usize {
        let l = BigInt::from(ell);
        self.elementary_divisors()
            .iter()
            .filter(|d| d.is_multiple_of(&l))
            .count()
    }

    /// Basis of the `ell`-torsion as coordinate vectors.
    pub fn torsion_basis(&self, ell: u64) -> Vec<Vec<BigInt>> {
        let l = BigInt::from(ell);
        let d = self.elementary_divisors();
        (0..d.len())
            .filter(|&i| d[i].is_multiple_of(&l))
            .map(|i| {
                let mut c = vec![BigInt::zero(); d.len()];
                c[i] = &d[i] / &l;
                c
            })
            .collect()
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            elementary_divisors: self
                .elementary_divisors()
                .iter()
                .map(|d| d.to_string())
                .collect(),
            order: self.order().to_string(),
            two_rank: two_rank(self),
        }
    }
}

/// `dim_F2 G/2G`.
pub fn two_rank(g: &AbelianGroupPresentation) -> usize {
    g.rank_at(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn klein_four_from_redundant_relations() {
        let g = AbelianGroupPresentation::from_relations(
            3,
            vec![
                bv(&[2, 0, 0]),
                bv(&[0, 2, 0]),
                bv(&[1, 1, 1]),
                bv(&[0, 0, 4]),
            ],
        )
        .unwrap();
        let d: Vec<i64> = g
            .elementary_divisors()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(d, vec![2, 2]);
        assert_eq!(two_rank(&g), 2);
        // e_3 = -(e_1 + e_2) = e_1 + e_2 in the quotient
        let a = g.coordinates(&bv(&[0, 0, 1]));
        let b = g.coordinates(&bv(&[1, 1, 0]));
        assert_eq!(a, b);
        assert!(g.is_identity(&bv(&[2, 2, 2])));
    }

    #[test]
    fn rejects_rank_deficient() {
        assert!(AbelianGroupPresentation::from_relations(2, vec![bv(&[1, 2])]).is_err());
    }

    proptest! {
        #[test]
        fn dlog_is_a_homomorphism_onto_generators(
            entries in proptest::collection::vec(-6i64..=6, 9),
            x in proptest::collection::vec(-20i64..=20, 3),
            y in proptest::collection::vec(-20i64..=20, 3),
        ) {
            let mut rows: Vec<Vec<BigInt>> = entries.chunks(3).map(bv).collect();
            rows.push(bv(&[7, 0, 0]));
            rows.push(bv(&[0, 9, 0]));
            rows.push(bv(&[0, 0, 12]));
            let g = AbelianGroupPresentation::from_relations(3, rows.clone()).unwrap();
            // order equals the lattice index
            let det: BigInt = g.relations().iter().enumerate().map(|(i, r)| r[i].clone()).product();
            prop_assert_eq!(g.order(), det);
            let (bx, by) = (bv(&x), bv(&y));
            let sum: Vec<BigInt> = bx.iter().zip(&by).map(|(a, b)| a + b).collect();
            let (cx, cy, cs) = (g.coordinates(&bx), g.coordinates(&by), g.coordinates(&sum));
            for i in 0..cs.len() {
                let d = &g.elementary_divisors()[i];
                prop_assert_eq!(&cs[i], &(&cx[i] + &cy[i]).mod_floor(d));
            }
            // every relation is trivial, and generators map to unit vectors
            for r in &rows {
                prop_assert!(g.is_identity(r));
            }
            for (i, gen) in g.generators().iter().enumerate() {
                let c = g.coordinates(gen);
                for (j, cj) in c.iter().enumerate() {
                    prop_assert_eq!(cj.is_one(), i == j);
                    prop_assert!(cj.is_zero() || i == j);
                }
            }
            // reduce is a class invariant and canonical
            let rx = g.reduce(&bx);
            prop_assert_eq!(g.coordinates(&rx), cx.clone());
            prop_assert_eq!(g.element(&cx), rx);
        }
    }
}
