//! Brute-force class group and unit checks that share nothing with the
//! library's relation search beyond ideal arithmetic and embeddings.
//!
//! Principality of an integral ideal `I` is decided by enumerating every
//! element of `I` whose weighted `T2` norm is small enough that, if `I` is
//! principal, some generator must appear. Units serve only to balance the
//! weights, so any full-rank set of units gives a correct answer. The class
//! group is then read off from the ideals of norm up to the Minkowski bound.
//!
//! For units, the same enumeration lists every unit whose log vector lies
//! in the box `[-1, 1]^r` over the library's fundamental units. If the
//! library's units had index `n > 1` in the full group, a unit with a
//! non-integral coordinate would show up there.

use std::collections::BTreeMap;

use cubic_selmer::class_units::ClassUnits;
use cubic_selmer::cubic_field::{CubicField, FieldElement, IdealHnf, OrderCoords};
use cubic_selmer::exact_arith::{primes_up_to, BigRat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

/// Slack for floating point on the enumeration bound.
const FP_SLACK: f64 = 1e-7;

/// A unit log vector is treated as integral over the library's units when
/// every coordinate is this close to an integer.
const LOG_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct OracleClassGroup {
    pub minkowski_bound: u64,
    pub ideals: usize,
    /// Invariant factors `d_1 | d_2 | …`, all greater than one.
    pub invariants: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct OracleUnits {
    /// Units found with log coordinates in `[-1, 1]^r`, up to sign.
    pub found: usize,
    /// Found units whose coordinates are not integers.
    pub off_lattice: Vec<Vec<f64>>,
    /// Whether each `±ε_j` was found.
    pub fundamental_found: bool,
}

/// Per-embedding logs of `|σ_i(x)|`; the complex pair gets one entry each.
fn embedding_logs(k: &CubicField, x: &FieldElement) -> [f64; 3] {
    let m = k.minkowski_coords(&k.basis_coords(x));
    if k.r1() == 3 {
        m.map(|v| v.abs().ln())
    } else {
        let c = (m[1].hypot(m[2]) / std::f64::consts::SQRT_2).ln();
        [m[0].abs().ln(), c, c]
    }
}

/// Minkowski coordinates scaled by `e^{-c}` at each place.
fn weighted(k: &CubicField, x: &[BigRat; 3], center: &[f64; 3]) -> [f64; 3] {
    let m = k.minkowski_coords(x);
    // the two coordinates at the complex place share its weight
    let w = if k.r1() == 3 {
        *center
    } else {
        [center[0], center[1], center[1]]
    };
    std::array::from_fn(|i| m[i] * (-w[i]).exp())
}

/// Size reduction and Lovász swaps on three real vectors, tracking the
/// unimodular change of basis.
fn lll(mut b: [[f64; 3]; 3]) -> ([[f64; 3]; 3], [[i64; 3]; 3]) {
    let dot = |x: &[f64; 3], y: &[f64; 3]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let mut u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut k = 1;
    let mut guard = 0;
    while k < 3 {
        guard += 1;
        assert!(guard < 10_000, "lll did not converge");
        // Gram-Schmidt from scratch; three vectors make this cheap
        let mut bs = b;
        let mut mu = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..i {
                mu[i][j] = dot(&b[i], &bs[j]) / dot(&bs[j], &bs[j]);
                for t in 0..3 {
                    bs[i][t] -= mu[i][j] * bs[j][t];
                }
            }
        }
        let mut reduced = false;
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                for t in 0..3 {
                    b[k][t] -= q * b[j][t];
                    u[k][t] -= q as i64 * u[j][t];
                }
                reduced = true;
                break;
            }
        }
        if reduced {
            continue;
        }
        let lhs = dot(&bs[k], &bs[k]);
        let rhs = (0.75 - mu[k][k - 1].powi(2)) * dot(&bs[k - 1], &bs[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    (b, u)
}

/// Every integer vector `y` with `|Σ y_i b_i|^2 ≤ bound`, by Fincke-Pohst.
fn short_vectors(b: &[[f64; 3]; 3], bound: f64) -> Vec<[i64; 3]> {
    let g: [[f64; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|t| b[i][t] * b[j][t]).sum()));
    // Q(y) = Σ q_ii (y_i + Σ_{j>i} q_ij y_j)^2
    let mut q = g;
    for i in 0..3 {
        for j in i + 1..3 {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for kk in i + 1..3 {
            for l in kk..3 {
                q[kk][l] -= q[kk][i] * q[i][l];
            }
        }
    }
    let mut out = Vec::new();
    let mut y = [0i64; 3];
    descend(&q, bound, 2, 0.0, &mut y, &mut out);
    out
}

fn descend(
    q: &[[f64; 3]; 3],
    bound: f64,
    i: usize,
    used: f64,
    y: &mut [i64; 3],
    out: &mut Vec<[i64; 3]>,
) {
    let center = -(i + 1..3).map(|j| q[i][j] * y[j] as f64).sum::<f64>();
    let room = (bound - used).max(0.0);
    let half = (room / q[i][i]).sqrt();
    let lo = (center - half).ceil() as i64;
    let hi = (center + half).floor() as i64;
    for v in lo..=hi {
        y[i] = v;
        let t = v as f64 - center;
        let next = used + q[i][i] * t * t;
        if next > bound {
            continue;
        }
        if i == 0 {
            out.push(*y);
        } else {
            descend(q, bound, i - 1, next, y, out);
        }
    }
    y[i] = 0;
}

/// Verified unit log vectors used to balance the search weights.
struct Balance {
    logs: Vec<[f64; 3]>,
}

impl Balance {
    fn new(k: &CubicField, units: &[FieldElement]) -> Self {
        for u in units {
            let n = k.norm(u);
            assert!(
                k.is_integral(u) && n.abs().is_one(),
                "claimed unit {u:?} has norm {n}"
            );
        }
        let logs: Vec<[f64; 3]> = units.iter().map(|u| embedding_logs(k, u)).collect();
        assert_eq!(logs.len(), k.unit_rank(), "unit rank");
        Balance { logs }
    }

    /// Cell centers covering `{Σ t_j λ_j : |t_j| ≤ reach}` with each point
    /// within `1/2` of its center at every place.
    fn centers(&self, reach: f64) -> Vec<[f64; 3]> {
        let spread = (0..3)
            .map(|i| self.logs.iter().map(|l| l[i].abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let cells = (2.0 * reach * spread).ceil().max(1.0) as usize;
        let step = 2.0 * reach / cells as f64;
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.logs.len()];
        loop {
            let t: Vec<f64> = idx
                .iter()
                .map(|&c| -reach + (c as f64 + 0.5) * step)
                .collect();
            out.push(std::array::from_fn(|i| {
                t.iter().zip(&self.logs).map(|(tj, l)| tj * l[i]).sum()
            }));
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < cells {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Elements of the integral ideal `ideal` of norm `±N(ideal)` whose
    /// balanced log vector, offset from the mean, lies within `reach`.
    fn search(
        &self,
        k: &CubicField,
        ideal: &IdealHnf,
        reach: f64,
        first_only: bool,
    ) -> Vec<OrderCoords> {
        let n = ideal.norm_int();
        let nf = n.to_f64().expect("small norm");
        // Q_c(x) = N^{2/3} Σ e^{2(w_i - c_i)} ≤ 3 e N^{2/3} when |w - c| ≤ 1/2
        let bound = 3.0 * std::f64::consts::E * nf.powf(2.0 / 3.0) * (1.0 + FP_SLACK) + FP_SLACK;
        let rows: Vec<[BigRat; 3]> = ideal
            .rows()
            .iter()
            .map(|r| r.clone().map(BigRat::from_integer))
            .collect();
        let mut found = BTreeMap::new();
        for c in self.centers(reach) {
            let b: [[f64; 3]; 3] = std::array::from_fn(|i| weighted(k, &rows[i], &c));
            let (red, u) = lll(b);
            for y in short_vectors(&red, bound) {
                if y == [0, 0, 0] {
                    continue;
                }
                // coefficients over the HNF rows, then integral-basis coords
                let coef: [i64; 3] = std::array::from_fn(|j| (0..3).map(|i| y[i] * u[i][j]).sum());
                let x: OrderCoords = std::array::from_fn(|t| {
                    (0..3)
                        .map(|j| BigInt::from(coef[j]) * &ideal.rows()[j][t])
                        .sum()
                });
                if k.norm_int(&x).abs() == n {
                    found.insert(x, ());
                    if first_only {
                        return found.into_keys().collect();
                    }
                }
            }
        }
        found.into_keys().collect()
    }
}

/// Principality by exhaustive search; `None` when no generator exists.
fn generator(k: &CubicField, bal: &Balance, ideal: &IdealHnf) -> Option<OrderCoords> {
    bal.search(k, ideal, 0.5, true).into_iter().next()
}

fn minkowski_bound(k: &CubicField) -> u64 {
    let (_, r2) = k.signature();
    let d = k.field_disc().abs().to_f64().expect("small discriminant");
    let m = (4.0 / std::f64::consts::PI).powi(r2 as i32) * (2.0 / 9.0) * d.sqrt();
    m.floor() as u64
}

/// Integral ideals of norm at most `bound`, as products of prime ideals.
fn ideals_up_to(k: &CubicField, bound: u64) -> Vec<IdealHnf> {
    let mut primes = Vec::new();
    for p in primes_up_to(bound) {
        for q in k
            .factor_prime(&BigInt::from(p))
            .expect("factor small prime")
        {
            let n = q.norm().to_u64().expect("small");
            if n <= bound {
                primes.push((q.ideal().clone(), n));
            }
        }
    }
    let mut out = vec![(IdealHnf::unit(), 1u64)];
    for (q, n) in primes {
        let mut next = Vec::new();
        for (i, m) in &out {
            let (mut j, mut norm) = (i.clone(), *m);
            while norm * n <= bound {
                j = k.ideal_mul(&j, &q);
                norm *= n;
                next.push((j.clone(), norm));
            }
        }
        out.extend(next);
    }
    out.into_iter().map(|(i, _)| i).collect()
}

/// `N(J) J^{-1}`, integral and in the inverse class.
fn conjugate(k: &CubicField, j: &IdealHnf) -> IdealHnf {
    k.ideal_inverse(j)
        .scale(&BigRat::from_integer(j.norm_int()))
}

fn same_class(k: &CubicField, bal: &Balance, a: &IdealHnf, b: &IdealHnf) -> bool {
    generator(k, bal, &k.ideal_mul(a, &conjugate(k, b))).is_some()
}

/// Invariant factors from the multiplication table of a finite abelian
/// group, via the counts `|G[m]|`.
fn invariants_from_table(table: &[Vec<usize>], identity: usize) -> Vec<u64> {
    let h = table.len();
    let order_of = |g: usize| {
        let (mut x, mut n) = (g, 1u64);
        while x != identity {
            x = table[x][g];
            n += 1;
        }
        n
    };
    let orders: Vec<u64> = (0..h).map(order_of).collect();
    let mut invariants: Vec<u64> = vec![1; h.max(1)];
    let mut n = h as u64;
    let mut p = 2;
    while n > 1 {
        if !n.is_multiple_of(p) {
            p += 1;
            continue;
        }
        while n.is_multiple_of(p) {
            n /= p;
        }
        // number of cyclic p-factors of order ≥ p^e is log_p(|G[p^e]| / |G[p^{e-1}]|)
        let torsion = |e: u32| orders.iter().filter(|&&o| p.pow(e) % o == 0).count() as u64;
        let mut e = 1;
        loop {
            let ratio = torsion(e) / torsion(e - 1);
            if ratio == 1 {
                break;
            }
            let count = ratio.ilog(p) as usize;
            for slot in invariants.iter_mut().rev().take(count) {
                *slot *= p;
            }
            e += 1;
        }
    }
    invariants.retain(|&d| d > 1);
    invariants
}

pub fn class_group(cu: &ClassUnits) -> OracleClassGroup {
    let k = cu.field();
    let bal = Balance::new(k, cu.unit_group().fundamental_units());
    let bound = minkowski_bound(k);
    let ideals = ideals_up_to(k, bound);
    let mut reps: Vec<IdealHnf> = Vec::new();
    for i in &ideals {
        if !reps.iter().any(|r| same_class(k, &bal, i, r)) {
            reps.push(i.clone());
        }
    }
    // reps[0] is the unit ideal
    let class_of = |i: &IdealHnf| {
        reps.iter()
            .position(|r| same_class(k, &bal, i, r))
            .expect("every ideal is equivalent to one of norm below the bound")
    };
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|a| reps.iter().map(|b| class_of(&k.ideal_mul(a, b))).collect())
        .collect();
    OracleClassGroup {
        minkowski_bound: bound,
        ideals: ideals.len(),
        invariants: invariants_from_table(&table, 0),
    }
}

pub fn units(cu: &ClassUnits) -> OracleUnits {
    units_against(cu.field(), cu.unit_group().fundamental_units())
}

/// Checks a claimed system of fundamental units of `k`.
pub fn units_against(k: &CubicField, fundamental: &[FieldElement]) -> OracleUnits {
    let bal = Balance::new(k, fundamental);
    let r = bal.logs.len();
    // coordinates over the fundamental logs at the first r places
    let solve = |l: &[f64; 3]| -> Vec<f64> {
        if r == 1 {
            vec![l[0] / bal.logs[0][0]]
        } else {
            let m = [
                [bal.logs[0][0], bal.logs[1][0]],
                [bal.logs[0][1], bal.logs[1][1]],
            ];
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            vec![
                (l[0] * m[1][1] - l[1] * m[0][1]) / det,
                (m[0][0] * l[1] - m[1][0] * l[0]) / det,
            ]
        }
    };
    let mut found = 0;
    let mut off_lattice = Vec::new();
    let mut hits = vec![false; r];
    for x in bal.search(k, &IdealHnf::unit(), 1.0, false) {
        let t = solve(&embedding_logs(k, &k.from_order(&x)));
        if t.iter().any(|v| v.abs() > 1.0 + LOG_TOLERANCE) {
            continue;
        }
        found += 1;
        if t.iter().any(|v| (v - v.round()).abs() > LOG_TOLERANCE) {
            off_lattice.push(t.clone());
            continue;
        }
        let rounded: Vec<i64> = t.iter().map(|v| v.round() as i64).collect();
        for (j, hit) in hits.iter_mut().enumerate() {
            if (0..r).all(|i| rounded[i] == i64::from(i == j)) {
                *hit = true;
            }
        }
    }
    OracleUnits {
        found,
        off_lattice,
        fundamental_found: hits.iter().all(|&h| h),
    }
}

/// The library's class group as invariant factors, for comparison.
pub fn library_invariants(cu: &ClassUnits) -> Vec<u64> {
    let mut v: Vec<u64> = cu
        .class_group()
        .elementary_divisors()
        .iter()
        .map(|d| d.to_u64().expect("small"))
        .filter(|&d| d > 1)
        .collect();
    v.sort_unstable();
    v
}
