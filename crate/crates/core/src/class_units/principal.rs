//! Exhaustive generator search over a fundamental domain of the units.
//!
//! If `J = (α)`, some unit multiple of `α` has centered log embedding in
//! the parallelotope spanned by any full-rank set of unit logs. Cutting
//! that parallelotope into cells bounds `|σ_i(α)|` per cell, and each cell
//! becomes one ellipsoid enumeration in the lattice of `J`. Finding no
//! element of norm `N(J)` in any cell proves `J` non-principal.
//!
//! Cells are visited in order along each unit direction and the lattice
//! basis is re-reduced from the previous cell, so each reduction only
//! corrects a mild change of weights. Embeddings of the (possibly huge)
//! basis elements are taken in fixed point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::compact::ln_abs;
use super::precise::PreciseMinkowski;
use super::search::ReducedLattice;
use crate::cubic_field::{CubicField, IdealHnf, OrderCoords};
use crate::exact_arith::lattice::{fincke_pohst, lll_real};

/// Total number of cells allowed before the search is split more coarsely.
const MAX_CELLS: f64 = 20_000.0;

/// A generator of the integral ideal `j`, or `None` when it is not principal.
pub(crate) fn find_generator(
    k: &CubicField,
    unit_logs: &[Vec<f64>],
    j: &IdealHnf,
) -> Option<OrderCoords> {
    let n = j.norm_int();
    if n.is_one() {
        return Some(k.unit_coords(0));
    }
    let lat = ReducedLattice::new(k, j);
    let ln_n = ln_abs(&n);
    let r1 = k.r1();
    let places = r1 + usize::from(r1 == 1);
    let spans: Vec<f64> = unit_logs
        .iter()
        .map(|l| l.iter().map(|x| x.abs()).sum::<f64>() / 2.0)
        .collect();
    let mut m: Vec<usize> = spans.iter().map(|s| s.ceil().max(1.0) as usize).collect();
    while m.iter().map(|&x| x as f64).product::<f64>() > MAX_CELLS {
        for x in m.iter_mut() {
            *x = (*x).div_ceil(2);
        }
    }
    let reach: f64 = unit_logs
        .iter()
        .map(|l| l.iter().fold(0.0f64, |a, x| a.max(x.abs())))
        .sum::<f64>()
        + ln_n;
    let pm = PreciseMinkowski::new(k, (3.0 * reach / std::f64::consts::LN_2) as u32 + 128);
    let total: usize = m.iter().product();
    let bound = places as f64 * (1.0 + 1e-9);
    let mut basis: Vec<OrderCoords> = lat.basis.clone();
    for cell in 0..total {
        // boustrophedon order keeps consecutive cells adjacent
        let mut idx = cell;
        let mut ub = vec![0.0; places];
        let mut carry_odd = false;
        for (jj, l) in unit_logs.iter().enumerate() {
            let mut kj = idx % m[jj];
            idx /= m[jj];
            if carry_odd {
                kj = m[jj] - 1 - kj;
            }
            carry_odd = idx % 2 == 1;
            let t = (kj as f64 + 0.5) / m[jj] as f64;
            let half = 0.5 / m[jj] as f64;
            for (u, li) in ub.iter_mut().zip(l) {
                *u += t * li + half * li.abs();
            }
        }
        // √w_t = 2^{s_t}·f_t with the bound |σ_t(α)| ≤ 1/√w_t
        let mut e = [0.0f64; 3];
        for (i, ei) in e.iter_mut().enumerate().take(r1) {
            *ei = -(ln_n / 3.0 + ub[i] + 1e-7);
        }
        if r1 == 1 {
            let lb2 = 2.0 * ln_n / 3.0 + ub[1] + 2e-7;
            e[1] = -lb2 / 2.0 - 0.5 * std::f64::consts::LN_2;
            e[2] = e[1];
        }
        let s: [i32; 3] = e.map(|x| (x / std::f64::consts::LN_2).floor() as i32);
        let f: [f64; 3] =
            std::array::from_fn(|t| (e[t] - s[t] as f64 * std::f64::consts::LN_2).exp());
        let weighted = |b: &OrderCoords| -> Vec<f64> {
            let v = pm.scaled(b, &s);
            (0..3).map(|t| v[t] * f[t]).collect()
        };
        let mut vecs: Vec<Vec<f64>> = basis.iter().map(weighted).collect();
        let mut tr: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|j| i64::from(i == j)).collect())
            .collect();
        lll_real(&mut vecs, &mut tr);
        basis = (0..3)
            .map(|i| {
                std::array::from_fn(|c| {
                    (0..3).fold(BigInt::zero(), |acc, j| {
                        acc + BigInt::from(tr[i][j]) * &basis[j][c]
                    })
                })
            })
            .collect();
        // fresh embeddings so rounding in the reduction does not accumulate
        let vecs: Vec<Vec<f64>> = basis.iter().map(weighted).collect();
        let gram: Vec<Vec<f64>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| (0..3).map(|t| vecs[i][t] * vecs[j][t]).sum())
                    .collect()
            })
            .collect();
        let mut found: Option<OrderCoords> = None;
        fincke_pohst(&gram, bound, |y| {
            let x: OrderCoords = std::array::from_fn(|c| {
                (0..3).fold(BigInt::zero(), |acc, i| {
                    acc + BigInt::from(y[i]) * &basis[i][c]
                })
            });
            if k.norm_int(&x).abs() == n {
                found = Some(x);
                return false;
            }
            true
        });
        if found.is_some() {
            return found;
        }
    }
    None
}
