//! Real and complex embeddings: exact signs at the real places and f64
//! logarithmic embeddings for unit computations.

use num_traits::Signed;

use super::{CubicField, FieldElement};
use crate::error::{Error, Result};
use crate::exact_arith::{rat_to_f64, BigRat};

fn horner(c: &[f64; 3], x: f64) -> f64 {
    (c[2] * x + c[1]) * x + c[0]
}

impl CubicField {
    fn f64_coords(a: &FieldElement) -> [f64; 3] {
        a.coords().clone().map(|c| rat_to_f64(&c))
    }

    /// Signs of `a` at the real places, ordered by ascending real root.
    /// Uses f64 when the value is clearly away from zero and exact interval
    /// refinement otherwise.
    pub fn signature_of(&self, a: &FieldElement) -> Result<Vec<i8>> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let c = Self::f64_coords(a);
        let mag = c.map(f64::abs);
        let mut out = Vec::with_capacity(self.r1());
        for (i, &x) in self.real_root_approx().iter().enumerate() {
            let v = horner(&c, x);
            let bound = horner(&mag, x.abs().max(1.0)) * 1e-9;
            if v.is_finite() && v.abs() > bound {
                out.push(if v > 0.0 { 1 } else { -1 });
            } else {
                let mut r = self.real_roots()[i].clone();
                out.push(r.sign_of(a.coords()));
            }
        }
        if out.contains(&0) {
            return Err(Error::Inconsistent(format!(
                "nonzero element {a} vanishes at a real place"
            )));
        }
        Ok(out)
    }

    /// Sign vector packed into bits: bit i set when the sign at place i is -1.
    pub fn sign_bits(&self, a: &FieldElement) -> Result<u8> {
        Ok(self
            .signature_of(a)?
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &s)| acc | (u8::from(s < 0) << i)))
    }

    /// `σ_i(a)` at each real place.
    pub fn real_embeddings(&self, a: &FieldElement) -> Vec<f64> {
        let c = Self::f64_coords(a);
        self.real_root_approx()
            .iter()
            .map(|&x| horner(&c, x))
            .collect()
    }

    /// `|σ(a)|` at the complex place, if any.
    pub fn complex_abs(&self, a: &FieldElement) -> Option<f64> {
        let (re, im) = self.complex_root_approx()?;
        let c = Self::f64_coords(a);
        // a(z) for z = re + i·im
        let (z2r, z2i) = (re * re - im * im, 2.0 * re * im);
        let vr = c[0] + c[1] * re + c[2] * z2r;
        let vi = c[1] * im + c[2] * z2i;
        Some(vr.hypot(vi))
    }

    /// `(log|σ_1(a)|, …)` with the complex place counted twice, so the
    /// entries sum to `log|N(a)|`. Length `r1 + r2`.
    pub fn log_embedding(&self, a: &FieldElement) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .real_embeddings(a)
            .iter()
            .map(|v| v.abs().ln())
            .collect();
        if let Some(m) = self.complex_abs(a) {
            out.push(2.0 * m.ln());
        }
        out
    }

    /// Minkowski embedding of an element given over the integral basis:
    /// real places, then `√2·(re, im)` at the complex place.
    pub fn minkowski_coords(&self, x: &[BigRat; 3]) -> [f64; 3] {
        let a = self.from_basis_coords(x);
        let mut out = [0.0; 3];
        let real = self.real_embeddings(&a);
        out[..real.len()].copy_from_slice(&real);
        if let Some((re, im)) = self.complex_root_approx() {
            let c = Self::f64_coords(&a);
            let (z2r, z2i) = (re * re - im * im, 2.0 * re * im);
            let s = std::f64::consts::SQRT_2;
            out[1] = s * (c[0] + c[1] * re + c[2] * z2r);
            out[2] = s * (c[1] * im + c[2] * z2i);
        }
        out
    }
}
