//! Curve input: a monic cubic in `x` such as `x^3 - x^2 - 54*x + 169`, or
//! the coefficient triple `[a2, a1, a0]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::curve_local::CurveModel;
use crate::error::{Error, Result};

pub fn parse_curve(spec: &str) -> Result<CurveModel> {
    let [a2, a1, a0] = parse_coeffs(spec)?;
    CurveModel::from_coeffs(a2, a1, a0)
}

/// `[a2, a1, a0]` of `x^3 + a2 x^2 + a1 x + a0`.
pub fn parse_coeffs(spec: &str) -> Result<[BigInt; 3]> {
    // unicode minus signs show up when curves are pasted from documents
    let s: String = spec
        .replace('−', "-")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    if s.is_empty() {
        return Err(Error::Parse("empty curve".into()));
    }
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected [a2, a1, a0], got {spec:?}")));
        }
        let c: Vec<BigInt> = parts.iter().map(|p| integer(p)).collect::<Result<_>>()?;
        return Ok([c[0].clone(), c[1].clone(), c[2].clone()]);
    }
    let mut coeffs = vec![BigInt::zero(); 4];
    for term in terms(&s)? {
        let (c, k) = monomial(&term)?;
        if k > 3 {
            return Err(Error::Parse(format!("degree {k} term in {spec:?}")));
        }
        coeffs[k] += c;
    }
    if !coeffs[3].is_one() {
        return Err(Error::NotMonicCubic {
            degree: if coeffs[3].is_zero() { 2 } else { 3 },
            leading: coeffs[3].clone(),
        });
    }
    Ok([coeffs[2].clone(), coeffs[1].clone(), coeffs[0].clone()])
}

/// Signed terms, splitting on `+` and `-` outside exponents.
fn terms(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if (c == '+' || c == '-') && !cur.is_empty() && !cur.ends_with('^') {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    out.push(cur);
    if out.iter().any(|t| t == "+" || t == "-" || t.is_empty()) {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    Ok(out)
}

/// `c`, `c*x`, `cx`, `x^k`, `-c*x^k` and so on.
fn monomial(t: &str) -> Result<(BigInt, usize)> {
    let Some(pos) = t.find(['x', 'X']) else {
        return Ok((integer(t)?, 0));
    };
    let (head, tail) = (&t[..pos], &t[pos + 1..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let c = match head {
        "" | "+" => BigInt::one(),
        "-" => -BigInt::one(),
        h => integer(h)?,
    };
    let k = match tail {
        "" => 1,
        _ => tail
            .strip_prefix('^')
            .and_then(|e| e.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad exponent in {t:?}")))?,
    };
    Ok((c, k))
}

fn integer(s: &str) -> Result<BigInt> {
    s.strip_prefix('+')
        .unwrap_or(s)
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}
