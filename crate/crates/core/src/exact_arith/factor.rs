//! Integer factorization: trial division, deterministic Miller–Rabin and
//! Brent's variant of Pollard rho, behind a hard size guard.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Inputs with more decimal digits than this are refused.
pub const FACTOR_DIGIT_GUARD: usize = 64;

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
// extra bases used only above the proven range
const MR_EXTRA: [u64; 8] = [43, 47, 53, 59, 61, 67, 71, 73];

/// Primes below `bound` by a plain sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic primality for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first 13 prime bases, a proof below 3.3·10^24;
/// larger inputs get eight more bases and are strong probable primes.
pub fn is_prime(n: &BigInt) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_negative() {
        return false;
    }
    for &p in &MR_BASES {
        if (n % BigInt::from(p)).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s as usize;
    let proven = n.bits() < 81;
    let extra: &[u64] = if proven { &[] } else { &MR_EXTRA };
    'outer: for &a in MR_BASES.iter().chain(extra) {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(128.min(r - k)) {
                    y = f(&y);
                    q = q * (&x - &y).abs() % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(s) = perfect_power_root(&n) {
        let e = exponent_of(&n, &s);
        for _ in 0..e {
            split_into(s.clone(), out);
        }
        return;
    }
    let d = match n.to_u64() {
        Some(v) => BigInt::from(rho_u64(v)),
        None => rho_big(&n),
    };
    let other = &n / &d;
    split_into(d, out);
    split_into(other, out);
}

fn perfect_power_root(n: &BigInt) -> Option<BigInt> {
    for k in 2..=(n.bits() as u32) {
        let r = n.nth_root(k);
        if r > BigInt::one() && r.pow(k) == *n {
            return Some(r);
        }
        if r <= BigInt::one() {
            break;
        }
    }
    None
}

fn exponent_of(n: &BigInt, base: &BigInt) -> u32 {
    let mut e = 0;
    let mut m = n.clone();
    while (&m % base).is_zero() {
        m /= base;
        e += 1;
    }
    e
}

/// Complete factorization of `|n|` as ascending `(prime, exponent)` pairs.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::FactorZero);
    }
    let mut m = n.abs();
    let digits = m.to_string().len();
    if digits > FACTOR_DIGIT_GUARD {
        return Err(Error::FactorizationTooLarge {
            digits,
            limit: FACTOR_DIGIT_GUARD,
        });
    }
    let mut primes: Vec<BigInt> = Vec::new();
    for p in primes_up_to(10_000) {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            m /= &bp;
            primes.push(bp.clone());
        }
    }
    if !m.is_one() {
        split_into(m, &mut primes);
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// `v_p(n)` for `n != 0`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    exponent_of(n, p)
}

/// Squarefree test through the factorization.
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    Ok(factor_integer(n)?.iter().all(|(_, e)| *e == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fac(n: i64) -> Vec<(i64, u32)> {
        factor_integer(&BigInt::from(n))
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_i64().unwrap(), e))
            .collect()
    }

    #[test]
    fn fixture_factorizations() {
        assert_eq!(fac(26569), vec![(163, 2)]);
        assert_eq!(fac(1), vec![]);
        assert_eq!(fac(9032), vec![(2, 3), (1129, 1)]);
        assert_eq!(fac(-247), vec![(13, 1), (19, 1)]);
    }

    #[test]
    fn guard_is_enforced() {
        let big: BigInt = "1".repeat(65).parse().unwrap();
        assert!(matches!(
            factor_integer(&big),
            Err(Error::FactorizationTooLarge { .. })
        ));
        assert!(factor_integer(&BigInt::zero()).is_err());
    }

    #[test]
    fn large_semiprimes() {
        let p: BigInt = "1000000007".parse().unwrap();
        let q: BigInt = "998244353".parse().unwrap();
        let r: BigInt = "1000000000039".parse().unwrap();
        let n = &p * &q * &r * &r;
        let f = factor_integer(&n).unwrap();
        assert_eq!(f, vec![(q, 1), (p, 1), (r, 2)]);
    }

    #[test]
    fn primality_known_values() {
        assert!(is_prime(&BigInt::from(1129)));
        assert!(!is_prime(&BigInt::from(3215031751u64)));
        assert!(is_prime(
            &"170141183460469231731687303715884105727".parse().unwrap()
        ));
        assert!(!is_prime(
            &"3317044064679887385961981".parse::<BigInt>().unwrap()
        ));
    }

    proptest! {
        #[test]
        fn factorization_multiplies_back(n in 1i64..2_000_000_000_000i64) {
            let f = factor_integer(&BigInt::from(n)).unwrap();
            let mut prod = BigInt::one();
            for (p, e) in &f {
                prop_assert!(is_prime(p));
                prod *= p.pow(*e);
            }
            prop_assert_eq!(prod, BigInt::from(n));
        }
    }
}
