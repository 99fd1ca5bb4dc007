use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Kronecker symbol `(a | n)`, extending Jacobi to even and negative `n`.
pub fn kronecker_symbol(a: &BigInt, n: &BigInt) -> i8 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut a = a.clone();
    let mut n = n.clone();
    let mut result: i8 = 1;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let v = n.trailing_zeros().unwrap_or(0);
    if v > 0 {
        if a.is_even() {
            return 0;
        }
        n >>= v as usize;
        if v % 2 == 1 {
            let r = a.mod_floor(&BigInt::from(8));
            if r == BigInt::from(3) || r == BigInt::from(5) {
                result = -result;
            }
        }
    }
    // Jacobi symbol (a | n) for odd positive n
    a = a.mod_floor(&n);
    while !a.is_zero() {
        let t = a.trailing_zeros().unwrap_or(0);
        a >>= t as usize;
        if t % 2 == 1 {
            let r = n.mod_floor(&BigInt::from(8));
            if r == BigInt::from(3) || r == BigInt::from(5) {
                result = -result;
            }
        }
        if a.mod_floor(&BigInt::from(4)) == BigInt::from(3)
            && n.mod_floor(&BigInt::from(4)) == BigInt::from(3)
        {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

pub fn kronecker_i64(a: i64, n: i64) -> i8 {
    kronecker_symbol(&BigInt::from(a), &BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn legendre_oracle(a: i64, p: i64) -> i8 {
        let r = a.rem_euclid(p);
        if r == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(kronecker_i64(-1, 5), 1);
        assert_eq!(kronecker_i64(-1, 7), -1);
        assert_eq!(kronecker_i64(163, 3), 1);
        assert_eq!(kronecker_i64(2, 43), -1);
        assert_eq!(kronecker_i64(5, 8), -1);
        assert_eq!(kronecker_i64(1, 8), 1);
        assert_eq!(kronecker_i64(3, 0), 0);
        assert_eq!(kronecker_i64(-1, -1), -1);
    }

    #[test]
    fn agrees_with_exhaustive_squares() {
        for p in [3i64, 5, 7, 11, 13, 43, 113, 163, 1129] {
            for a in -60..60 {
                assert_eq!(kronecker_i64(a, p), legendre_oracle(a, p), "a={a} p={p}");
            }
        }
    }

    proptest! {
        #[test]
        fn multiplicative_in_numerator(a in -10_000i64..10_000, b in -10_000i64..10_000, idx in 0usize..8) {
            let p = [3i64, 5, 7, 11, 101, 1129, 7919, 104729][idx];
            prop_assert_eq!(kronecker_i64(a, p) * kronecker_i64(b, p), kronecker_i64(a * b, p));
        }
    }
}
