//! Exact integer, rational and polynomial arithmetic, factorization, real
//! root isolation, residue symbols and p-adic factorization of cubics.

pub mod decimal;
pub mod factor;
pub mod lattice;
pub mod modp;
pub mod padic;
mod poly;
mod residue;
mod roots;

pub use factor::{factor_integer, is_prime, is_squarefree, primes_up_to, valuation};
pub use padic::{
    cubic_factorization_mod_p, local_factorization_auto, LocalFactor, LocalFactorization,
    LocalShape, QuadraticKind,
};
pub use poly::{poly_disc, IntPolynomial};
pub use residue::{kronecker_i64, kronecker_symbol};
pub(crate) use roots::rat_to_f64;
pub use roots::{isolate_real_roots, RootInterval};

pub type BigRat = num_rational::BigRational;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// True when a rational number is the square of a rational.
pub fn is_rational_square(x: &BigRat) -> bool {
    exact_sqrt(x.numer()).is_some() && exact_sqrt(x.denom()).is_some()
}
