//! Maximal order, signature and prime decomposition in Q[T]/(T^3 - 7T + 3).

use cubic_selmer::cubic_field::CubicField;
use cubic_selmer::exact_arith::IntPolynomial;
use num_bigint::BigInt;

fn main() -> cubic_selmer::Result<()> {
    let k = CubicField::new(&IntPolynomial::monic_cubic(0, -7, 3))?;
    println!(
        "poly disc {}, field disc {}, index {}",
        k.poly_disc(),
        k.field_disc(),
        k.index()
    );
    println!("signature {:?}, unit rank {}", k.signature(), k.unit_rank());
    println!("real roots ~ {:?}", k.real_root_approx());

    for p in [2, 3, 5, 7, 1129] {
        let primes = k.factor_prime(&BigInt::from(p))?;
        let ef: Vec<(u32, u32)> = primes.iter().map(|q| (q.e(), q.f())).collect();
        println!("  {p} = {} primes, (e, f) = {ef:?}", primes.len());
    }
    Ok(())
}
