//! Discriminants, isolated real roots, factorization and a Smith form.

use cubic_selmer::exact_arith::lattice::smith_normal_form;
use cubic_selmer::exact_arith::{
    factor_integer, isolate_real_roots, kronecker_symbol, poly_disc, BigRat, IntPolynomial,
};
use num_bigint::BigInt;

fn main() -> cubic_selmer::Result<()> {
    let f = IntPolynomial::monic_cubic(-1, -54, 169);
    let d = poly_disc(&f)?;
    println!("disc({f}) = {d} = {:?}", factor_integer(&d)?);

    let width = BigRat::new(1.into(), 1_000_000.into());
    for r in isolate_real_roots(&f, &width) {
        println!("  root in [{}, {}]", r.lo, r.hi);
    }

    for p in [3, 5, 7, 11, 13] {
        let chi = kronecker_symbol(&d, &BigInt::from(p));
        println!("  ({d} / {p}) = {chi}");
    }

    let rel = |v: [i64; 2]| v.map(BigInt::from).to_vec();
    let snf = smith_normal_form(&[rel([2, 4]), rel([6, 8])], 2);
    println!("Z^2 / <(2,4), (6,8)> has invariants {:?}", snf.diag);
    Ok(())
}
