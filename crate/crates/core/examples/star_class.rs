//! `Cl_*` and the square-class subgroups for y^2 = x^3 - 7x + 3 and its
//! twist by -1, where the distinguished place moves.

use cubic_selmer::class_units::ClassUnits;
use cubic_selmer::cubic_field::{CubicField, FieldElement};
use cubic_selmer::exact_arith::IntPolynomial;
use cubic_selmer::star_class::{RealPlaces, StarClass};
use num_bigint::BigInt;

fn main() -> cubic_selmer::Result<()> {
    let k = CubicField::new(&IntPolynomial::monic_cubic(0, -7, 3))?;
    let cu = ClassUnits::compute(&k)?;
    let alpha = FieldElement::from_i64s([-8, 0, 1]);
    for d in [1, -1] {
        let mut star = StarClass::new(&cu, RealPlaces::for_twist(&k, &BigInt::from(d)))?;
        let class = star.square_class(&alpha)?;
        println!("d = {d:+}");
        println!(
            "  Cl_*       {:?}",
            star.star_class_group().summary().elementary_divisors
        );
        println!(
            "  dim C_* {}, dim C~ {}",
            star.c_star().rank(),
            star.c_tilde().rank()
        );
        println!(
            "  θ^2 - 8: signature {:?}, in C~ {}, in C_* {}",
            class.signature,
            star.in_c_tilde(&class),
            star.in_c_star(&class)
        );
    }
    Ok(())
}
