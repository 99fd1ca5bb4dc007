//! Class group, narrow class group and fundamental units of two fields.

use cubic_selmer::class_units::ClassUnits;
use cubic_selmer::cubic_field::CubicField;
use cubic_selmer::exact_arith::IntPolynomial;

fn main() -> cubic_selmer::Result<()> {
    for (a2, a1, a0) in [(-1, -54, 169), (0, -7, 3)] {
        let f = IntPolynomial::monic_cubic(a2, a1, a0);
        let k = CubicField::new(&f)?;
        let cu = ClassUnits::compute(&k)?;
        let units = cu.unit_group();
        println!("{f}");
        println!(
            "  Cl   {:?}",
            cu.class_group().summary().elementary_divisors
        );
        println!(
            "  Cl+  {:?}",
            cu.narrow_class_group()?.summary().elementary_divisors
        );
        println!(
            "  regulator {:.6}, certified: class group {}, units {}",
            units.regulator(),
            cu.is_certified(),
            units.fundamental_certified()
        );
        for u in units.fundamental_units() {
            println!("  unit {u}");
        }
    }
    Ok(())
}
