//! Prime twists of y^2 = x^3 - 7x + 3: classification and predicted ranks.

use cubic_selmer::class_units::ClassUnits;
use cubic_selmer::cubic_field::CubicField;
use cubic_selmer::curve_local::CurveModel;
use cubic_selmer::selmer_bounds::{Provenance, RootNumber};
use cubic_selmer::twist_family::{classify_prime, twist_family_report};
use num_bigint::BigInt;

fn main() -> cubic_selmer::Result<()> {
    let e = CurveModel::from_coeffs(0, -7, 3)?;
    for p in [5, 7, 43, 113] {
        let c = classify_prime(&e, &BigInt::from(p))?;
        println!(
            "p = {p:>3}: {:?}, p* = {}, {}, relative root number {:+}",
            c.splitting,
            c.p_star,
            c.set.label(),
            c.relative_root_number
        );
    }

    let k = CubicField::new(e.cubic())?;
    let cu = ClassUnits::compute(&k)?;
    let root = RootNumber {
        value: 1,
        provenance: Provenance::UserSupplied,
    };
    let r = twist_family_report(&e, &cu, 10_000, Some(root), 500)?;
    println!(
        "inert density to 10^4: {:.4} (expected {:.4})",
        r.inert_density, r.expected_inert_density
    );
    println!("predicted rank counts {:?}", r.rank_counts);
    Ok(())
}
