//! The Selmer interval for y^2 = x^3 - 7x + 3, pinned down by points.

use cubic_selmer::class_units::ClassUnits;
use cubic_selmer::cubic_field::CubicField;
use cubic_selmer::curve_local::CurveModel;
use cubic_selmer::selmer_bounds::{
    certified_rank, point_search, root_number, selmer_rank_bounds, selmer_rank_exact,
};
use cubic_selmer::star_class::{RealPlaces, StarClass};

fn main() -> cubic_selmer::Result<()> {
    let e = CurveModel::from_coeffs(0, -7, 3)?;
    let k = CubicField::new(e.cubic())?;
    let cu = ClassUnits::compute(&k)?;
    let mut star = StarClass::new(&cu, RealPlaces::of_field(&k))?;

    let bounds = selmer_rank_bounds(&e, &star)?;
    println!("{e}: Selmer rank in [{}, {}]", bounds.lower, bounds.upper);

    let points = point_search(&e, 10);
    let rank = certified_rank(&mut star, &points)?;
    println!("{} points of height <= 10 span rank {rank}", points.len());

    // additive at 2, so the root number is supplied; rank 2 from the points
    // means it is +1
    let root = root_number(&e, Some(1))?;
    let exact = selmer_rank_exact(bounds, root)?;
    println!(
        "with root number {:+}: exact rank {:?}",
        root.value, exact.exact
    );
    Ok(())
}
