//! Tate's algorithm and the local conditions on a few curves, including
//! one where the conditions fail at 5.

use cubic_selmer::curve_local::CurveModel;
use num_bigint::BigInt;

fn main() -> cubic_selmer::Result<()> {
    for (a2, a1, a0) in [(-1, -54, 169), (0, -7, 3), (0, -2550, 0)] {
        let e = CurveModel::from_coeffs(a2, a1, a0)?;
        println!("{e}: conductor {}", e.conductor()?);
        for l in e.bad_reduction()? {
            println!(
                "  p = {:>4}  {:<5} f = {}  c = {}  {:?}",
                l.p,
                l.kodaira.to_string(),
                l.f_p,
                l.c_p,
                l.reduction
            );
        }
        let five = BigInt::from(5);
        if e.disc() % &five == BigInt::from(0) {
            let v = e.dagger_check(&five)?;
            println!("  (†) at 5: {:?}", v.case);
        }
        match e.hypotheses_check()?.failure() {
            None => println!("  hypotheses hold"),
            Some(why) => println!("  {why}"),
        }
    }
    Ok(())
}
