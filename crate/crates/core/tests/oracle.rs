//! The brute-force oracle itself: known answers and a negative control.

mod common;

use cubic_selmer::class_units::ClassUnits;
use cubic_selmer::cubic_field::CubicField;

use common::{curve, oracle};

fn class_units(a2: i64, a1: i64, a0: i64) -> ClassUnits {
    let k = CubicField::new(curve(a2, a1, a0).cubic()).unwrap();
    ClassUnits::compute(&k).unwrap()
}

#[test]
fn galois_field_has_klein_four_class_group() {
    let cu = class_units(-1, -54, 169);
    let brute = oracle::class_group(&cu);
    assert_eq!(brute.invariants, vec![2, 2]);
    assert_eq!(oracle::library_invariants(&cu), vec![2, 2]);
}

#[test]
fn trivial_class_groups() {
    for (a2, a1, a0) in [(0, -7, 3), (0, 1, 3), (0, -1, 1)] {
        let brute = oracle::class_group(&class_units(a2, a1, a0));
        assert!(brute.invariants.is_empty(), "{a2} {a1} {a0}");
        assert!(brute.ideals >= 1);
    }
}

#[test]
fn pure_cubic_with_class_number_two() {
    let cu = class_units(0, 0, -11);
    assert_eq!(oracle::class_group(&cu).invariants, vec![2]);
    assert_eq!(oracle::library_invariants(&cu), vec![2]);
}

#[test]
fn units_pass_for_library_units() {
    for (a2, a1, a0) in [(0, -7, 3), (0, 1, 3), (-1, -54, 169)] {
        let u = oracle::units(&class_units(a2, a1, a0));
        assert!(
            u.off_lattice.is_empty(),
            "{a2} {a1} {a0}: {:?}",
            u.off_lattice
        );
        assert!(u.fundamental_found);
    }
}

#[test]
fn squared_units_are_caught() {
    let cu = class_units(0, -7, 3);
    let k = cu.field();
    let squares: Vec<_> = cu
        .unit_group()
        .fundamental_units()
        .iter()
        .map(|u| k.mul(u, u))
        .collect();
    let u = oracle::units_against(k, &squares);
    assert!(!u.off_lattice.is_empty());
    // ε_j itself sits at coordinate 1/2
    assert!(u
        .off_lattice
        .iter()
        .any(|t| t.iter().any(|c| (c.abs() - 0.5).abs() < 1e-6)));
}
