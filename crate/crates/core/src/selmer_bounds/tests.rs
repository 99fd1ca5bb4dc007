use super::*;
use crate::class_units::ClassUnits;
use crate::cubic_field::CubicField;
use crate::star_class::RealPlaces;

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(big(n), big(d))
}

fn curve(a2: i64, a1: i64, a0: i64) -> CurveModel {
    CurveModel::from_coeffs(a2, a1, a0).unwrap()
}

fn class_units(e: &CurveModel) -> ClassUnits {
    ClassUnits::compute(&CubicField::new(e.cubic()).unwrap()).unwrap()
}

/// Chord and tangent on `y^2 = F(x)`, for checking δ against the group law.
fn add(e: &CurveModel, p: &Point, q: &Point) -> Point {
    let (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) = (p, q) else {
        return if *p == Point::Infinity {
            q.clone()
        } else {
            p.clone()
        };
    };
    let [a2, a1, _] = e.coeffs().map(BigRat::from_integer);
    let lambda = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return Point::Infinity;
        }
        (BigRat::from_integer(big(3)) * x1 * x1 + BigRat::from_integer(big(2)) * &a2 * x1 + &a1)
            / (BigRat::from_integer(big(2)) * y1)
    } else {
        (y2 - y1) / (x2 - x1)
    };
    let x3 = &lambda * &lambda - &a2 - x1 - x2;
    let y3 = lambda * (x1 - &x3) - y1;
    Point::affine(x3, y3)
}

#[test]
fn intervals_of_fixtures() {
    for (c, lo) in [
        ([-1i64, -54, 169], 2usize),
        ([0, -7, 3], 1),
        ([0, -7, -3], 0),
    ] {
        let e = curve(c[0], c[1], c[2]);
        let cu = class_units(&e);
        let star = StarClass::new(&cu, RealPlaces::of_field(cu.field())).unwrap();
        let r = selmer_rank_bounds(&e, &star).unwrap();
        assert_eq!((r.lower, r.upper), (lo, lo + 1), "{e}");
        assert!(r.certification.class_group && r.certification.fundamental_units);
    }
}

#[test]
fn bounds_refuse_failed_hypotheses() {
    let e = curve(11, -60, 0);
    let cu = class_units(&curve(0, -7, 3));
    let star = StarClass::new(&cu, RealPlaces::of_field(cu.field())).unwrap();
    assert!(matches!(
        selmer_rank_bounds(&e, &star),
        Err(Error::HypothesesFailed(_))
    ));
}

#[test]
fn root_numbers() {
    // additive at 2 and 163
    let e = curve(-1, -54, 169);
    assert!(matches!(
        root_number(&e, None),
        Err(Error::RootNumberRequiresOverride(_))
    ));
    let r = root_number(&e, Some(-1)).unwrap();
    assert_eq!(
        r,
        RootNumber {
            value: -1,
            provenance: Provenance::UserSupplied
        }
    );
    assert!(root_number(&e, Some(0)).is_err());

    // y^2 + y = x^3 - x^2 (conductor 11, split) rewritten as y^2 = x^3 - 4x^2 + 16
    let e = curve(-4, 0, 16);
    assert_eq!(e.conductor().unwrap(), big(11));
    assert_eq!(
        root_number(&e, None).unwrap(),
        RootNumber {
            value: 1,
            provenance: Provenance::Computed
        }
    );

    // y^2 + y = x^3 - x (conductor 37, nonsplit) as y^2 = x^3 - 16x + 16
    let e = curve(0, -16, 16);
    assert_eq!(e.conductor().unwrap(), big(37));
    assert_eq!(root_number(&e, None).unwrap().value, -1);
}

#[test]
fn exact_ranks_from_parity() {
    let e = curve(-1, -54, 169);
    let cu = class_units(&e);
    let k = cu.field();
    let star = StarClass::new(&cu, RealPlaces::of_field(k)).unwrap();
    let base = bounds_from_star(&star);
    let r = selmer_rank_exact(base.clone(), root_number(&e, Some(-1)).unwrap()).unwrap();
    assert_eq!(r.exact, Some(3));

    let twisted = StarClass::new(&cu, RealPlaces::for_twist(k, &big(-3))).unwrap();
    let r = selmer_rank_exact(
        bounds_from_star(&twisted),
        root_number(&e, Some(1)).unwrap(),
    )
    .unwrap();
    assert_eq!(r.exact, Some(2));

    let e = curve(0, -7, 3);
    let cu = class_units(&e);
    let star = StarClass::new(&cu, RealPlaces::of_field(cu.field())).unwrap();
    let r = selmer_rank_exact(bounds_from_star(&star), root_number(&e, Some(-1)).unwrap()).unwrap();
    assert_eq!(r.exact, Some(1));
}

#[test]
fn point_search_finds_integral_points() {
    let e = curve(0, -7, 3);
    let pts = point_search(&e, 10);
    for x in [-2i64, -1, 3] {
        assert!(pts.contains(&Point::affine(rat(x, 1), rat(3, 1))), "{x}");
    }
    for p in &pts {
        let Point::Affine { x, y } = p else {
            unreachable!()
        };
        assert!(e.contains(x, y));
    }
}

#[test]
fn kummer_map_is_a_homomorphism() {
    let e = curve(0, -7, 3);
    let cu = class_units(&e);
    let mut star = StarClass::new(&cu, RealPlaces::of_field(cu.field())).unwrap();
    let zero = vec![0u64; star.even_classes_dim()];
    assert_eq!(
        kummer_class(&mut star, &Point::Infinity)
            .unwrap()
            .coordinates,
        Some(zero.clone())
    );

    let p = Point::affine(rat(-1, 1), rat(3, 1));
    let q = Point::affine(rat(3, 1), rat(3, 1));
    let dp = kummer_class(&mut star, &p).unwrap();
    let dq = kummer_class(&mut star, &q).unwrap();
    assert!(star.in_c_tilde(&dp) && star.in_c_tilde(&dq));
    let two_p = add(&e, &p, &p);
    assert_eq!(
        kummer_class(&mut star, &two_p).unwrap().coordinates,
        Some(zero)
    );
    let sum = add(&e, &p, &q);
    let ds = kummer_class(&mut star, &sum).unwrap().coordinates.unwrap();
    let want: Vec<u64> = dp
        .coordinates
        .unwrap()
        .iter()
        .zip(dq.coordinates.unwrap())
        .map(|(a, b)| a ^ b)
        .collect();
    assert_eq!(ds, want);
}

#[test]
fn certified_rank_stays_in_the_interval() {
    let e = curve(-1, -54, 169);
    let cu = class_units(&e);
    let mut star = StarClass::new(&cu, RealPlaces::of_field(cu.field())).unwrap();
    let pts = point_search(&e, 30);
    assert!(!pts.is_empty());
    let r = certified_rank(&mut star, &pts).unwrap();
    assert!(r >= 1 && r <= bounds_from_star(&star).upper);
}

#[test]
fn rank_zero_twist_has_no_small_points() {
    // twist of x^3 - 7x + 3 by -43, Selmer rank 0
    let e = curve(0, -7, 3).twist(&big(-43)).unwrap();
    let cu = class_units(&e);
    let mut star = StarClass::new(&cu, RealPlaces::of_field(cu.field())).unwrap();
    let pts = point_search(&e, 40);
    assert!(pts.is_empty());
    assert_eq!(certified_rank(&mut star, &pts).unwrap(), 0);
}

#[test]
fn points_pin_9032_to_the_top_of_its_interval() {
    // two independent Kummer classes in [1, 2]: rank 2, hence ε(E) = +1
    let e = curve(0, -7, 3);
    let cu = class_units(&e);
    let mut star = StarClass::new(&cu, RealPlaces::of_field(cu.field())).unwrap();
    let pts = point_search(&e, 10);
    assert_eq!(certified_rank(&mut star, &pts).unwrap(), 2);
    let exact =
        selmer_rank_exact(bounds_from_star(&star), root_number(&e, Some(1)).unwrap()).unwrap();
    assert_eq!(exact.exact, Some(2));
}
