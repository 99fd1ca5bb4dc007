use super::tate::tate;
use super::*;
use proptest::prelude::*;

fn curve(a2: i64, a1: i64, a0: i64) -> CurveModel {
    CurveModel::from_coeffs(a2, a1, a0).unwrap()
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: i64) -> BigRat {
    BigRat::from_integer(big(n))
}

#[test]
fn conductors_of_fixtures() {
    assert_eq!(curve(0, -7, 3).conductor().unwrap(), big(9032));
    assert_eq!(curve(-1, -54, 169).conductor().unwrap(), big(106276));
    assert_eq!(curve(0, 1, 3).conductor().unwrap(), big(1976));
}

#[test]
fn conductors_of_classical_curves() {
    assert_eq!(curve(0, -1, 0).conductor().unwrap(), big(32));
    assert_eq!(curve(0, 1, 0).conductor().unwrap(), big(64));
    assert_eq!(curve(0, 0, 1).conductor().unwrap(), big(36));
    assert_eq!(curve(0, 0, -2).conductor().unwrap(), big(1728));
}

#[test]
fn long_weierstrass_11a1() {
    let mut w = Weierstrass([big(0), big(-1), big(1), big(-10), big(-20)]);
    let l = tate(&mut w, &big(11));
    assert_eq!(l.kodaira, Kodaira::I(5));
    assert_eq!((l.f_p, l.c_p), (1, 5));
    assert_eq!(l.reduction, ReductionType::SplitMultiplicative);
    assert_eq!(tate(&mut w, &big(5)).kodaira, Kodaira::Good);
}

#[test]
fn counterexample_kodaira_types() {
    // y^2 = x(x + 3p)(x + 1 - p)
    let l = curve(11, -60, 0).local_reduction(&big(5));
    assert_eq!(l.kodaira, Kodaira::I(2));
    let l = curve(7, -18, 0).local_reduction(&big(3));
    assert_eq!(l.kodaira, Kodaira::I(4));
    // y^2 = x(x^2 - r p^2 - r^2 p^4) with r = 2, a non-residue mod 5
    let l = curve(0, -2550, 0).local_reduction(&big(5));
    assert_eq!(l.kodaira, Kodaira::IStar(0));
    assert_eq!(l.c_p, 2);
    // y^2 = x(x^2 - p - p^2)
    let l = curve(0, -30, 0).local_reduction(&big(5));
    assert_eq!(l.kodaira, Kodaira::III);
    assert_eq!(l.c_p, 2);
}

#[test]
fn good_prime_has_trivial_data() {
    let l = curve(0, -7, 3).local_reduction(&big(5));
    assert_eq!((l.kodaira, l.f_p, l.c_p), (Kodaira::Good, 0, 1));
}

#[test]
fn non_minimal_model_is_reduced() {
    // y^2 = x^3 - 7 * 5^4 x + 3 * 5^6 is the same curve scaled by 5
    let e = curve(0, -7, 3);
    let scaled = curve(0, -7 * 625, 3 * 15625);
    assert_eq!(scaled.local_reduction(&big(5)).kodaira, Kodaira::Good);
    assert_eq!(scaled.conductor().unwrap(), e.conductor().unwrap());
}

#[test]
fn dagger_on_fixtures() {
    let e = curve(0, -7, 3);
    for v in e.hypotheses_check().unwrap().verdicts {
        assert!(matches!(v.case, DaggerCase::I | DaggerCase::II), "{v:?}");
    }
    let v = curve(-1, -54, 169).dagger_check(&big(163)).unwrap();
    assert!(matches!(v.case, DaggerCase::I | DaggerCase::II));
    assert_eq!(v.witness.index_valuation, 0);
}

#[test]
fn dagger_fails_on_counterexamples() {
    let v = curve(11, -60, 0).dagger_check(&big(5)).unwrap();
    assert_eq!(v.case, DaggerCase::Fail);
    assert_eq!(v.witness.shape, LocalShape::ThreeLinear);
    assert!(v.witness.index_valuation > 0);
    assert_eq!(v.witness.local.c_p % 2, 0);

    for e in [curve(0, -2550, 0), curve(0, -30, 0)] {
        let v = e.dagger_check(&big(5)).unwrap();
        assert_eq!(v.case, DaggerCase::Fail);
        assert!(!v.witness.shape.is_field());
        assert!(v.witness.index_valuation > 0);
    }
}

#[test]
fn dagger_case_iii_reverifies() {
    // every case iii verdict among small cubics carries an odd c_p and
    // a failing (i) and (ii)
    let mut found = 0;
    for a1 in -20i64..20 {
        for a0 in -20i64..20 {
            let Ok(e) = CurveModel::from_coeffs(0, a1, a0) else {
                continue;
            };
            for p in e.bad_primes().unwrap() {
                let v = e.dagger_check(&p).unwrap();
                if v.case == DaggerCase::III {
                    assert!(v.witness.local.c_p % 2 == 1 && p != big(2));
                    assert!(!v.witness.shape.is_field() && v.witness.index_valuation > 0);
                    found += 1;
                }
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn hypotheses() {
    assert!(curve(-1, -54, 169).hypotheses_check().unwrap().passed());
    assert!(curve(0, -7, 3).hypotheses_check().unwrap().passed());
    let h = curve(11, -60, 0).hypotheses_check().unwrap();
    assert!(!h.passed());
    assert!(h.failure().unwrap().contains("rational root"));
}

#[test]
fn delta_parity_on_counterexamples() {
    // P = (p, 2p): components (p, 4p, 1)
    let e = curve(11, -60, 0);
    assert!(e.contains(&rat(5), &rat(10)));
    let d = e.local_delta_valuation_parity(&big(5), &rat(5)).unwrap();
    assert_eq!(d.pattern(), vec![(1, false), (1, true), (1, true)]);
    assert!(!d.all_even());

    // P = (-r p^2, r p^2): the quadratic component has odd valuation
    let e = curve(0, -2550, 0);
    assert!(e.contains(&rat(-50), &rat(50)));
    let d = e.local_delta_valuation_parity(&big(5), &rat(-50)).unwrap();
    assert_eq!(d.pattern(), vec![(1, false), (2, true)]);

    // P = (-p, p): odd on the rational coordinate
    let e = curve(0, -30, 0);
    assert!(e.contains(&rat(-5), &rat(5)));
    let d = e.local_delta_valuation_parity(&big(5), &rat(-5)).unwrap();
    let linear = d.factors.iter().find(|f| f.degree == 1).unwrap();
    assert!(linear.is_odd());
}

#[test]
fn delta_parity_even_away_from_roots() {
    // x = 1 is a 5-adic unit and F(1) = -3 is too
    let e = curve(0, -7, 3);
    let d = e.local_delta_valuation_parity(&big(5), &rat(1)).unwrap();
    assert!(d.all_even());
    // denominators contribute -deg * v_p(b), which is even for x = a/b^2
    let x = BigRat::new(big(3), big(25));
    assert!(e
        .local_delta_valuation_parity(&big(5), &x)
        .unwrap()
        .all_even());
}

#[test]
fn twist_scales_discriminant() {
    let e = curve(0, -7, 3);
    assert_eq!(e.twist(&big(1)).unwrap(), e);
    let t = e.twist(&big(-1)).unwrap();
    assert_eq!(t.coeffs(), [big(0), big(-7), big(-3)]);
    for d in [-43i64, -7, 5, 113] {
        let t = e.twist(&big(d)).unwrap();
        assert_eq!(t.disc(), &(e.disc() * big(d).pow(6)));
    }
}

#[test]
fn twist_by_large_prime_is_i0_star() {
    // exercises the gcd-based root finder used above 12 bits
    let t = curve(0, -7, 3).twist(&big(-7919)).unwrap();
    let l = t.local_reduction(&big(7919));
    assert_eq!((l.kodaira, l.f_p), (Kodaira::IStar(0), 2));
    assert!(t.hypotheses_check().is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ogg_and_component_bounds(a2 in -30i64..30, a1 in -30i64..30, a0 in -30i64..30) {
        let Ok(e) = CurveModel::from_coeffs(a2, a1, a0) else { return Ok(()) };
        for p in e.bad_primes().unwrap() {
            let l = e.local_reduction(&p);
            prop_assert_eq!(l.f_p + l.kodaira.components() - 1, l.min_disc_valuation, "{} at {}", e, p);
            prop_assert!(l.c_p >= 1 && l.c_p <= l.kodaira.components().max(4));
            prop_assert_eq!(l.f_p == 0, l.reduction == ReductionType::Good);
            prop_assert_eq!(
                l.f_p == 1,
                matches!(l.reduction, ReductionType::SplitMultiplicative | ReductionType::NonsplitMultiplicative)
            );
        }
    }

    #[test]
    fn square_twists_preserve_local_data(a2 in -15i64..15, a1 in -15i64..15, a0 in -15i64..15, u in 2i64..6) {
        let Ok(e) = CurveModel::from_coeffs(a2, a1, a0) else { return Ok(()) };
        let t = e.twist(&big(u * u)).unwrap();
        prop_assert_eq!(t.conductor().unwrap(), e.conductor().unwrap());
        for p in e.bad_primes().unwrap() {
            let (l, m) = (e.local_reduction(&p), t.local_reduction(&p));
            prop_assert_eq!((l.kodaira, l.c_p, l.reduction), (m.kodaira, m.c_p, m.reduction));
        }
    }
}
