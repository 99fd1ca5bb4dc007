use super::*;

fn curve(s: &str) -> CurveModel {
    parse_curve(s).unwrap()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("selmer-test-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn galois_fixture_analysis() {
    let e = curve("x^3 - x^2 - 54*x + 169");
    let r = analyze(&e, &AnalyzeOptions::default(), None).unwrap();
    assert_eq!(r.outcome(), Outcome::Pass);
    let sel = r.selmer.as_ref().unwrap();
    assert_eq!((sel.lower, sel.upper, sel.exact), (2, 3, None));
    assert!(r
        .notes
        .iter()
        .any(|n| n.contains("additive reduction at 2")));
    let r = analyze(
        &e,
        &AnalyzeOptions {
            root_number: Some(-1),
        },
        None,
    )
    .unwrap();
    assert_eq!(r.selmer.unwrap().exact, Some(3));
    assert_eq!(r.field.unwrap().field_disc, "26569");
}

#[test]
fn user_root_number_fixes_parity() {
    let e = curve("x^3 - 7*x + 3");
    let r = analyze(
        &e,
        &AnalyzeOptions {
            root_number: Some(-1),
        },
        None,
    )
    .unwrap();
    assert_eq!(r.selmer.unwrap().exact, Some(1));
}

#[test]
fn rational_torsion_exits_2() {
    let r = analyze(&curve("x^3 - x"), &AnalyzeOptions::default(), None).unwrap();
    assert_eq!(r.outcome().exit_code(), 2);
    assert!(r.field.is_none() && r.selmer.is_none());
    assert!(r.hypotheses_failure.unwrap().contains("rational 2-torsion"));
}

#[test]
fn failed_dagger_still_reports_groups() {
    // irreducible, but (†) fails at 7
    let r = analyze(&curve("x^3 - 19*x - 19"), &AnalyzeOptions::default(), None).unwrap();
    assert_eq!(r.outcome(), Outcome::HypothesesFail);
    assert!(r.hypotheses_failure.unwrap().contains("p = 7"));
    assert!(r.groups.is_some() && r.selmer.is_none());
}

#[test]
fn report_round_trips_through_json() {
    let r = analyze(
        &curve("[0, -7, 3]"),
        &AnalyzeOptions {
            root_number: Some(1),
        },
        None,
    )
    .unwrap();
    let json = serde_json::to_string_pretty(&r).unwrap();
    let back: AnalysisReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
}

#[test]
fn cache_on_and_off_agree_byte_for_byte() {
    let dir = scratch("cache");
    let path = dir.join("c.json");
    let e = curve("x^3 - 7*x + 3");
    let opts = AnalyzeOptions {
        root_number: Some(1),
    };
    let plain = serde_json::to_string(&analyze(&e, &opts, None).unwrap()).unwrap();
    for round in 0..2 {
        let mut cache = Cache::open(&path).unwrap();
        let cached = serde_json::to_string(&analyze(&e, &opts, Some(&mut cache)).unwrap()).unwrap();
        assert_eq!(cached, plain);
        let expected_hit = round == 1;
        assert_eq!(
            matches!(cache.events().last(), Some(CacheEvent::Hit(_))),
            expected_hit
        );
        cache.save().unwrap();
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn garbage_cache_file_is_discarded() {
    let dir = scratch("garbage");
    let path = dir.join("c.json");
    std::fs::write(&path, "not json").unwrap();
    let mut cache = Cache::open(&path).unwrap();
    assert!(matches!(cache.events(), [CacheEvent::Discarded(_)]));
    assert!(cache.is_empty());
    let e = curve("x^3 - 7*x + 3");
    analyze(&e, &AnalyzeOptions::default(), Some(&mut cache)).unwrap();
    cache.save().unwrap();
    assert_eq!(Cache::open(&path).unwrap().len(), 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn tampered_entry_with_fixed_checksum_fails_invariants() {
    // an edit that also recomputes the checksum is caught by the group
    // order divisibility check
    let dir = scratch("tamper");
    let path = dir.join("c.json");
    let e = curve("x^3 - 7*x + 3");
    let mut cache = Cache::open(&path).unwrap();
    let mut data = compute_class_data(&e).unwrap();
    data.groups.star_class_group.order = "3".into();
    cache.insert(&e, data);
    assert!(cache.lookup(&e).is_none());
    assert!(
        matches!(cache.events().last(), Some(CacheEvent::Rejected { reason, .. }) if reason.contains("group orders"))
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn selftest_passes_and_catches_perturbations() {
    let dir = scratch("selftest");
    let fixtures = Fixture::standard();
    let ok = run_selftest(&fixtures, &dir);
    assert!(ok.passed(), "{:?}", ok.checks);

    let mut bad = fixtures[1].clone();
    bad.twists[0].1 = 2;
    let out = run_selftest(&[bad], &dir);
    assert!(!out.passed());
    assert!(!out.checks[0].passed && out.checks[0].detail.contains("twist by 5"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn certify_galois_fixture() {
    let r = certify(&curve("x^3 - x^2 - 54*x + 169"), 30).unwrap();
    assert!(!r.points.is_empty());
    assert!(r.points.iter().all(|p| p.in_c_tilde));
    assert!(r.certified_rank >= 1 && r.certified_rank <= r.upper);
}

#[test]
fn certify_rank_zero_twist() {
    // the twist of x^3 - 7x + 3 by -43
    let t = crate::twist_family::twist_model(&curve("x^3 - 7*x + 3"), &(-43).into()).unwrap();
    let r = certify(&t, 20).unwrap();
    assert!(r.points.is_empty());
    assert_eq!(r.certified_rank, 0);
}

#[test]
fn twists_command_needs_a_real_limit() {
    let e = curve("x^3 - 7*x + 3");
    assert!(matches!(twists(&e, 50, None, 0), Err(Error::Usage(_))));
    let r = twists(&e, 1000, Some(1), 0).unwrap();
    assert_eq!(r.family.root_number.unwrap().value, 1);
    assert!(render_twists(&r).contains("C+□"));
    assert!(matches!(
        twists(&curve("x^3 - x"), 1000, None, 0),
        Err(Error::HypothesesFailed(_))
    ));
}

#[test]
fn root_number_flags() {
    assert_eq!(parse_root_number("-1").unwrap(), -1);
    assert_eq!(parse_root_number("−1").unwrap(), -1);
    assert_eq!(parse_root_number("+1").unwrap(), 1);
    assert!(parse_root_number("0").is_err());
}

#[test]
fn text_rendering_mentions_the_interval() {
    let r = analyze(
        &curve("x^3 - 7*x + 3"),
        &AnalyzeOptions {
            root_number: Some(1),
        },
        None,
    )
    .unwrap();
    let text = render_analysis(&r);
    assert!(text.contains("2-Selmer rank in [1, 2]"));
    assert!(text.contains("exact rank 2"));
    assert!(text.contains("Cl+        Z/2"));
}
