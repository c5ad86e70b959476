use std::fs;

use locale_core::harness::{
    catalog, catalog_entry, load_instance, parse_instance_file, run_analysis, run_theorem_suite,
    AnalysisOptions, InstanceError, InstanceFile, SuiteSource, EXIT_INPUT, EXIT_OK,
};
use locale_core::{FrameError, PropertyId};

#[test]
fn parse_errors_carry_position() {
    let text = "{\n  \"kind\": \"space\",\n  \"points\": [\"a\",,]\n}";
    match parse_instance_file(text, "bad.json") {
        Err(InstanceError::Parse {
            origin,
            line,
            column,
            ..
        }) => {
            assert_eq!(origin, "bad.json");
            assert_eq!(line, 3);
            assert!(column > 0);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        parse_instance_file("{\"kind\": \"blob\"}", "x"),
        Err(InstanceError::Parse { .. })
    ));
}

#[test]
fn diamond_is_rejected() {
    let entry = catalog_entry("M3").unwrap();
    assert!(entry.expect_invalid);
    match entry.file.build("M3") {
        Err(InstanceError::Frame(name, FrameError::NotDistributive { .. })) => {
            assert_eq!(name, "M3")
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn files_round_trip_and_take_their_stem() {
    let dir = tempfile::tempdir().unwrap();
    let entry = catalog_entry("pc7").unwrap();
    let mut file = entry.file.clone();
    file.name = None;
    let path = dir.path().join("circle.json");
    fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let inst = load_instance(&path).unwrap();
    assert_eq!(inst.name, "circle");
    assert_eq!(inst.frame.len(), 7);
    assert!(inst.space.is_some());

    let frame = InstanceFile::frame("chain", 3, &[(0, 1), (1, 2)]);
    let text = serde_json::to_string(&frame).unwrap();
    assert_eq!(parse_instance_file(&text, "t").unwrap(), frame);
    assert!(matches!(
        load_instance(&dir.path().join("missing.json")),
        Err(InstanceError::Io { .. })
    ));
}

#[test]
fn catalog_verdicts() {
    let options = AnalysisOptions::default();
    let report = |name: &str| {
        let e = catalog_entry(name).unwrap();
        run_analysis(&e.file.build(e.name).unwrap(), &options)
    };
    let pc7 = report("PC7");
    assert!(pc7.properties.values().all(|p| !p.holds));
    assert!(pc7.consistent && pc7.replay_failures.is_empty());
    let sie = report("SIE");
    assert!(sie.properties.values().all(|p| p.holds));
    let pi5 = report("PI5");
    for (id, p) in &pi5.properties {
        assert_eq!(
            p.holds,
            !matches!(id, PropertyId::N | PropertyId::NPlus),
            "{id}"
        );
    }
    assert!(!pi5.preconditions.normal);
    for r in [&pc7, &sie, &pi5] {
        assert_eq!(r.lemmas.as_ref().unwrap().failed, 0);
        assert_eq!(r.exit_code(), EXIT_OK);
    }
}

#[test]
fn selected_properties_only() {
    let e = catalog_entry("PC7").unwrap();
    let options = AnalysisOptions {
        properties: Some(vec![PropertyId::III, PropertyId::X]),
        lemmas: false,
        ..AnalysisOptions::default()
    };
    let r = run_analysis(&e.file.build(e.name).unwrap(), &options);
    assert_eq!(
        r.properties.keys().copied().collect::<Vec<_>>(),
        vec![PropertyId::III, PropertyId::X]
    );
    assert!(r.lemmas.is_none());
}

#[test]
fn small_enumeration_cap_leaves_properties_undecided() {
    let e = catalog_entry("PC7").unwrap();
    let options = AnalysisOptions {
        max_enum: 4,
        lemmas: false,
        ..AnalysisOptions::default()
    };
    let r = run_analysis(&e.file.build(e.name).unwrap(), &options);
    assert!(!r.undecided.is_empty());
    assert!(r.undecided.contains_key(&PropertyId::VI));
    assert!(r.properties.contains_key(&PropertyId::III));
}

#[test]
fn catalog_suite_is_deterministic() {
    let options = AnalysisOptions::default();
    let a = run_theorem_suite(&SuiteSource::Catalog, &options).unwrap();
    let b = run_theorem_suite(&SuiteSource::Catalog, &options).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.instances, catalog().len() - 1);
    assert_eq!(a.rejected.len(), 1);
    assert!(a.rejected[0].expected);
    assert!(a.consistent);
    assert_eq!(a.exit_code(), EXIT_OK);
}

#[test]
fn directory_suites() {
    let dir = tempfile::tempdir().unwrap();
    let empty = run_theorem_suite(
        &SuiteSource::Dir(dir.path().to_path_buf()),
        &AnalysisOptions::default(),
    )
    .unwrap();
    assert_eq!(empty.instances, 0);
    assert!(empty.consistent);

    let sie = catalog_entry("SIE").unwrap().file;
    fs::write(
        dir.path().join("b.json"),
        serde_json::to_string(&sie).unwrap(),
    )
    .unwrap();
    fs::write(dir.path().join("a.json"), "not json").unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let s = run_theorem_suite(
        &SuiteSource::Dir(dir.path().to_path_buf()),
        &AnalysisOptions::default(),
    )
    .unwrap();
    assert_eq!(s.instances, 1);
    assert_eq!(s.rejected.len(), 1);
    assert!(!s.rejected[0].expected);
    assert_eq!(s.exit_code(), EXIT_INPUT);
}

#[test]
fn generated_sweep_counts() {
    let options = AnalysisOptions {
        lemmas: false,
        ..AnalysisOptions::default()
    };
    let s = run_theorem_suite(&SuiteSource::Generate(3), &options).unwrap();
    assert_eq!(s.instances, 29);
    assert!(s.consistent);
    assert_eq!(s.classical_disagreements, 0);
    assert_eq!(s.reports[0].instance, "T3_000");
}
