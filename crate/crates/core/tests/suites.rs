use ordercone::selftest::{run, run_suite, suite_names, Options};
use ordercone::Execution;

#[test]
fn random_suites_pass() {
    for (id, name) in suite_names().into_iter().skip(1) {
        let out = run_suite(id, &Options::default()).unwrap();
        assert!(out.passed(), "{name}: {:#?}", out.failures);
    }
}

#[test]
fn four_ray_suite_fails_only_on_the_band_count() {
    let out = run_suite(1, &Options::default()).unwrap();
    assert_eq!(out.failed, 1, "{:#?}", out.failures);
    assert!(out.failures[0].starts_with("band count"));
}

#[test]
fn corrupted_facets_are_reported() {
    let opts = Options {
        corrupt_facets: true,
        filter: Some("four-ray".into()),
        ..Options::default()
    };
    let out = run(&opts);
    assert_eq!(out.len(), 1);
    assert!(out[0].failures.iter().any(|f| f.contains("facet")), "{:#?}", out[0].failures);
}

#[test]
fn execution_modes_agree() {
    for exec in [Execution::Parallel, Execution::Sequential] {
        let opts = Options {
            filter: Some("8".into()),
            exec,
            ..Options::default()
        };
        let out = run(&opts);
        assert_eq!(out.len(), 1);
        assert!(out[0].passed());
    }
}
