//! Every registered verification suite passes at the smallest size under
//! its default budget, and the size-three suites pass under a light
//! sampling budget. Failures print the offending report, which carries a
//! witness line per failed check.

use qflag_core::verify::{run_suite, Budget, SUITE_NAMES};

#[test]
fn all_suites_pass_at_size_two() {
    for name in SUITE_NAMES {
        let report = run_suite(name, 2, 1, Budget::default_for(2)).unwrap();
        assert!(report.all_passed(), "{report}");
        assert!(report.passed > 0, "suite {name} ran no checks");
    }
}

#[test]
fn scalable_suites_pass_at_size_three_sampled() {
    for name in SUITE_NAMES {
        let budget = Budget::Sample(12);
        let report = match run_suite(name, 3, 5, budget) {
            Ok(r) => r,
            // The size-two-only suites are rejected up front, not run.
            Err(qflag_core::Error::SuiteTooLarge { n: 3, .. }) => continue,
            Err(e) => panic!("suite {name} failed to start: {e}"),
        };
        assert!(report.all_passed(), "{report}");
    }
}
