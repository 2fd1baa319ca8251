mod common;

use common::mutants::mutants;
use common::N;
use prooflab::infinitary::{check_local, Sampler};

#[test]
fn every_side_condition_is_caught() {
    for (code, good, bad) in mutants() {
        let r = check_local(&good, 3, &Sampler::Default, N);
        assert!(r.passed(), "{code}: unmutated term fails: {r}");
        let r = check_local(&bad, 3, &Sampler::Default, N);
        let v = r.violation.unwrap_or_else(|| panic!("{code}: mutant passes"));
        assert_eq!(v.code, code, "{v}");
    }
}
