mod common;

use common::{run, shuffled};
use proptest::prelude::*;
use qgr_core::Config;

const LINES: [&str; 6] = [
    "verify-morphism --n 2 --l 2",
    "verify-morphism --n 4 --l 4",
    "verify-splitting --n 2",
    "verify-splitting --n 3",
    "factor --m 24",
    "classify-approx --n 3 --p2n 1",
];

fn canonical(line: &str, cfg: &Config) -> String {
    run(line, cfg).cert.unwrap().canonical_json().unwrap()
}

#[test]
fn repeated_runs_are_identical() {
    for line in LINES {
        assert_eq!(canonical(line, &Config::default()), canonical(line, &Config::default()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn shuffled_branch_order_gives_same_bytes(seed in any::<u64>()) {
        for line in LINES {
            prop_assert_eq!(canonical(line, &Config::default()), canonical(line, &shuffled(seed)));
        }
    }
}
