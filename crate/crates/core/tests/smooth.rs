use std::time::Instant;

use qgr_core::oracle::smooth_oracle;
use qgr_core::smooth::a3_smooth_irreducible;
use qgr_core::Config;

#[test]
fn smooth_and_irreducible_1_to_5() {
    let cfg = Config::default();
    let start = Instant::now();
    for n in 1..=5 {
        let r = a3_smooth_irreducible(n, &cfg).unwrap();
        assert!(r.smooth && r.irreducible && r.permutation_symmetric, "n = {n}");
        assert!(r.coordinate_case.squarefree);
    }
    assert!(start.elapsed().as_secs() < 120);
    for n in 1..=3 {
        assert!(smooth_oracle(n, &cfg).unwrap());
    }
}
