#![allow(dead_code)]

use std::sync::Arc;

use qgr_core::Config;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Config whose branch-order hook shuffles with a seeded RNG.
pub fn shuffled(seed: u64) -> Config {
    let mut cfg = Config::default();
    cfg.branch_order = Some(Arc::new(move |v: &mut [usize]| {
        let mut rng = StdRng::seed_from_u64(seed ^ v.len() as u64);
        v.shuffle(&mut rng);
    }));
    cfg
}

pub fn argv(line: &str) -> Vec<String> {
    std::iter::once("qgr".to_string()).chain(line.split_whitespace().map(String::from)).collect()
}

pub fn run(line: &str, cfg: &Config) -> qgr::RunResult {
    qgr::run(argv(line), cfg)
}
