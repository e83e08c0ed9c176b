//! The acceptance gate: every suite criterion runs at the default seed,
//! printing one pass/fail line per criterion. A failing criterion fails
//! its test with the reported detail.

use sumloc::suite::{criteria, criterion_seed};

const SEED: u64 = 7;

fn run(num: u32) {
    let (n, name, f) = criteria()
        .into_iter()
        .find(|(k, _, _)| *k == num)
        .expect("criterion numbers are 1-10");
    match f(criterion_seed(SEED, n)) {
        Ok(detail) => println!("criterion {n} {name}: PASS - {detail}"),
        Err(detail) => {
            println!("criterion {n} {name}: FAIL - {detail}");
            panic!("criterion {n} {name} failed: {detail}");
        }
    }
}

#[test]
fn criterion_01_golden_example_statistics() {
    run(1);
}

#[test]
fn criterion_02_freiman_3k4_random_sets() {
    run(2);
}

#[test]
fn criterion_03_hybrid_projection_bounds() {
    run(3);
}

#[test]
fn criterion_04_maxconv_lower_bounds() {
    run(4);
}

#[test]
fn criterion_05_lift_freiman_isomorphism() {
    run(5);
}

#[test]
fn criterion_06_merge_step_containment() {
    run(6);
}

#[test]
fn criterion_07_snap_exact_relations() {
    run(7);
}

#[test]
fn criterion_08_cover_search_vs_exhaustive() {
    run(8);
}

#[test]
fn criterion_09_extremal_example_covers() {
    run(9);
}

#[test]
fn criterion_10_reference_set_identities() {
    run(10);
}
