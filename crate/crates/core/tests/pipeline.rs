//! Cross-module soundness: the quotient lower bound against true sumsets,
//! nested cover-chain sizes, branch-and-bound covers against the exhaustive
//! oracle, and reference-set identities on compressed stacks.

use proptest::prelude::*;
use sumloc_core::covering::{
    cover_chain, gap_cover, gap_cover_exhaustive, t_references, CoverOutcome, CoverResult,
};
use sumloc_core::fibered::FiberedSet;
use sumloc_core::hull::{coco_upper, doubling_lower, verify_hom};
use sumloc_core::interval::IntervalUnion;
use sumloc_core::lattice::LatticeSet;
use sumloc_core::rat::{rat, rint, Rat};
use sumloc_core::set_value::SetValue;

fn found(outcome: CoverOutcome) -> CoverResult {
    match outcome {
        CoverOutcome::Found(r) => r,
        CoverOutcome::Infeasible => panic!("cover search came back infeasible"),
    }
}

#[test]
fn small_doubling_family_keeps_hull_volume_at_the_measure() {
    // Unit intervals on a coarse progression: doubling stays below 4, no
    // merge fires, and the hull bound degenerates to the plain measure.
    for t in 2..=6i64 {
        let parts: Vec<(Rat, Rat)> =
            (0..t).map(|i| (rint(3 * i), rint(3 * i + 1))).collect();
        let a = SetValue::Interval(IntervalUnion::new(parts).unwrap());
        let sum = a.sumset(&a).unwrap();
        assert!(sum.size() <= rint(4) * a.size());

        let rep = coco_upper(&a, 2, 1 << 20).unwrap();
        assert_eq!(rep.merges, 0);
        assert_eq!(rep.bound, a.size());
        assert_eq!(rep.quotient.total(), a.size());
    }
}

fn measured_union() -> impl Strategy<Value = IntervalUnion> {
    proptest::collection::vec((-15i64..=15, 1i64..=6, 1i64..=3), 1..=4).prop_map(|parts| {
        let ivs = parts.into_iter().map(|(lo, w, den)| (rat(lo, den), rat(lo + w, den))).collect();
        IntervalUnion::new(ivs).unwrap()
    })
}

fn small_lattice_vals() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..=15, 2..=6)
}

proptest! {
    #[test]
    fn quotient_lower_bound_never_exceeds_the_true_sumset(u in measured_union()) {
        // k pins the convolution to the ambient dimension; for a 1-D set
        // only k = 1 is a sound lower bound.
        let a = SetValue::Interval(u.clone());
        let dl = doubling_lower(&a, 2, 1, 1 << 20).unwrap();
        prop_assert!(dl.holds);

        let rep = coco_upper(&a, 2, 1 << 20).unwrap();
        prop_assert!(verify_hom(&rep.cover, 2, &a, 1 << 20).unwrap().holds);
        prop_assert_eq!(rep.cover.parts.len() + rep.merges as usize, u.components().len());
        prop_assert!(rep.bound >= u.measure());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cover_chain_sizes_are_nested(vals in small_lattice_vals(), d in 1u32..=2, t in 1u32..=2) {
        let a = LatticeSet::from_values(&vals);
        let (co, sco, gap) = cover_chain(&a, d, t, 1 << 24).unwrap();
        prop_assert!(a.card() as u64 <= co);
        prop_assert!(co <= sco);
        prop_assert!(sco <= gap);
    }

    #[test]
    fn cover_search_matches_the_exhaustive_oracle(
        vals in proptest::collection::vec(0i64..=12, 2..=5),
        d in 1u32..=2,
        t in 1u32..=2
    ) {
        let a = LatticeSet::from_values(&vals);
        let bb = found(gap_cover(&a, d, t, 1 << 24).unwrap());
        let ex = found(gap_cover_exhaustive(&a, d, t, 1 << 24).unwrap());
        prop_assert!(bb.optimal && ex.optimal);
        prop_assert_eq!(bb.size, ex.size);
    }
}

proptest! {
    #[test]
    fn reference_set_identities_hold_on_compressed_stacks(
        lens in proptest::collection::vec((1i64..=4, 1i64..=2), 2..=5)
    ) {
        let lengths: Vec<Rat> = lens.iter().map(|&(p, q)| rat(p, q)).collect();
        let b = FiberedSet::from_lengths(&lengths).unwrap();
        let refs = t_references(&b).unwrap();
        prop_assert_eq!(refs.t1, refs.t1_identity);
        prop_assert_eq!(refs.t2, refs.t2_identity);
        prop_assert!(refs.t1_contained);
        prop_assert!(refs.t2_contained);
    }
}
