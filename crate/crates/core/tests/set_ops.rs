//! End-to-end checks of the exact set primitives: hand-enumerated sumsets,
//! dilation and division, doubling ratios, thickness, discrete hulls, and
//! separation witnesses, plus the algebraic laws on random inputs.

use proptest::prelude::*;
use sumloc_core::error::Error;
use sumloc_core::interval::IntervalUnion;
use sumloc_core::lattice::LatticeSet;
use sumloc_core::polycube::Polycube;
use sumloc_core::rat::{rat, rint};
use sumloc_core::set_value::{is_separated, SetValue};
use sumloc_core::symmetric::SymSet;

fn lat(vals: &[i64]) -> SetValue {
    SetValue::Lattice(LatticeSet::from_values(vals))
}

fn iv(parts: &[(i64, i64)]) -> IntervalUnion {
    IntervalUnion::new(parts.iter().map(|&(lo, hi)| (rint(lo), rint(hi))).collect()).unwrap()
}

#[test]
fn sumset_enumerates_all_pairwise_sums() {
    let a = LatticeSet::from_values(&[0, 1, 3]);
    let s = a.sumset(&a).unwrap();
    assert_eq!(s.values().unwrap(), vec![0, 1, 2, 3, 4, 6]);
    assert_eq!(s.card(), 6);
}

#[test]
fn sumset_of_intervals_merges_exactly() {
    let u = iv(&[(0, 1)]);
    assert_eq!(u.sumset(&u).measure(), rint(2));
    assert_eq!(u.sumset(&u).components(), &[(rint(0), rint(2))]);

    // Two far-apart boxes of measures 16/25 and 9/25: the three sumset
    // components 32/25, 1, 18/25 stay disjoint and total exactly 3.
    let two = IntervalUnion::new(vec![
        (rint(0), rat(16, 25)),
        (rint(3), rint(3) + rat(9, 25)),
    ])
    .unwrap();
    let s = two.sumset(&two);
    assert_eq!(s.components().len(), 3);
    assert_eq!(s.measure(), rint(3));
}

#[test]
fn dilate_and_divide_examples() {
    let a = LatticeSet::from_values(&[0, 2]);
    assert_eq!(a.dilate(3).values().unwrap(), vec![0, 6]);

    let b = LatticeSet::from_values(&[0, 2, 3, 4]);
    assert_eq!(b.divide(2).values().unwrap(), vec![0, 1, 2]);

    let u = SetValue::Interval(iv(&[(-4, 4)]));
    let d = u.divide(4).unwrap();
    match d {
        SetValue::Interval(w) => assert_eq!(w.components(), &[(rint(-1), rint(1))]),
        _ => panic!("divide changed the representation kind"),
    }
}

#[test]
fn iterated_sumset_examples() {
    let a = lat(&[0, 1]);
    match a.iterated_sumset(3).unwrap() {
        SetValue::Lattice(s) => assert_eq!(s.values().unwrap(), vec![0, 1, 2, 3]),
        _ => panic!("kind changed"),
    }

    let b = lat(&[0, 1, 3]);
    assert_eq!(b.iterated_sumset(2).unwrap(), b.sumset(&b).unwrap());

    let u = SetValue::Interval(iv(&[(0, 1)]));
    assert_eq!(u.iterated_sumset(3).unwrap().size(), rint(3));
}

#[test]
fn doubling_ratio_examples() {
    let ap = lat(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
    assert_eq!(ap.doubling(None).unwrap(), rat(19, 10));

    let u = SetValue::Interval(iv(&[(0, 1)]));
    assert_eq!(u.doubling(None).unwrap(), rint(2));

    // Two unit/2 boxes on a progression of two terms: the halved sumset
    // carries measure 2 - 1/t at t = 2.
    let a = IntervalUnion::new(vec![
        (rint(0), rat(1, 2)),
        (rint(2), rat(5, 2)),
    ])
    .unwrap();
    let half = SetValue::Interval(a.sumset(&a)).divide(2).unwrap();
    assert_eq!(half.size() / a.measure(), rat(3, 2));
}

#[test]
fn thickness_counts_covering_hyperplanes() {
    let square = LatticeSet::new(2, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap();
    assert_eq!(square.thickness(100_000).unwrap(), 2);

    let collinear = LatticeSet::new(2, vec![vec![0, 0], vec![1, 2], vec![2, 4]]).unwrap();
    assert_eq!(collinear.thickness(100_000).unwrap(), 1);

    let ap = LatticeSet::from_values(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
    assert_eq!(ap.thickness(100_000).unwrap(), 10);
}

#[test]
fn discrete_hull_respects_the_generated_sublattice() {
    let a = LatticeSet::from_values(&[0, 2, 4, 5]);
    assert_eq!(a.discrete_hull(100_000).unwrap().values().unwrap(), vec![0, 1, 2, 3, 4, 5]);
    assert_eq!(a.hull_vertices().unwrap(), vec![vec![0], vec![5]]);

    let b = LatticeSet::from_values(&[0, 3, 9]);
    assert_eq!(b.discrete_hull(100_000).unwrap().values().unwrap(), vec![0, 3, 6, 9]);

    let point = LatticeSet::from_values(&[0]);
    assert_eq!(point.discrete_hull(100_000).unwrap().values().unwrap(), vec![0]);
}

#[test]
fn separation_checks_produce_witnesses() {
    let l = SymSet::Interval(iv(&[(-4, 4)]));

    let far = lat(&[0, 10, 20]);
    assert!(is_separated(&far, &l).unwrap().separated);

    let near = lat(&[0, 3]);
    let check = is_separated(&near, &l).unwrap();
    assert!(!check.separated);
    let (x, y) = check.witness.unwrap();
    let mut pair = vec![x[0].clone(), y[0].clone()];
    pair.sort();
    assert_eq!(pair, vec![rint(0), rint(3)]);

    let zl = SymSet::Lattice(LatticeSet::from_values(&[-4, -3, -2, -1, 0, 1, 2, 3, 4]));
    let check = is_separated(&lat(&[0, 5, 9]), &zl).unwrap();
    assert!(!check.separated);
    let (x, y) = check.witness.unwrap();
    let mut pair = vec![x[0].clone(), y[0].clone()];
    pair.sort();
    assert_eq!(pair, vec![rint(5), rint(9)]);
}

#[test]
fn operations_report_their_precondition_failures() {
    let a = lat(&[0, 1]);
    let u = SetValue::Interval(iv(&[(0, 1)]));
    assert_eq!(a.sumset(&u).unwrap_err(), Error::KindMismatch);

    let empty = SetValue::Lattice(LatticeSet::from_values(&[]));
    assert!(matches!(a.sumset(&empty), Err(Error::Empty(_))));

    let point = SetValue::Interval(IntervalUnion::point(rint(0)));
    assert_eq!(point.doubling(None).unwrap_err(), Error::ZeroMeasure);

    let asym = SymSet::Interval(iv(&[(-1, 2)]));
    assert!(matches!(is_separated(&a, &asym), Err(Error::NotSymmetric)));
}

fn small_vals() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-20i64..=20, 1..=8)
}

fn small_union() -> impl Strategy<Value = IntervalUnion> {
    proptest::collection::vec((-15i64..=15, 0i64..=6, 1i64..=4), 1..=4).prop_map(|parts| {
        let ivs = parts.into_iter().map(|(lo, w, den)| (rat(lo, den), rat(lo + w, den))).collect();
        IntervalUnion::new(ivs).unwrap()
    })
}

fn solid_union() -> impl Strategy<Value = IntervalUnion> {
    proptest::collection::vec((-15i64..=15, 1i64..=6, 1i64..=4), 1..=4).prop_map(|parts| {
        let ivs = parts.into_iter().map(|(lo, w, den)| (rat(lo, den), rat(lo + w, den))).collect();
        IntervalUnion::new(ivs).unwrap()
    })
}

proptest! {
    #[test]
    fn lattice_sumset_commutes_and_associates(
        a in small_vals(), b in small_vals(), c in small_vals()
    ) {
        let (a, b, c) = (
            LatticeSet::from_values(&a),
            LatticeSet::from_values(&b),
            LatticeSet::from_values(&c),
        );
        prop_assert_eq!(a.sumset(&b).unwrap(), b.sumset(&a).unwrap());
        prop_assert_eq!(
            a.sumset(&b).unwrap().sumset(&c).unwrap(),
            a.sumset(&b.sumset(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn interval_sumset_commutes(a in small_union(), b in small_union()) {
        prop_assert_eq!(a.sumset(&b), b.sumset(&a));
    }

    #[test]
    fn lattice_sumset_cardinality_bounds(a in small_vals(), b in small_vals()) {
        let (a, b) = (LatticeSet::from_values(&a), LatticeSet::from_values(&b));
        let s = a.sumset(&b).unwrap();
        prop_assert!(a.card() + b.card() - 1 <= s.card());
        prop_assert!(s.card() <= a.card() * b.card());
    }

    #[test]
    fn interval_sumset_measure_lower_bound(a in small_union(), b in small_union()) {
        let s = a.sumset(&b);
        prop_assert!(s.measure() >= a.measure() + b.measure());
    }

    #[test]
    fn polycube_sumset_measure_matches_interval_geometry(
        a in solid_union(), b in solid_union()
    ) {
        let (pa, pb) = (
            Polycube::from_interval_union(&a).unwrap(),
            Polycube::from_interval_union(&b).unwrap(),
        );
        let cube_sum = pa.sumset(&pb).unwrap();
        prop_assert_eq!(cube_sum.measure(), a.sumset(&b).measure());
    }

    #[test]
    fn divide_inverts_dilate(vals in small_vals(), n in 1i64..=5) {
        let a = LatticeSet::from_values(&vals);
        prop_assert_eq!(a.dilate(n).divide(n), a);
    }

    #[test]
    fn discrete_hull_contains_and_is_idempotent(vals in small_vals()) {
        let a = LatticeSet::from_values(&vals);
        let hull = a.discrete_hull(100_000).unwrap();
        prop_assert!(a.is_subset(&hull));
        prop_assert_eq!(hull.discrete_hull(100_000).unwrap(), hull);
    }

    #[test]
    fn planar_hull_contains_and_is_idempotent(
        pts in proptest::collection::vec((-6i64..=6, -6i64..=6), 1..=6)
    ) {
        let a = LatticeSet::new(2, pts.into_iter().map(|(x, y)| vec![x, y]).collect()).unwrap();
        let hull = a.discrete_hull(100_000).unwrap();
        prop_assert!(a.is_subset(&hull));
        prop_assert_eq!(hull.discrete_hull(100_000).unwrap(), hull);
    }
}
