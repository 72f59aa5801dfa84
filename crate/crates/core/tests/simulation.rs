mod common;

use common::{all_prefs, decreasing_prefs, naive_circle_empty, naive_naples, naive_park, naive_pf};
use naples_core::{
    circle_park, is_contained, is_decreasing_k_naples_fast, is_k_naples, is_parking_function, park_k,
    PreferenceVector,
};
use proptest::prelude::*;

fn pref_strategy(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(1..=n, n))
}

proptest! {
    #[test]
    fn naples_is_monotone_in_k(p in pref_strategy(9), k in 0usize..9) {
        let v = PreferenceVector::new(p).unwrap();
        if is_k_naples(&v, k) {
            prop_assert!(is_k_naples(&v, k + 1));
        }
    }

    #[test]
    fn lookback_saturates_at_n_minus_one(p in pref_strategy(9), extra in 0usize..20) {
        let n = p.len();
        let v = PreferenceVector::new(p).unwrap();
        let k = n.saturating_sub(1);
        prop_assert_eq!(park_k(&v, k), park_k(&v, k + extra));
        prop_assert!(is_k_naples(&v, k));
    }

    #[test]
    fn outcome_agrees_with_reference(p in pref_strategy(9), k in 0usize..10) {
        let v = PreferenceVector::new(p.clone()).unwrap();
        let outcome = park_k(&v, k);
        prop_assert_eq!(outcome.spots_by_car(), naive_park(&p, k));
        if let Some(a) = outcome.assignment() {
            let mut cars = a.to_vec();
            cars.sort_unstable();
            prop_assert_eq!(cars, (1..=p.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn circle_parks_every_car(p in pref_strategy(9), k in 0usize..10) {
        let n = p.len();
        let mut entries: Vec<usize> = p.iter().map(|&a| a % (n + 1)).collect();
        entries.rotate_left(1);
        let out = circle_park(&entries, k).unwrap();
        let empty: Vec<usize> = (0..=n).filter(|&s| out.occupancy[s].is_none()).collect();
        prop_assert_eq!(empty, vec![out.empty_spot]);
        prop_assert_eq!(out.empty_spot, naive_circle_empty(&entries, k));
    }

    #[test]
    fn contained_implies_naples(p in pref_strategy(8), k in 0usize..9) {
        let v = PreferenceVector::new(p).unwrap();
        if is_contained(&v, k) {
            prop_assert!(is_k_naples(&v, k));
        }
    }

    #[test]
    fn classical_rule_matches_sorted_test(p in pref_strategy(10)) {
        let v = PreferenceVector::new(p.clone()).unwrap();
        prop_assert_eq!(is_parking_function(&v), naive_pf(&p));
        prop_assert_eq!(is_k_naples(&v, 0), naive_pf(&p));
    }
}

#[test]
fn membership_matches_reference_exhaustively() {
    for n in 1..=6 {
        for p in all_prefs(n) {
            let v = PreferenceVector::new(p.clone()).unwrap();
            for k in 0..=n {
                assert_eq!(is_k_naples(&v, k), naive_naples(&p, k), "{v} k={k}");
            }
        }
    }
}

// Exactly one rotation of a preference on the circle leaves spot 0 empty.
#[test]
fn one_rotation_is_contained() {
    for n in 1..=5 {
        let m = n + 1;
        for p in all_prefs(n) {
            for k in 0..=n {
                let contained = (0..m)
                    .filter(|&r| {
                        let rotated: Vec<usize> = p.iter().map(|&a| (a + r) % m).collect();
                        circle_park(&rotated, k).unwrap().empty_spot == 0
                    })
                    .count();
                assert_eq!(contained, 1, "{p:?} k={k}");
            }
        }
    }
}

#[test]
fn fast_decreasing_test_agrees_with_simulation() {
    for n in 1..=10 {
        for p in decreasing_prefs(n) {
            let v = PreferenceVector::new(p).unwrap();
            for k in 0..=n {
                assert_eq!(is_decreasing_k_naples_fast(&v, k).unwrap(), is_k_naples(&v, k), "{v} k={k}");
            }
        }
    }
    let unsorted = PreferenceVector::new(vec![1, 2]).unwrap();
    assert!(is_decreasing_k_naples_fast(&unsorted, 1).is_err());
}
