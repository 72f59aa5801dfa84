mod common;

use common::{all_prefs, binom, naive_naples, naive_pf, pow, PUBLISHED_COUNTS};
use naples_core::counting::{
    count_contained_brute, count_naples_not_pf_brute, count_not_contained_brute, CountTable, DiskCache,
};
use naples_core::{
    count_brute, count_decreasing_brute, count_decreasing_closed, count_pf_closed, count_recursive,
    count_second_closed, count_star, count_top_closed, star_profile, BigCount, BruteConfig, Counter,
};
use proptest::prelude::*;

#[test]
fn recursion_reproduces_published_counts() {
    for (row, values) in PUBLISHED_COUNTS.iter().enumerate() {
        for (k, &v) in values.iter().enumerate() {
            assert_eq!(count_recursive(row + 1, k), BigCount::from(v), "n={} k={k}", row + 1);
        }
    }
}

#[test]
fn brute_force_counts_match_reference_simulation() {
    let cfg = BruteConfig::default();
    for n in 1..=5 {
        let prefs = all_prefs(n);
        for k in 0..=n {
            let expected = prefs.iter().filter(|p| naive_naples(p, k)).count() as u64;
            assert_eq!(count_brute(n, k, &cfg).unwrap(), BigCount::from(expected));
        }
    }
}

#[test]
fn diagonal_closed_forms() {
    for n in 2..=30usize {
        assert_eq!(*count_top_closed(n).as_biguint(), pow(n, n as u32));
        assert_eq!(count_top_closed(n), count_recursive(n, n - 1));
        assert_eq!(count_second_closed(n).unwrap(), count_recursive(n, n - 2));
    }
    for n in 1..=30usize {
        assert_eq!(count_pf_closed(n), count_recursive(n, 0));
    }
}

#[test]
fn large_lookback_gives_every_preference() {
    for n in 1..=20usize {
        for k in n - 1..n + 3 {
            assert_eq!(*count_recursive(n, k).as_biguint(), pow(n, n as u32));
        }
    }
}

#[test]
fn star_counts_telescope() {
    for n in 2..=25usize {
        let profile = star_profile(n).unwrap();
        let total = profile.iter().cloned().sum::<BigCount>() + count_recursive(n, 0);
        assert_eq!(*total.as_biguint(), pow(n, n as u32), "n={n}");
        assert!(profile[n - 1].is_zero());
        assert_eq!(*count_star(n, n - 1).as_biguint(), pow(n, (n - 2) as u32));
    }
}

#[test]
fn complement_identities() {
    let cfg = BruteConfig::default();
    for n in 1..=6usize {
        let prefs = all_prefs(n);
        let not_contained = pow(n, n as u32) - pow(n + 1, (n - 1) as u32);
        for k in 0..=n {
            let oracle = prefs.iter().filter(|p| naive_naples(p, k) && !naive_pf(p)).count() as u64;
            let diff = count_brute(n, k, &cfg).unwrap().checked_sub(&count_pf_closed(n)).unwrap();
            assert_eq!(diff, BigCount::from(oracle));
            assert_eq!(count_naples_not_pf_brute(n, k, &cfg).unwrap(), BigCount::from(oracle));
            assert_eq!(*count_not_contained_brute(n, k, &cfg).unwrap().as_biguint(), not_contained);
            assert_eq!(*count_contained_brute(n, k, &cfg).unwrap().as_biguint(), pow(n + 1, (n - 1) as u32));
        }
    }
}

#[test]
fn decreasing_closed_forms_match_brute_force() {
    let cfg = BruteConfig::default();
    for k in 1..=3usize {
        for n in k + 1..=12 {
            assert_eq!(count_decreasing_closed(n, k).unwrap(), count_decreasing_brute(n, k, &cfg).unwrap());
        }
    }
    // lookback 0 gives the Catalan numbers
    for n in 1..=12u64 {
        let catalan = binom(2 * n, n) / (n + 1);
        assert_eq!(count_decreasing_brute(n as usize, 0, &cfg).unwrap(), BigCount::from(catalan));
    }
}

#[test]
fn brute_caps_are_enforced() {
    let cfg = BruteConfig { cap: 5, decreasing_cap: 6, ..BruteConfig::default() };
    assert!(count_brute(6, 1, &cfg).is_err());
    assert!(count_decreasing_brute(7, 1, &cfg).is_err());
    assert!(count_brute(5, 1, &cfg).is_ok());
}

#[test]
fn disk_cache_seeds_recursion() {
    let dir = tempfile::tempdir().unwrap();
    let mut counter = Counter::new();
    for n in 0..=9 {
        counter.count(n, 2);
    }
    let mut cache = DiskCache::open(dir.path()).unwrap();
    cache.absorb(&counter);
    cache.save().unwrap();

    let reopened = DiskCache::open(dir.path()).unwrap();
    let mut table: CountTable = reopened.table(2);
    assert_eq!(table.n_max(), 9);
    assert_eq!(table.get(12), count_recursive(12, 2));
}

proptest! {
    #[test]
    fn counts_are_monotone_in_k(n in 1usize..40, k in 0usize..40) {
        prop_assert!(count_recursive(n, k) <= count_recursive(n, k + 1));
    }

    #[test]
    fn counts_lie_between_pf_and_all(n in 1usize..40, k in 0usize..40) {
        let c = count_recursive(n, k);
        prop_assert!(count_pf_closed(n) <= c);
        prop_assert!(*c.as_biguint() <= pow(n, n as u32));
    }
}
