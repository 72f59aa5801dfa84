//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigUint;

/// Published `|PF_{n,k}|` for `1 <= n <= 8`, row `n - 1`, column `k`.
pub const PUBLISHED_COUNTS: [&[u64]; 8] = [
    &[1],
    &[3, 4],
    &[16, 24, 27],
    &[125, 203, 240, 256],
    &[1296, 2225, 2731, 3000, 3125],
    &[16807, 30067, 38034, 42689, 45360, 46656],
    &[262144, 484071, 627405, 717051, 773081, 806736, 823543],
    &[4782969, 9057316, 11976466, 13902752, 15170350, 16000823, 16515072, 16777216],
];

/// Published decreasing counts for lookback 1, 2, 3, starting at `n = k + 1`.
pub const PUBLISHED_DECREASING: [&[u64]; 3] = [&[3, 9, 28, 90, 297], &[10, 34, 117, 407], &[35, 125, 451, 1638]];

/// Direct simulation on spots `1..=n`; `None` when some car fails.
pub fn naive_park(pref: &[usize], k: usize) -> Option<Vec<usize>> {
    let n = pref.len();
    let mut taken = vec![false; n + 2];
    let mut spots = Vec::new();
    for &a in pref {
        let mut chosen = None;
        if !taken[a] {
            chosen = Some(a);
        } else {
            let mut back = 1;
            while back <= k && back < a {
                if !taken[a - back] {
                    chosen = Some(a - back);
                    break;
                }
                back += 1;
            }
            if chosen.is_none() {
                let mut s = a + 1;
                while s <= n {
                    if !taken[s] {
                        chosen = Some(s);
                        break;
                    }
                    s += 1;
                }
            }
        }
        let s = chosen?;
        taken[s] = true;
        spots.push(s);
    }
    Some(spots)
}

pub fn naive_naples(pref: &[usize], k: usize) -> bool {
    naive_park(pref, k).is_some()
}

pub fn naive_pf(pref: &[usize]) -> bool {
    let mut s = pref.to_vec();
    s.sort();
    s.iter().enumerate().all(|(i, &a)| a <= i + 1)
}

/// Circle of `n + 1` spots; returns the spot left empty.
pub fn naive_circle_empty(pref: &[usize], k: usize) -> usize {
    let m = pref.len() + 1;
    let mut taken = vec![false; m];
    for &a in pref {
        let mut s = a;
        let mut back = 0;
        while taken[s] && back < k.min(m - 1) {
            back += 1;
            s = (a + m - back) % m;
        }
        if taken[s] {
            s = a;
            while taken[s] {
                s = (s + 1) % m;
            }
        }
        taken[s] = true;
    }
    taken.iter().position(|&t| !t).unwrap()
}

/// Every preference in `[n]^n`, lexicographically.
pub fn all_prefs(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=n).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every weakly decreasing preference of length `n`.
pub fn decreasing_prefs(n: usize) -> Vec<Vec<usize>> {
    all_prefs_bounded_decreasing(n, n)
}

fn all_prefs_bounded_decreasing(len: usize, max: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max).rev() {
        for rest in all_prefs_bounded_decreasing(len - 1, first) {
            let mut p = vec![first];
            p.extend(rest);
            out.push(p);
        }
    }
    out
}

pub fn pow(base: usize, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
