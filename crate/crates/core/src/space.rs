//! Exhaustive enumeration of preference spaces.
//!
//! `[n]^n` is walked as a radix-`n` odometer. For parallel runs the space is
//! cut into `n^p` disjoint parts by fixing the first `p` digits; each part is
//! enumerated independently and the partial results are merged.

use rayon::prelude::*;

/// Odometer over all tuples in `1..=base` of a given length, least
/// significant digit last (lexicographic order).
#[derive(Debug, Clone)]
pub struct Odometer {
    digits: Vec<usize>,
    base: usize,
    frozen: usize,
    exhausted: bool,
}

impl Odometer {
    /// Starts at `prefix` followed by ones. Only the free (non-prefix) digits advance.
    pub fn with_prefix(base: usize, len: usize, prefix: &[usize]) -> Self {
        assert!(prefix.len() <= len);
        let mut digits = vec![1; len];
        digits[..prefix.len()].copy_from_slice(prefix);
        Odometer {
            digits,
            base,
            frozen: prefix.len(),
            exhausted: base == 0,
        }
    }

    pub fn new(base: usize, len: usize) -> Self {
        Self::with_prefix(base, len, &[])
    }

    /// Current tuple, or `None` once every tuple has been visited.
    pub fn current(&self) -> Option<&[usize]> {
        (!self.exhausted).then_some(&self.digits[..])
    }

    pub fn advance(&mut self) {
        for d in (self.frozen..self.digits.len()).rev() {
            if self.digits[d] < self.base {
                self.digits[d] += 1;
                return;
            }
            self.digits[d] = 1;
        }
        self.exhausted = true;
    }
}

/// A split of `[n]^n` into `n^prefix_len` parts sharing a fixed prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixPartition {
    pub n: usize,
    pub prefix_len: usize,
}

impl PrefixPartition {
    /// Picks a prefix long enough to give a few hundred parts at most.
    pub fn for_n(n: usize) -> Self {
        let mut prefix_len = 0;
        let mut parts = 1usize;
        while prefix_len < n && parts < 256 {
            parts = parts.saturating_mul(n);
            prefix_len += 1;
        }
        PrefixPartition { n, prefix_len }
    }

    pub fn parts(&self) -> usize {
        self.n.pow(self.prefix_len as u32)
    }

    /// The fixed prefix of part `index`, most significant digit first.
    pub fn prefix(&self, mut index: usize) -> Vec<usize> {
        let mut prefix = vec![0; self.prefix_len];
        for slot in prefix.iter_mut().rev() {
            *slot = index % self.n + 1;
            index /= self.n;
        }
        prefix
    }

    pub fn for_each_in_part(&self, index: usize, mut f: impl FnMut(&[usize])) {
        let mut odo = Odometer::with_prefix(self.n, self.n, &self.prefix(index));
        while let Some(t) = odo.current() {
            f(t);
            odo.advance();
        }
    }
}

/// Visits every preference in `[n]^n` sequentially.
pub fn for_each_preference(n: usize, mut f: impl FnMut(&[usize])) {
    let mut odo = Odometer::new(n, n);
    while let Some(t) = odo.current() {
        f(t);
        odo.advance();
    }
}

/// Runs `op` on a pool of `jobs` threads, or on rayon's global pool when `None`.
pub fn with_jobs<R: Send>(jobs: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        },
        None => op(),
    }
}

/// Parallel fold over `[n]^n`. `fold` sees each tuple together with the
/// part-local accumulator and a per-part scratch value from `scratch`.
pub fn fold_preferences<A, S>(
    n: usize,
    scratch: impl Fn() -> S + Sync,
    identity: impl Fn() -> A + Sync,
    fold: impl Fn(&mut A, &mut S, &[usize]) + Sync,
    merge: impl Fn(A, A) -> A + Sync + Send,
) -> A
where
    A: Send,
{
    let partition = PrefixPartition::for_n(n);
    (0..partition.parts())
        .into_par_iter()
        .map(|part| {
            let mut acc = identity();
            let mut s = scratch();
            partition.for_each_in_part(part, |t| fold(&mut acc, &mut s, t));
            acc
        })
        .reduce(&identity, &merge)
}

/// Counts tuples of `[n]^n` accepted by `pred`.
pub fn count_preferences<S>(
    n: usize,
    scratch: impl Fn() -> S + Sync,
    pred: impl Fn(&mut S, &[usize]) -> bool + Sync,
) -> u64 {
    fold_preferences(
        n,
        scratch,
        || 0u64,
        |acc, s, t| {
            if pred(s, t) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )
}

/// Visits every weakly decreasing tuple of length `len` with entries in
/// `1..=max` whose first entry is `first`, in lexicographically decreasing order.
pub fn for_each_decreasing_from(len: usize, max: usize, first: usize, mut f: impl FnMut(&[usize])) {
    if len == 0 {
        f(&[]);
        return;
    }
    assert!((1..=max).contains(&first));
    let mut t = vec![first; len];
    loop {
        f(&t);
        // rightmost entry past the first that can still drop
        let Some(pos) = (1..len).rev().find(|&i| t[i] > 1) else {
            return;
        };
        t[pos] -= 1;
        let v = t[pos];
        for x in &mut t[pos + 1..] {
            *x = v;
        }
    }
}

/// Visits every weakly decreasing tuple of length `len` over `1..=max`.
pub fn for_each_decreasing(len: usize, max: usize, mut f: impl FnMut(&[usize])) {
    if len == 0 {
        f(&[]);
        return;
    }
    for first in (1..=max).rev() {
        for_each_decreasing_from(len, max, first, &mut f);
    }
}

/// Parallel count of weakly decreasing tuples of length `n` over `1..=n`
/// accepted by `pred`, split by first entry.
pub fn count_decreasing(n: usize, pred: impl Fn(&[usize]) -> bool + Sync) -> u64 {
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut c = 0u64;
            for_each_decreasing_from(n, n, first, |t| {
                if pred(t) {
                    c += 1;
                }
            });
            c
        })
        .sum()
}

/// Rearranges `v` into the next lexicographic permutation; returns false
/// (leaving `v` sorted ascending) after the last one. Repeated values are
/// handled, so starting from ascending order visits each distinct
/// rearrangement exactly once.
pub fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        v.reverse();
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Visits each distinct rearrangement of `values` once.
pub fn for_each_rearrangement(values: &[usize], mut f: impl FnMut(&[usize])) {
    let mut v = values.to_vec();
    v.sort_unstable();
    loop {
        f(&v);
        if !next_permutation(&mut v) {
            break;
        }
    }
}
