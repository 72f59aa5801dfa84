//! Exact counts of k-Naples parking functions and related sets.
//!
//! Three independent routes are provided: exhaustive simulation over the
//! preference space, the binomial recursion over contained parking
//! functions, and closed formulas where they exist. All arithmetic is on
//! arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parking::{run_circle, run_line};
use crate::space::{count_decreasing, count_preferences, with_jobs};

/// An exact non-negative count. Serialized as a decimal string.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Number of decimal digits (1 for zero).
    pub fn decimal_digits(&self) -> usize {
        self.0.to_str_radix(10).len()
    }

    pub fn checked_sub(&self, other: &BigCount) -> Option<BigCount> {
        (self.0 >= other.0).then(|| BigCount(&self.0 - &other.0))
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn add(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl std::iter::Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BigUint::from_str(s.trim()).map(BigCount).map_err(|e| Error::Parse {
            what: "count",
            input: s.to_string(),
            reason: e.to_string(),
        })
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn upow(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `|B_j| = (j + 1)^(j - 1)` with `|B_0| = 1`.
fn contained_size(j: usize) -> BigUint {
    if j == 0 {
        BigUint::one()
    } else {
        upow(j + 1, j - 1)
    }
}

/// `Σ_{i=0}^{m} C(m, i) · weight(m, i) · prev[i]` where `m = prev.len() - 1`.
///
/// Shared skeleton of the parking recursion and its Bell / labelled-forest
/// reductions.
pub(crate) fn binomial_sum(prev: &[BigUint], weight: impl Fn(usize, usize) -> BigUint) -> BigUint {
    let m = prev.len() - 1;
    let mut binom = BigUint::one();
    let mut total = BigUint::zero();
    for (i, a) in prev.iter().enumerate() {
        total += &binom * weight(m, i) * a;
        binom *= m - i;
        binom /= i + 1;
    }
    total
}

/// Memoized `|PF_{n,k}|` for one fixed `k`.
///
/// Values are appended in order of `n` and never modified afterwards.
#[derive(Debug, Clone)]
pub struct CountTable {
    k: usize,
    values: Vec<BigUint>,
}

impl CountTable {
    pub fn new(k: usize) -> Self {
        CountTable {
            k,
            values: vec![BigUint::one()],
        }
    }

    /// Seeds the table with known values for `n = 0, 1, ...`. The seed must
    /// start at `n = 0` with the value 1.
    pub fn with_values(k: usize, values: Vec<BigCount>) -> Result<Self> {
        if values.first().map(|v| v.0.is_one()) != Some(true) {
            return Err(Error::OutOfRange(
                "count table seed must start with |PF_{0,k}| = 1".into(),
            ));
        }
        Ok(CountTable {
            k,
            values: values.into_iter().map(|v| v.0).collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest `n` populated so far.
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn cached(&self, n: usize) -> Option<BigCount> {
        self.values.get(n).cloned().map(BigCount)
    }

    /// `|PF_{n,k}|`, extending the table as needed.
    pub fn get(&mut self, n: usize) -> BigCount {
        let k = self.k;
        while self.values.len() <= n {
            // length m + 1 from lengths 0..=m
            let next = binomial_sum(&self.values, |m, i| {
                BigUint::from((i + 1 + k).min(m + 1)) * contained_size(m - i)
            });
            self.values.push(next);
        }
        BigCount(self.values[n].clone())
    }

    pub fn values(&self) -> impl Iterator<Item = BigCount> + '_ {
        self.values.iter().cloned().map(BigCount)
    }
}

/// A set of [`CountTable`]s, one per `k`.
#[derive(Debug, Clone, Default)]
pub struct Counter {
    tables: BTreeMap<usize, CountTable>,
}

impl Counter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&mut self, k: usize) -> &mut CountTable {
        self.tables.entry(k).or_insert_with(|| CountTable::new(k))
    }

    pub fn insert_table(&mut self, table: CountTable) {
        self.tables.insert(table.k, table);
    }

    pub fn tables(&self) -> impl Iterator<Item = &CountTable> {
        self.tables.values()
    }

    pub fn count(&mut self, n: usize, k: usize) -> BigCount {
        self.table(k).get(n)
    }

    /// `|PF*_{n,k}| = |PF_{n,k}| - |PF_{n,k-1}|`, zero for `k = 0`.
    pub fn star(&mut self, n: usize, k: usize) -> BigCount {
        if k == 0 || n == 0 {
            return BigCount::zero();
        }
        let top = self.count(n, k.min(n - 1));
        let below = self.count(n, (k - 1).min(n - 1));
        top.checked_sub(&below).expect("PF_{n,k-1} is a subset of PF_{n,k}")
    }
}

/// `|PF_{n,k}|` by the binomial recursion, seeded with `|PF_{0,k}| = 1`.
pub fn count_recursive(n: usize, k: usize) -> BigCount {
    CountTable::new(k).get(n)
}

/// `|PF_n| = (n + 1)^(n - 1)`; 1 for `n = 0`.
pub fn count_pf_closed(n: usize) -> BigCount {
    BigCount(contained_size(n))
}

/// `|PF_{n,n-1}| = |PP_n| = n^n`.
pub fn count_top_closed(n: usize) -> BigCount {
    BigCount(upow(n, n))
}

/// `|PF_{n,n-2}| = n^n - n^(n-2)`, for `n >= 2`.
pub fn count_second_closed(n: usize) -> Result<BigCount> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "|PF_{{n,n-2}}| needs n >= 2, got n = {n}"
        )));
    }
    Ok(BigCount(upow(n, n) - upow(n, n - 2)))
}

/// `|PF*_{n,k}|`, with `k` clamped at `n - 1`.
pub fn count_star(n: usize, k: usize) -> BigCount {
    Counter::new().star(n, k)
}

/// `(|PF*_{n,1}|, ..., |PF*_{n,n}|)`. The last entry is always zero.
pub fn star_profile(n: usize) -> Result<Vec<BigCount>> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("star profile needs n >= 2, got n = {n}")));
    }
    let mut counter = Counter::new();
    Ok(star_profile_with(&mut counter, n))
}

/// [`star_profile`] reusing (and filling) the tables in `counter`.
pub fn star_profile_with(counter: &mut Counter, n: usize) -> Vec<BigCount> {
    (1..=n).map(|k| counter.star(n, k)).collect()
}

/// Limits and parallelism for the exhaustive counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteConfig {
    /// Largest `n` for scans of the full space `[n]^n`.
    pub cap: usize,
    /// Largest `n` for scans of weakly decreasing preferences only.
    pub decreasing_cap: usize,
    /// Largest `n` for scans over all rearrangements of a preference.
    pub rearrangement_cap: usize,
    /// Worker threads; `None` uses every available core.
    pub jobs: Option<usize>,
}

impl Default for BruteConfig {
    fn default() -> Self {
        BruteConfig {
            cap: 8,
            decreasing_cap: 14,
            rearrangement_cap: 8,
            jobs: None,
        }
    }
}

impl BruteConfig {
    pub fn check_full(&self, n: usize, what: &'static str) -> Result<()> {
        if n > self.cap {
            return Err(Error::CapExceeded { what, n, cap: self.cap });
        }
        Ok(())
    }

    pub fn check_decreasing(&self, n: usize, what: &'static str) -> Result<()> {
        if n > self.decreasing_cap {
            return Err(Error::CapExceeded {
                what,
                n,
                cap: self.decreasing_cap,
            });
        }
        Ok(())
    }
}

fn scan_full(n: usize, cfg: &BruteConfig, pred: impl Fn(&mut Vec<u32>, &[usize]) -> bool + Sync + Send) -> BigCount {
    if n == 0 {
        return BigCount::one();
    }
    BigCount::from(with_jobs(cfg.jobs, || count_preferences(n, || vec![0u32; n + 1], pred)))
}

/// `|PF_{n,k}|` by simulating every preference in `[n]^n`.
pub fn count_brute(n: usize, k: usize, cfg: &BruteConfig) -> Result<BigCount> {
    cfg.check_full(n, "count_brute")?;
    Ok(scan_full(n, cfg, |occ, t| run_line(t, k, &mut occ[..t.len()]).is_ok()))
}

/// `|B_{n,k}|` by running the circular process on every preference in `[n]^n`.
pub fn count_contained_brute(n: usize, k: usize, cfg: &BruteConfig) -> Result<BigCount> {
    cfg.check_full(n, "count_contained_brute")?;
    Ok(scan_full(n, cfg, |occ, t| run_circle(t, k, occ) == 0))
}

/// `|B^c_{n,k}|`: preferences in `[n]^n` that are not contained.
pub fn count_not_contained_brute(n: usize, k: usize, cfg: &BruteConfig) -> Result<BigCount> {
    cfg.check_full(n, "count_not_contained_brute")?;
    if n == 0 {
        return Ok(BigCount::zero());
    }
    Ok(scan_full(n, cfg, |occ, t| run_circle(t, k, occ) != 0))
}

/// `|PF_{n,k} \ PF_n|`: k-Naples preferences that are not parking functions.
pub fn count_naples_not_pf_brute(n: usize, k: usize, cfg: &BruteConfig) -> Result<BigCount> {
    cfg.check_full(n, "count_naples_not_pf_brute")?;
    if n == 0 {
        return Ok(BigCount::zero());
    }
    Ok(scan_full(n, cfg, |occ, t| {
        run_line(t, k, &mut occ[..t.len()]).is_ok() && run_line(t, 0, &mut occ[..t.len()]).is_err()
    }))
}

/// Decreasing k-Naples parking functions, counted by simulating every
/// weakly decreasing preference of length `n`.
pub fn count_decreasing_brute(n: usize, k: usize, cfg: &BruteConfig) -> Result<BigCount> {
    cfg.check_decreasing(n, "count_decreasing_brute")?;
    if n == 0 {
        return Ok(BigCount::one());
    }
    let c = with_jobs(cfg.jobs, || {
        count_decreasing(n, |t| {
            let mut occ = [0u32; 64];
            if t.len() <= occ.len() {
                run_line(t, k, &mut occ[..t.len()]).is_ok()
            } else {
                run_line(t, k, &mut vec![0; t.len()]).is_ok()
            }
        })
    });
    Ok(BigCount::from(c))
}

/// Closed forms for decreasing k-Naples parking functions, `k` in `{1, 2, 3}`:
///
/// * `k = 1`: `3 (2n)! / ((n + 2)! (n - 1)!)`
/// * `k = 2`: `C(2n - 1, n) - C(2n - 1, n + 3)`
/// * `k = 3`: `C(2n - 1, n - 1) - C(2n - 1, n - 5)`
///
/// each valid for `n >= k + 1`.
pub fn count_decreasing_closed(n: usize, k: usize) -> Result<BigCount> {
    if !(1..=3).contains(&k) {
        return Err(Error::NoClosedFormula { k });
    }
    if n < k + 1 {
        return Err(Error::OutOfRange(format!(
            "closed formula for k = {k} holds for n >= {}, got n = {n}",
            k + 1
        )));
    }
    let m = n as i64;
    let v = match k {
        1 => {
            let n = n as u64;
            BigUint::from(3u32) * factorial(2 * n) / (factorial(n + 2) * factorial(n - 1))
        }
        2 => binomial(2 * m - 1, m) - binomial(2 * m - 1, m + 3),
        3 => binomial(2 * m - 1, m - 1) - binomial(2 * m - 1, m - 5),
        _ => unreachable!(),
    };
    Ok(BigCount(v))
}

/// `Catalan(n) = C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigCount {
    BigCount(binomial(2 * n as i64, n as i64) / BigUint::from(n + 1))
}

/// On-disk memo of recursive counts, stored as `counts.json` mapping
/// `"n,k"` to a decimal string.
#[derive(Debug, Clone)]
pub struct DiskCache {
    path: PathBuf,
    entries: BTreeMap<String, BigCount>,
    dirty: bool,
}

impl DiskCache {
    pub const FILE_NAME: &'static str = "counts.json";

    /// Opens (or starts) the cache in `dir`. A missing file is an empty cache.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let path = dir.as_ref().join(Self::FILE_NAME);
        let entries = match std::fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(DiskCache {
            path,
            entries,
            dirty: false,
        })
    }

    fn key(n: usize, k: usize) -> String {
        format!("{n},{k}")
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BigCount> {
        self.entries.get(&Self::key(n, k))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Records a value. An existing cell is never overwritten.
    pub fn insert(&mut self, n: usize, k: usize, value: BigCount) {
        self.entries.entry(Self::key(n, k)).or_insert_with(|| {
            self.dirty = true;
            value
        });
    }

    /// Builds a table for `k` from the contiguous run of cached values `n = 0, 1, ...`.
    pub fn table(&self, k: usize) -> CountTable {
        let seed: Vec<BigCount> = (0..).map_while(|n| self.get(n, k).cloned()).collect();
        CountTable::with_values(k, seed).unwrap_or_else(|_| CountTable::new(k))
    }

    /// Copies every value held by `counter` into the cache.
    pub fn absorb(&mut self, counter: &Counter) {
        for table in counter.tables() {
            for (n, v) in table.values().enumerate() {
                self.insert(n, table.k(), v);
            }
        }
    }

    pub fn save(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        if let Some(dir) = self.path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = self.path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(&self.entries)?)?;
        std::fs::rename(&tmp, &self.path)?;
        self.dirty = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(count_recursive(4, 1), big(203));
        assert_eq!(count_recursive(5, 2), big(2731));
        assert_eq!(count_recursive(8, 3), big(13_902_752));
        for k in 0..5 {
            assert_eq!(count_recursive(0, k), big(1));
        }
    }

    #[test]
    fn recursion_magnitude_at_25() {
        let v = count_recursive(25, 1);
        assert!((34..=36).contains(&v.decimal_digits()), "{v}");
        // below n^n, above (n+1)^(n-1)
        assert!(v < count_top_closed(25) && v > count_pf_closed(25));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(count_pf_closed(5), big(1296));
        assert_eq!(count_pf_closed(1), big(1));
        assert_eq!(count_pf_closed(8), big(4_782_969));
        assert_eq!(count_top_closed(6), big(46656));
        assert_eq!(count_second_closed(4).unwrap(), big(240));
        assert_eq!(count_second_closed(2).unwrap(), big(3));
        assert!(matches!(count_second_closed(1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn star_counts() {
        assert_eq!(count_star(4, 3), big(16));
        assert_eq!(count_star(5, 4), big(125));
        for n in 1..6 {
            assert_eq!(count_star(n, 0), big(0));
        }
        let p = star_profile(4).unwrap();
        assert_eq!(p, vec![big(78), big(37), big(16), big(0)]);
        assert!(star_profile(1).is_err());
    }

    #[test]
    fn brute_examples() {
        let cfg = BruteConfig::default();
        assert_eq!(count_brute(3, 1, &cfg).unwrap(), big(24));
        assert_eq!(count_brute(7, 6, &cfg).unwrap(), big(823_543));
        assert_eq!(count_brute(1, 0, &cfg).unwrap(), big(1));
        assert_eq!(count_contained_brute(4, 2, &cfg).unwrap(), big(125));
        assert_eq!(count_contained_brute(1, 0, &cfg).unwrap(), big(1));
        assert_eq!(count_contained_brute(6, 3, &cfg).unwrap(), big(16807));
    }

    #[test]
    fn brute_respects_caps() {
        let cfg = BruteConfig {
            cap: 3,
            decreasing_cap: 4,
            ..BruteConfig::default()
        };
        assert_eq!(
            count_brute(4, 0, &cfg),
            Err(Error::CapExceeded { what: "count_brute", n: 4, cap: 3 })
        );
        assert!(count_contained_brute(4, 0, &cfg).is_err());
        assert!(count_decreasing_brute(5, 0, &cfg).is_err());
        assert!(count_decreasing_brute(4, 0, &cfg).is_ok());
    }

    #[test]
    fn jobs_do_not_change_counts() {
        let one = BruteConfig { jobs: Some(1), ..BruteConfig::default() };
        let many = BruteConfig { jobs: Some(4), ..BruteConfig::default() };
        assert_eq!(count_brute(6, 2, &one), count_brute(6, 2, &many));
    }

    #[test]
    fn decreasing_counts() {
        let cfg = BruteConfig::default();
        assert_eq!(count_decreasing_brute(4, 1, &cfg).unwrap(), big(28));
        assert_eq!(count_decreasing_brute(2, 1, &cfg).unwrap(), big(3));
        for n in 1..=10 {
            assert_eq!(count_decreasing_brute(n, 0, &cfg).unwrap(), catalan(n));
        }
        let k1: Vec<_> = (2..=6).map(|n| count_decreasing_closed(n, 1).unwrap()).collect();
        assert_eq!(k1, [3, 9, 28, 90, 297].map(big));
        assert_eq!(count_decreasing_closed(3, 2).unwrap(), big(10));
        assert_eq!(count_decreasing_closed(4, 3).unwrap(), big(35));
        assert_eq!(count_decreasing_closed(4, 4), Err(Error::NoClosedFormula { k: 4 }));
        assert!(matches!(count_decreasing_closed(2, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(catalan(10), big(16796));
    }

    // The recursion with the min-factor and the contained factor dropped is
    // Bell's recurrence; keeping only the contained factor counts labelled
    // rooted forests.
    #[test]
    fn reduced_recurrences_match_known_sequences() {
        let mut bell = vec![BigUint::one()];
        let mut forest = vec![BigUint::one()];
        for _ in 0..9 {
            bell.push(binomial_sum(&bell, |_, _| BigUint::one()));
            forest.push(binomial_sum(&forest, |m, i| contained_size(m - i)));
        }
        let as_u64 = |v: &[BigUint]| v.iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_u64(&bell), [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147]);
        assert_eq!(
            as_u64(&forest),
            [1, 1, 2, 7, 38, 291, 2932, 36961, 561948, 10026505]
        );
    }

    #[test]
    fn big_count_serializes_as_decimal_string() {
        let v = count_top_closed(20);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"104857600000000000000000000\"");
        let back: BigCount = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn table_seed_must_start_at_one() {
        assert!(CountTable::with_values(1, vec![big(2)]).is_err());
        let mut t = CountTable::with_values(1, vec![big(1), big(1), big(4)]).unwrap();
        assert_eq!(t.n_max(), 2);
        assert_eq!(t.get(4), big(203));
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut counter = Counter::new();
        counter.count(6, 2);
        let mut cache = DiskCache::open(dir.path()).unwrap();
        assert!(cache.is_empty());
        cache.absorb(&counter);
        cache.save().unwrap();

        let reopened = DiskCache::open(dir.path()).unwrap();
        assert_eq!(reopened.get(6, 2), Some(&big(38034)));
        let mut table = reopened.table(2);
        assert_eq!(table.n_max(), 6);
        assert_eq!(table.get(7), big(627_405));
        assert_eq!(reopened.table(5).n_max(), 0);
    }
}
