//! Ascent, descent and tie statistics of preferences and of whole sets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::counting::BruteConfig;
use crate::error::{Error, Result};
use crate::parking::{run_circle, run_line, sorted_is_parking_function, PreferenceVector};
use crate::space::{fold_preferences, with_jobs};

/// Counts of positions `i < n` with `a_i < a_{i+1}`, `a_i > a_{i+1}`, `a_i = a_{i+1}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdtTriple {
    pub ascents: u64,
    pub descents: u64,
    pub ties: u64,
}

impl AdtTriple {
    pub fn total(&self) -> u64 {
        self.ascents + self.descents + self.ties
    }
}

impl std::ops::Add for AdtTriple {
    type Output = AdtTriple;
    fn add(self, o: AdtTriple) -> AdtTriple {
        AdtTriple {
            ascents: self.ascents + o.ascents,
            descents: self.descents + o.descents,
            ties: self.ties + o.ties,
        }
    }
}

impl std::ops::AddAssign for AdtTriple {
    fn add_assign(&mut self, o: AdtTriple) {
        *self = *self + o;
    }
}

pub(crate) fn adt_of(entries: &[usize]) -> AdtTriple {
    let mut t = AdtTriple::default();
    for w in entries.windows(2) {
        match w[0].cmp(&w[1]) {
            std::cmp::Ordering::Less => t.ascents += 1,
            std::cmp::Ordering::Greater => t.descents += 1,
            std::cmp::Ordering::Equal => t.ties += 1,
        }
    }
    t
}

pub fn adt_stats(pref: &PreferenceVector) -> AdtTriple {
    adt_of(pref.entries())
}

/// The preference sets statistics can be aggregated over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PreferenceSet {
    /// Classical parking functions `PF_n`.
    ParkingFunctions,
    /// Contained parking functions `B_{n,k}`.
    Contained,
    /// k-Naples parking functions `PF_{n,k}`.
    Naples,
    /// Every preference, `PP_n`.
    All,
}

impl PreferenceSet {
    pub fn label(self) -> &'static str {
        match self {
            PreferenceSet::ParkingFunctions => "PF",
            PreferenceSet::Contained => "B",
            PreferenceSet::Naples => "PF_k",
            PreferenceSet::All => "PP",
        }
    }

    fn contains(self, t: &[usize], k: usize, line: &mut [u32], circle: &mut [u32]) -> bool {
        match self {
            PreferenceSet::ParkingFunctions => {
                let mut sorted = t.to_vec();
                sorted.sort_unstable();
                sorted_is_parking_function(&sorted)
            }
            PreferenceSet::Contained => run_circle(t, k, circle) == 0,
            PreferenceSet::Naples => run_line(t, k, line).is_ok(),
            PreferenceSet::All => true,
        }
    }
}

impl fmt::Display for PreferenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PreferenceSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pf" => Ok(PreferenceSet::ParkingFunctions),
            "b" | "contained" => Ok(PreferenceSet::Contained),
            "pf_k" | "pfk" | "naples" => Ok(PreferenceSet::Naples),
            "pp" | "all" => Ok(PreferenceSet::All),
            _ => Err(Error::Parse {
                what: "preference set",
                input: s.to_string(),
                reason: "expected one of PF, B, PF_k, PP".into(),
            }),
        }
    }
}

/// Aggregate statistics over one set: member count, componentwise totals,
/// and how many members share each individual triple.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AdtSummary {
    pub members: u64,
    pub totals: AdtTriple,
    pub distribution: BTreeMap<AdtTriple, u64>,
}

impl AdtSummary {
    fn merge(mut self, other: AdtSummary) -> AdtSummary {
        self.members += other.members;
        self.totals += other.totals;
        for (t, c) in other.distribution {
            *self.distribution.entry(t).or_insert(0) += c;
        }
        self
    }
}

/// Exhaustive summary of ascents, descents and ties over `set` at `(n, k)`.
pub fn summarize_adt(n: usize, k: usize, set: PreferenceSet, cfg: &BruteConfig) -> Result<AdtSummary> {
    cfg.check_full(n, "aggregate_adt")?;
    if n == 0 {
        return Err(Error::OutOfRange("statistics need n >= 1".into()));
    }
    Ok(with_jobs(cfg.jobs, || {
        fold_preferences(
            n,
            || (vec![0u32; n], vec![0u32; n + 1]),
            AdtSummary::default,
            |acc, (line, circle), t| {
                if set.contains(t, k, line, circle) {
                    let triple = adt_of(t);
                    acc.members += 1;
                    acc.totals += triple;
                    *acc.distribution.entry(triple).or_insert(0) += 1;
                }
            },
            AdtSummary::merge,
        )
    }))
}

/// Componentwise totals of ascents, descents and ties over `set`.
pub fn aggregate_adt(n: usize, k: usize, set: PreferenceSet, cfg: &BruteConfig) -> Result<AdtTriple> {
    Ok(summarize_adt(n, k, set, cfg)?.totals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(s: &str) -> PreferenceVector {
        s.parse().unwrap()
    }

    fn triple(ascents: u64, descents: u64, ties: u64) -> AdtTriple {
        AdtTriple { ascents, descents, ties }
    }

    #[test]
    fn single_preferences() {
        assert_eq!(adt_stats(&pv("1,3,3,2")), triple(1, 1, 1));
        assert_eq!(adt_stats(&pv("2,2,2,2")), triple(0, 0, 3));
        assert_eq!(adt_stats(&pv("1,2,3,4,5")), triple(4, 0, 0));
        assert_eq!(adt_stats(&pv("1")), triple(0, 0, 0));
    }

    #[test]
    fn aggregate_over_pp1_is_empty() {
        let cfg = BruteConfig::default();
        assert_eq!(aggregate_adt(1, 0, PreferenceSet::All, &cfg).unwrap(), triple(0, 0, 0));
    }

    // PF_3 by hand: the 16 rearrangements of 111, 112, 113, 122, 123.
    #[test]
    fn aggregate_over_pf3() {
        let mut oracle = AdtTriple::default();
        let mut members = 0;
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    let mut s = [a, b, c];
                    s.sort();
                    if s[0] <= 1 && s[1] <= 2 && s[2] <= 3 {
                        members += 1;
                        oracle += adt_of(&[a, b, c]);
                    }
                }
            }
        }
        assert_eq!(members, 16);
        let cfg = BruteConfig::default();
        let summary = summarize_adt(3, 0, PreferenceSet::ParkingFunctions, &cfg).unwrap();
        assert_eq!(summary.members, 16);
        assert_eq!(summary.totals, oracle);
        assert_eq!(summary.totals, triple(12, 12, 8));
        assert_eq!(summary.distribution.values().sum::<u64>(), 16);
    }

    #[test]
    fn set_names_parse() {
        assert_eq!("B".parse::<PreferenceSet>().unwrap(), PreferenceSet::Contained);
        assert_eq!("pf_k".parse::<PreferenceSet>().unwrap(), PreferenceSet::Naples);
        assert!("nope".parse::<PreferenceSet>().is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = BruteConfig { cap: 2, ..BruteConfig::default() };
        assert!(matches!(
            aggregate_adt(3, 0, PreferenceSet::All, &cfg),
            Err(Error::CapExceeded { .. })
        ));
    }
}
