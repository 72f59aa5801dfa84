//! Parking processes: the classical forward rule, the k-lookback (Naples)
//! rule on a line of `n` spots, and the circular variant on `n + 1` spots
//! used to identify contained preferences.
//!
//! Spots and cars are 1-based in every public value. The line simulator
//! rejects preference 0; the circle simulator accepts it, since rotating a
//! preference on the circle can produce spot 0.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A parking preference `(a_1, ..., a_n)` with every `a_i` in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PreferenceVector {
    entries: Vec<usize>,
}

impl PreferenceVector {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyPreference);
        }
        let n = entries.len();
        if let Some((i, &v)) = entries.iter().enumerate().find(|(_, &v)| v == 0 || v > n) {
            return Err(Error::EntryOutOfRange {
                position: i + 1,
                value: v,
                n,
            });
        }
        Ok(Self { entries })
    }

    /// Number of cars, which is also the number of spots.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// The increasing rearrangement `(b_1, ..., b_n)`.
    pub fn sorted_increasing(&self) -> Vec<usize> {
        let mut b = self.entries.clone();
        b.sort_unstable();
        b
    }

    /// The weakly decreasing rearrangement.
    pub fn sorted_decreasing(&self) -> PreferenceVector {
        let mut b = self.entries.clone();
        b.sort_unstable_by(|x, y| y.cmp(x));
        PreferenceVector { entries: b }
    }
}

impl fmt::Display for PreferenceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_separated(f, &self.entries)
    }
}

pub(crate) fn write_comma_separated(f: &mut impl fmt::Write, values: &[usize]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Parses a comma-separated list of non-negative integers, e.g. `"7,7,5,2"`.
pub fn parse_entries(s: &str) -> Result<Vec<usize>> {
    let parse_err = |reason: String| Error::Parse {
        what: "preference vector",
        input: s.to_string(),
        reason,
    };
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    if trimmed.trim().is_empty() {
        return Err(parse_err("no entries".into()));
    }
    trimmed
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .map_err(|_| parse_err(format!("{tok:?} is not a non-negative integer")))
        })
        .collect()
}

impl FromStr for PreferenceVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PreferenceVector::new(parse_entries(s)?)
    }
}

/// Maximum number of backward steps a car may take before heading east.
///
/// Any `k >= n - 1` behaves exactly like `k = n - 1`: from there a car can
/// already reach every spot behind it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LookbackRule(usize);

impl LookbackRule {
    pub const CLASSICAL: LookbackRule = LookbackRule(0);

    pub fn new(k: usize) -> Self {
        LookbackRule(k)
    }

    pub fn k(self) -> usize {
        self.0
    }

    /// The lookback actually usable on a street of `n` spots.
    pub fn effective(self, n: usize) -> usize {
        self.0.min(n.saturating_sub(1))
    }
}

impl From<usize> for LookbackRule {
    fn from(k: usize) -> Self {
        LookbackRule(k)
    }
}

/// Result of running the line process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParkingOutcome {
    /// Every car parked. `assignment[spot - 1]` is the car in that spot.
    Parked { assignment: Vec<usize> },
    /// Car `car` found no spot. `occupancy` is the street at that moment.
    Failed {
        car: usize,
        occupancy: Vec<Option<usize>>,
    },
}

/// Wire form of a [`ParkingOutcome`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutcomeRecord {
    pub ok: bool,
    pub assignment: Vec<Option<usize>>,
    pub failed_car: Option<usize>,
}

impl ParkingOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, ParkingOutcome::Parked { .. })
    }

    pub fn assignment(&self) -> Option<&[usize]> {
        match self {
            ParkingOutcome::Parked { assignment } => Some(assignment),
            ParkingOutcome::Failed { .. } => None,
        }
    }

    pub fn failed_car(&self) -> Option<usize> {
        match self {
            ParkingOutcome::Parked { .. } => None,
            ParkingOutcome::Failed { car, .. } => Some(*car),
        }
    }

    /// Spot taken by each car (1-based), when every car parked.
    pub fn spots_by_car(&self) -> Option<Vec<usize>> {
        let assignment = self.assignment()?;
        let mut spots = vec![0; assignment.len()];
        for (spot, &car) in assignment.iter().enumerate() {
            spots[car - 1] = spot + 1;
        }
        Some(spots)
    }

    pub fn to_record(&self) -> OutcomeRecord {
        match self {
            ParkingOutcome::Parked { assignment } => OutcomeRecord {
                ok: true,
                assignment: assignment.iter().map(|&c| Some(c)).collect(),
                failed_car: None,
            },
            ParkingOutcome::Failed { car, occupancy } => OutcomeRecord {
                ok: false,
                assignment: occupancy.clone(),
                failed_car: Some(*car),
            },
        }
    }
}

/// Line process kernel over raw 1-based entries already known to be in range.
///
/// `occ` must have length `entries.len()`; it is overwritten. On failure the
/// 1-based index of the stuck car is returned.
pub(crate) fn run_line(entries: &[usize], k: usize, occ: &mut [u32]) -> std::result::Result<(), usize> {
    let n = entries.len();
    debug_assert_eq!(occ.len(), n);
    occ.fill(0);
    'cars: for (i, &a) in entries.iter().enumerate() {
        let car = (i + 1) as u32;
        let pref = a - 1;
        if occ[pref] == 0 {
            occ[pref] = car;
            continue;
        }
        // nearest spot first, never past spot 1
        for spot in (pref.saturating_sub(k)..pref).rev() {
            if occ[spot] == 0 {
                occ[spot] = car;
                continue 'cars;
            }
        }
        match occ[pref + 1..n].iter_mut().find(|c| **c == 0) {
            Some(slot) => *slot = car,
            None => return Err(i + 1),
        }
    }
    Ok(())
}

/// Runs cars `c_1, ..., c_n` under the k-lookback rule.
///
/// A car takes its preferred spot when free; otherwise the closest free spot
/// among the `k` spots behind it; otherwise the first free spot east of its
/// preference. The process stops at the first car that cannot park.
pub fn park_k(pref: &PreferenceVector, rule: impl Into<LookbackRule>) -> ParkingOutcome {
    let k = rule.into().effective(pref.len());
    let mut occ = vec![0u32; pref.len()];
    match run_line(pref.entries(), k, &mut occ) {
        Ok(()) => ParkingOutcome::Parked {
            assignment: occ.iter().map(|&c| c as usize).collect(),
        },
        Err(car) => ParkingOutcome::Failed {
            car,
            occupancy: occ
                .iter()
                .map(|&c| if c == 0 { None } else { Some(c as usize) })
                .collect(),
        },
    }
}

/// Membership in `PF_{n,k}`.
pub fn is_k_naples(pref: &PreferenceVector, k: usize) -> bool {
    let mut occ = vec![0u32; pref.len()];
    run_line(pref.entries(), k.min(pref.len() - 1), &mut occ).is_ok()
}

/// Classical membership test: the increasing rearrangement satisfies `b_i <= i`.
pub fn is_parking_function(pref: &PreferenceVector) -> bool {
    sorted_is_parking_function(&pref.sorted_increasing())
}

pub(crate) fn sorted_is_parking_function(sorted: &[usize]) -> bool {
    sorted.iter().enumerate().all(|(i, &b)| b <= i + 1)
}

/// Membership test for weakly decreasing preferences: `a_i <= min(n, n + k + 1 - i)`.
pub fn is_decreasing_k_naples_fast(pref: &PreferenceVector, k: usize) -> Result<bool> {
    if !pref.is_weakly_decreasing() {
        return Err(Error::NotDecreasing(pref.to_string()));
    }
    Ok(decreasing_bound_holds(pref.entries(), k))
}

pub(crate) fn decreasing_bound_holds(entries: &[usize], k: usize) -> bool {
    let n = entries.len();
    entries
        .iter()
        .enumerate()
        .all(|(i, &a)| a <= n.min(n + k - i))
}

/// Result of the circular process on spots `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircleOutcome {
    /// `occupancy[spot]` is the car parked at `spot`, for spots `0..=n`.
    pub occupancy: Vec<Option<usize>>,
    pub empty_spot: usize,
}

pub(crate) fn run_circle(entries: &[usize], k: usize, occ: &mut [u32]) -> usize {
    let m = entries.len() + 1;
    debug_assert_eq!(occ.len(), m);
    occ.fill(0);
    // only n other spots exist, so looking back further revisits them
    let k = k.min(m - 1);
    'cars: for (i, &a) in entries.iter().enumerate() {
        let car = (i + 1) as u32;
        if occ[a] == 0 {
            occ[a] = car;
            continue;
        }
        for d in 1..=k {
            let spot = (a + m - d) % m;
            if occ[spot] == 0 {
                occ[spot] = car;
                continue 'cars;
            }
        }
        let mut spot = a;
        loop {
            spot = (spot + 1) % m;
            if occ[spot] == 0 {
                occ[spot] = car;
                continue 'cars;
            }
        }
    }
    occ.iter().position(|&c| c == 0).expect("n cars on n + 1 spots leave one free")
}

/// Runs the k-lookback process on `n + 1` spots labelled `0..=n` around a
/// circle. Lookback moves counterclockwise (decreasing labels mod `n + 1`),
/// the fallback moves clockwise. Every car parks.
pub fn circle_park(entries: &[usize], k: usize) -> Result<CircleOutcome> {
    if entries.is_empty() {
        return Err(Error::EmptyPreference);
    }
    let n = entries.len();
    if let Some((i, &v)) = entries.iter().enumerate().find(|(_, &v)| v > n) {
        return Err(Error::CircleEntryOutOfRange {
            position: i + 1,
            value: v,
            n,
        });
    }
    let mut occ = vec![0u32; n + 1];
    let empty_spot = run_circle(entries, k, &mut occ);
    Ok(CircleOutcome {
        occupancy: occ
            .iter()
            .map(|&c| if c == 0 { None } else { Some(c as usize) })
            .collect(),
        empty_spot,
    })
}

/// Membership in `B_{n,k}`: the circular process leaves spot 0 empty.
pub fn is_contained(pref: &PreferenceVector, k: usize) -> bool {
    let mut occ = vec![0u32; pref.len() + 1];
    run_circle(pref.entries(), k, &mut occ) == 0
}
