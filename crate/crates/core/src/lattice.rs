//! Lattice paths from `(0, n)` to `(n, 0)` and their correspondence with
//! weakly decreasing k-Naples parking functions.
//!
//! A decreasing preference `(a_1, ..., a_n)` maps to the path whose `i`-th
//! east step runs from `(i - 1, a_i - 1)` to `(i, a_i - 1)`, with south steps
//! filling in between. The image is exactly the set of k-lattice paths: paths
//! that never rise above `y = n - x + k` and take no east step along the top
//! edge `y = n`.
//!
//! Signature Dyck paths are handled in the decreasing orientation too: the
//! increasing picture (north/east steps from the bottom-left corner) is
//! reflected across a horizontal axis, which turns north steps into south
//! steps and keeps their order. Level 1 of a ribbon is then the top row.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::BruteConfig;
use crate::error::{Error, Result};
use crate::parking::{decreasing_bound_holds, run_line, PreferenceVector};
use crate::space::{for_each_decreasing, for_each_rearrangement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    East,
    South,
}

impl Step {
    pub fn symbol(self) -> char {
        match self {
            Step::East => 'E',
            Step::South => 'S',
        }
    }
}

fn parse_steps(s: &str, what: &'static str, south: char) -> Result<Vec<Step>> {
    s.trim()
        .chars()
        .map(|c| match c.to_ascii_uppercase() {
            'E' => Ok(Step::East),
            c if c == south => Ok(Step::South),
            other => Err(Error::Parse {
                what,
                input: s.to_string(),
                reason: format!("unexpected step {other:?}, expected E or {south}"),
            }),
        })
        .collect()
}

fn format_steps(steps: &[Step]) -> String {
    steps.iter().map(|s| s.symbol()).collect()
}

/// Reflects an increasing path given as `N`/`E` symbols into the decreasing
/// orientation used here (north becomes south, order unchanged).
pub fn reflect_increasing(s: &str) -> Result<Vec<Step>> {
    parse_steps(s, "increasing lattice path", 'N')
}

/// A path of `n` east and `n` south steps starting at `(0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let east = steps.iter().filter(|&&s| s == Step::East).count();
        if 2 * east != steps.len() {
            return Err(Error::DimensionMismatch(format!(
                "path has {east} east and {} south steps; they must be equal",
                steps.len() - east
            )));
        }
        Ok(LatticePath { steps })
    }

    /// Builds the path whose east steps sit at the given heights, which must
    /// be weakly decreasing and at most `n`.
    pub fn from_east_heights(n: usize, heights: &[usize]) -> Result<Self> {
        if heights.len() != n || heights.iter().any(|&h| h > n) || heights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::DimensionMismatch(format!(
                "east-step heights {heights:?} do not describe a path of half-length {n}"
            )));
        }
        let mut steps = Vec::with_capacity(2 * n);
        let mut y = n;
        for &h in heights {
            steps.extend(std::iter::repeat_n(Step::South, y - h));
            steps.push(Step::East);
            y = h;
        }
        steps.extend(std::iter::repeat_n(Step::South, y));
        Ok(LatticePath { steps })
    }

    pub fn n(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Height of each east step, in order.
    pub fn east_heights(&self) -> Vec<usize> {
        let mut y = self.n();
        let mut heights = Vec::with_capacity(y);
        for &s in &self.steps {
            match s {
                Step::South => y -= 1,
                Step::East => heights.push(y),
            }
        }
        heights
    }

    /// Every lattice point visited, starting with `(0, n)`.
    pub fn vertices(&self) -> Vec<(usize, usize)> {
        let (mut x, mut y) = (0, self.n());
        let mut pts = Vec::with_capacity(self.steps.len() + 1);
        pts.push((x, y));
        for &s in &self.steps {
            match s {
                Step::East => x += 1,
                Step::South => y -= 1,
            }
            pts.push((x, y));
        }
        pts
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_steps(&self.steps))
    }
}

impl FromStr for LatticePath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LatticePath::new(parse_steps(s, "lattice path", 'S')?)
    }
}

impl Serialize for LatticePath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// True when no visited point rises above the line `y = n - x + k`.
pub fn stays_below_line(path: &LatticePath, k: usize) -> bool {
    let n = path.n();
    path.vertices().into_iter().all(|(x, y)| x + y <= n + k)
}

/// Membership in `LP_{n,k}`: below `y = n - x + k` and no east step along `y = n`.
///
/// Equivalently the `i`-th east step sits at height `a_i - 1` with
/// `a_i <= min(n, n + k + 1 - i)`.
pub fn is_k_lattice_path(path: &LatticePath, k: usize) -> bool {
    let n = path.n();
    stays_below_line(path, k) && path.east_heights().iter().all(|&h| h < n)
}

/// The lattice path of a weakly decreasing k-Naples parking function.
pub fn path_from_decreasing(pref: &PreferenceVector, k: usize) -> Result<LatticePath> {
    if !pref.is_weakly_decreasing() {
        return Err(Error::NotDecreasing(pref.to_string()));
    }
    if !decreasing_bound_holds(pref.entries(), k) {
        return Err(Error::NotMember(format!("{pref} is not {k}-Naples")));
    }
    let heights: Vec<usize> = pref.entries().iter().map(|&a| a - 1).collect();
    LatticePath::from_east_heights(pref.len(), &heights)
}

/// Reads `a_i = (height of the i-th east step) + 1` off a k-lattice path.
pub fn decreasing_from_path(path: &LatticePath, k: usize) -> Result<PreferenceVector> {
    if !is_k_lattice_path(path, k) {
        return Err(Error::NotMember(format!("{path} is not a {k}-lattice path")));
    }
    PreferenceVector::new(path.east_heights().into_iter().map(|h| h + 1).collect())
}

/// All `C(2n, n)` paths of half-length `n`, in lexicographic order of the
/// east-step positions.
pub fn all_paths(n: usize) -> impl Iterator<Item = LatticePath> {
    (0..2 * n).combinations(n).map(move |east| {
        let mut steps = vec![Step::South; 2 * n];
        for i in east {
            steps[i] = Step::East;
        }
        LatticePath { steps }
    })
}

/// Number of k-lattice paths of half-length `n`, by enumerating all paths.
pub fn count_k_lattice_paths(n: usize, k: usize) -> u64 {
    all_paths(n).filter(|p| is_k_lattice_path(p, k)).count() as u64
}

/// A signature `(s_1, ..., s_l)` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() || entries.contains(&0) {
            return Err(Error::OutOfRange(format!(
                "signature entries must be positive and non-empty, got {entries:?}"
            )));
        }
        Ok(Signature(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parking::write_comma_separated(f, &self.0)
    }
}

impl FromStr for Signature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Signature::new(crate::parking::parse_entries(s)?)
    }
}

/// `s = (k + 1, 2^(n - k), 1^k)`, for `1 <= k <= n - 1`.
pub fn signature_for(n: usize, k: usize) -> Result<Signature> {
    if k < 1 || k + 1 > n {
        return Err(Error::OutOfRange(format!(
            "signature needs 1 <= k <= n - 1, got n = {n}, k = {k}"
        )));
    }
    let mut s = Vec::with_capacity(n + 1);
    s.push(k + 1);
    s.extend(std::iter::repeat_n(2, n - k));
    s.extend(std::iter::repeat_n(1, k));
    Signature::new(s)
}

/// Shaded boxes of a signature's ribbon: one inclusive 1-based column range per level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ribbon {
    pub levels: usize,
    pub columns: usize,
    pub shaded: Vec<[usize; 2]>,
}

/// Level `i` shades boxes `Σ_{j<i}(s_j - 1) + 1` through `Σ_{j<=i}(s_j - 1) + 1`;
/// the grid is `l` levels by `Σ(s_j - 1) + 1` columns.
pub fn ribbon_cells(s: &Signature) -> Ribbon {
    let mut shaded = Vec::with_capacity(s.len());
    let mut offset = 0;
    for &si in s.entries() {
        let lo = offset + 1;
        offset += si - 1;
        shaded.push([lo, offset + 1]);
    }
    Ribbon {
        levels: s.len(),
        columns: offset + 1,
        shaded,
    }
}

/// Whether a path (decreasing orientation, from `(0, l)` to `(W, 0)`) lies
/// on or above the ribbon of `s`: the south step through level `i` must sit
/// weakly left of that level's first shaded box.
pub fn is_s_dyck(steps: &[Step], s: &Signature) -> Result<bool> {
    let ribbon = ribbon_cells(s);
    let south = steps.iter().filter(|&&st| st == Step::South).count();
    let east = steps.len() - south;
    if south != ribbon.levels || east != ribbon.columns {
        return Err(Error::DimensionMismatch(format!(
            "path has {east} east and {south} south steps; ribbon is {} columns by {} levels",
            ribbon.columns, ribbon.levels
        )));
    }
    let mut x = 0;
    let mut level = 0;
    for &st in steps {
        match st {
            Step::East => x += 1,
            Step::South => {
                if x + 1 > ribbon.shaded[level][0] {
                    return Ok(false);
                }
                level += 1;
            }
        }
    }
    Ok(true)
}

/// Embeds a half-length-`n` path in the `(n + 1) x (n + 1)` signature frame
/// by adding the forced leading south step and trailing east step.
pub fn lift_to_signature_frame(path: &LatticePath) -> Vec<Step> {
    let mut steps = Vec::with_capacity(path.steps.len() + 2);
    steps.push(Step::South);
    steps.extend_from_slice(&path.steps);
    steps.push(Step::East);
    steps
}

/// Inverse of [`lift_to_signature_frame`]; `None` when the forced steps are missing.
pub fn trim_signature_frame(steps: &[Step]) -> Option<LatticePath> {
    match steps {
        [Step::South, inner @ .., Step::East] => LatticePath::new(inner.to_vec()).ok(),
        _ => None,
    }
}

/// East-then-south turning points at lattice points strictly above `y = n - x`.
pub fn corners_above_diagonal(path: &LatticePath) -> usize {
    let n = path.n();
    let pts = path.vertices();
    path.steps
        .windows(2)
        .enumerate()
        .filter(|(i, w)| {
            let (x, y) = pts[i + 1];
            w[0] == Step::East && w[1] == Step::South && x + y > n
        })
        .count()
}

/// How "corner" is read by [`check_one_corner_rearrangements`].
pub const CORNER_INTERPRETATION: &str = "a corner is an east step immediately followed by a south step, \
counted when the turning point lies strictly above y = n - x on the lattice path of the weakly \
decreasing rearrangement";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RearrangementCounterexample {
    pub decreasing: PreferenceVector,
    pub rearrangement: PreferenceVector,
}

/// Outcome of testing every rearrangement of the one-corner decreasing
/// Naples parking functions of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RearrangementReport {
    pub n: usize,
    pub interpretation: &'static str,
    /// Decreasing 1-Naples parking functions with exactly one corner above the diagonal.
    pub candidates: usize,
    pub rearrangements_checked: u64,
    pub counterexamples: Vec<RearrangementCounterexample>,
}

impl RearrangementReport {
    pub fn confirmed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// For every weakly decreasing 1-Naples parking function of length `n`
/// whose path has exactly one corner above `y = n - x`, checks that every
/// distinct rearrangement is still 1-Naples.
pub fn check_one_corner_rearrangements(n: usize, cfg: &BruteConfig) -> Result<RearrangementReport> {
    if n == 0 {
        return Err(Error::OutOfRange("rearrangement check needs n >= 1".into()));
    }
    if n > cfg.rearrangement_cap {
        return Err(Error::CapExceeded {
            what: "rearrangement check",
            n,
            cap: cfg.rearrangement_cap,
        });
    }
    let mut candidates = Vec::new();
    for_each_decreasing(n, n, |t| {
        let mut occ = vec![0u32; n];
        if run_line(t, 1, &mut occ).is_ok() {
            let heights: Vec<usize> = t.iter().map(|&a| a - 1).collect();
            let path = LatticePath::from_east_heights(n, &heights).expect("decreasing heights");
            if corners_above_diagonal(&path) == 1 {
                candidates.push(t.to_vec());
            }
        }
    });
    let results: Vec<(u64, Vec<RearrangementCounterexample>)> = crate::space::with_jobs(cfg.jobs, || {
        candidates
            .par_iter()
            .map(|dec| {
                let mut checked = 0u64;
                let mut bad = Vec::new();
                let mut occ = vec![0u32; n];
                for_each_rearrangement(dec, |r| {
                    checked += 1;
                    if run_line(r, 1, &mut occ).is_err() {
                        bad.push(RearrangementCounterexample {
                            decreasing: PreferenceVector::new(dec.clone()).expect("valid"),
                            rearrangement: PreferenceVector::new(r.to_vec()).expect("valid"),
                        });
                    }
                });
                (checked, bad)
            })
            .collect()
    });
    let rearrangements_checked = results.iter().map(|(c, _)| c).sum();
    let counterexamples = results.into_iter().flat_map(|(_, b)| b).collect();
    Ok(RearrangementReport {
        n,
        interpretation: CORNER_INTERPRETATION,
        candidates: candidates.len(),
        rearrangements_checked,
        counterexamples,
    })
}

/// Distinct rearrangements of `pref` that fail the k-lookback rule.
pub fn failing_rearrangements(pref: &PreferenceVector, k: usize) -> Vec<PreferenceVector> {
    let mut occ = vec![0u32; pref.len()];
    let mut out = Vec::new();
    for_each_rearrangement(pref.entries(), |r| {
        if run_line(r, k, &mut occ).is_err() {
            out.push(PreferenceVector::new(r.to_vec()).expect("rearrangement of a valid preference"));
        }
    });
    out
}
