//! Batch experiments that regenerate the count tables and profiles as data.
//!
//! Every experiment produces a [`Dataset`]: a metadata block plus rows of
//! `(n, k, statistic, value, method)`. Output is deterministic for a fixed
//! descriptor; only the generation timestamp varies, and it is left out
//! when `reproducible` is set.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{
    count_brute, count_decreasing_brute, count_decreasing_closed, star_profile_with, BigCount,
    BruteConfig, Counter,
};
use crate::error::{Error, Result};
use crate::lattice::check_one_corner_rearrangements;
use crate::stats::{summarize_adt, AdtSummary, PreferenceSet};

/// How a count is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Recursive,
    Closed,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Recursive => "recursive",
            Method::Closed => "closed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "recursive" => Ok(Method::Recursive),
            "closed" => Ok(Method::Closed),
            _ => Err(Error::Parse {
                what: "method",
                input: s.to_string(),
                reason: "expected brute, recursive or closed".into(),
            }),
        }
    }
}

/// Which experiment to run, with its ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Experiment {
    /// `|PF_{n,k}|` for `1 <= n <= n_max`, `0 <= k <= n - 1`.
    Counts { n_max: usize, method: Method },
    /// Decreasing counts for `k = 1, 2, 3` and `k + 1 <= n <= n_max`, closed form and brute force.
    Decreasing { n_max: usize },
    /// `|PF*_{n,k}|` for `1 <= k <= n`, for each listed `n`.
    StarProfile { ns: Vec<usize> },
    /// Ascent/descent/tie totals over `B_{n,k}` and `PF_n`.
    AdtCompare { n_max: usize },
    /// The one-corner rearrangement check for `1 <= n <= n_max`.
    OneCorner { n_max: usize },
}

impl Experiment {
    pub const NAMES: [&'static str; 5] = ["counts", "decreasing", "star-profile", "adt-compare", "one-corner"];

    /// Builds a descriptor from its name and optional overrides.
    pub fn from_name(name: &str, n_max: Option<usize>, ns: Option<Vec<usize>>, method: Option<Method>) -> Result<Self> {
        Ok(match name {
            "counts" => Experiment::Counts {
                n_max: n_max.unwrap_or(8),
                method: method.unwrap_or(Method::Recursive),
            },
            "decreasing" => Experiment::Decreasing { n_max: n_max.unwrap_or(12) },
            "star-profile" => Experiment::StarProfile {
                ns: ns.or(n_max.map(|n| vec![n])).unwrap_or_else(|| vec![25, 50, 75, 100]),
            },
            "adt-compare" => Experiment::AdtCompare { n_max: n_max.unwrap_or(6) },
            "one-corner" => Experiment::OneCorner { n_max: n_max.unwrap_or(8) },
            other => return Err(Error::UnknownExperiment(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Counts { .. } => "counts",
            Experiment::Decreasing { .. } => "decreasing",
            Experiment::StarProfile { .. } => "star-profile",
            Experiment::AdtCompare { .. } => "adt-compare",
            Experiment::OneCorner { .. } => "one-corner",
        }
    }

    fn parameters(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        match self {
            Experiment::Counts { n_max, method } => {
                p.insert("n_max".into(), n_max.to_string());
                p.insert("method".into(), method.to_string());
            }
            Experiment::Decreasing { n_max } | Experiment::AdtCompare { n_max } | Experiment::OneCorner { n_max } => {
                p.insert("n_max".into(), n_max.to_string());
            }
            Experiment::StarProfile { ns } => {
                let list: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                p.insert("ns".into(), list.join(" "));
            }
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Row {
    pub n: usize,
    pub k: usize,
    pub statistic: String,
    pub value: String,
    pub method: String,
}

impl Row {
    fn new(n: usize, k: usize, statistic: impl Into<String>, value: impl ToString, method: Method) -> Self {
        Row {
            n,
            k,
            statistic: statistic.into(),
            value: value.to_string(),
            method: method.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub experiment: &'static str,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dataset {
    pub metadata: Metadata,
    pub rows: Vec<Row>,
}

impl Dataset {
    /// Rows whose statistic is `statistic`, as `(n, k, value)`.
    pub fn values(&self, statistic: &str) -> Vec<(usize, usize, &str)> {
        self.rows
            .iter()
            .filter(|r| r.statistic == statistic)
            .map(|r| (r.n, r.k, r.value.as_str()))
            .collect()
    }

    /// CSV with `#`-prefixed metadata lines ahead of the header row.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "# tool={} version={}", self.metadata.tool, self.metadata.version)?;
        writeln!(out, "# experiment={}", self.metadata.experiment)?;
        for (k, v) in &self.metadata.parameters {
            writeln!(out, "# {k}={v}")?;
        }
        if let Some(t) = self.metadata.generated_unix {
            writeln!(out, "# generated_unix={t}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// JSON lines: the metadata object first, then one object per row.
    pub fn write_jsonl(&self, mut out: impl Write) -> Result<()> {
        serde_json::to_writer(&mut out, &serde_json::json!({ "metadata": &self.metadata }))?;
        writeln!(out)?;
        for row in &self.rows {
            serde_json::to_writer(&mut out, row)?;
            writeln!(out)?;
        }
        Ok(())
    }
}

fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn counts_rows(n_max: usize, method: Method, cfg: &BruteConfig) -> Result<Vec<Row>> {
    match method {
        Method::Recursive => {
            let mut counter = Counter::new();
            Ok((1..=n_max)
                .flat_map(|n| (0..n).map(move |k| (n, k)))
                .map(|(n, k)| Row::new(n, k, "count", counter.count(n, k), method))
                .collect())
        }
        Method::Brute => {
            cfg.check_full(n_max, "counts")?;
            let cells: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (0..n).map(move |k| (n, k))).collect();
            cells
                .par_iter()
                .map(|&(n, k)| Ok(Row::new(n, k, "count", count_brute(n, k, cfg)?, method)))
                .collect()
        }
        Method::Closed => Err(Error::OutOfRange(
            "counts has no closed form for 1 <= k <= n - 3; use recursive or brute".into(),
        )),
    }
}

fn decreasing_rows(n_max: usize, cfg: &BruteConfig) -> Result<Vec<Row>> {
    let cells: Vec<(usize, usize)> = (1..=3usize)
        .flat_map(|k| (k + 1..=n_max).map(move |n| (n, k)))
        .collect();
    let rows: Result<Vec<Vec<Row>>> = cells
        .par_iter()
        .map(|&(n, k)| {
            let mut rows = vec![Row::new(n, k, "decreasing", count_decreasing_closed(n, k)?, Method::Closed)];
            if n <= cfg.decreasing_cap {
                rows.push(Row::new(n, k, "decreasing", count_decreasing_brute(n, k, cfg)?, Method::Brute));
            }
            Ok(rows)
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

fn star_profile_rows(ns: &[usize]) -> Result<Vec<Row>> {
    if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::OutOfRange(format!("star profile needs n >= 2, got n = {bad}")));
    }
    let per_n: Vec<Vec<Row>> = ns
        .par_iter()
        .map(|&n| {
            let mut counter = Counter::new();
            star_profile_with(&mut counter, n)
                .into_iter()
                .enumerate()
                .map(|(i, v)| Row::new(n, i + 1, "star", v, Method::Recursive))
                .collect()
        })
        .collect();
    Ok(per_n.into_iter().flatten().collect())
}

fn adt_rows(n: usize, k: usize, label: &str, s: &AdtSummary) -> Vec<Row> {
    vec![
        Row::new(n, k, format!("{label}.members"), s.members, Method::Brute),
        Row::new(n, k, format!("{label}.ascents"), s.totals.ascents, Method::Brute),
        Row::new(n, k, format!("{label}.descents"), s.totals.descents, Method::Brute),
        Row::new(n, k, format!("{label}.ties"), s.totals.ties, Method::Brute),
    ]
}

fn adt_compare_rows(n_max: usize, cfg: &BruteConfig) -> Result<Vec<Row>> {
    cfg.check_full(n_max, "adt-compare")?;
    let per_n: Result<Vec<Vec<Row>>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let pf = summarize_adt(n, 0, PreferenceSet::ParkingFunctions, cfg)?;
            let mut rows = Vec::new();
            for k in 0..=n {
                let b = summarize_adt(n, k, PreferenceSet::Contained, cfg)?;
                rows.extend(adt_rows(n, k, "PF", &pf));
                rows.extend(adt_rows(n, k, "B", &b));
                rows.push(Row::new(n, k, "totals_equal", b.totals == pf.totals, Method::Brute));
            }
            Ok(rows)
        })
        .collect();
    Ok(per_n?.into_iter().flatten().collect())
}

fn one_corner_rows(n_max: usize, cfg: &BruteConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let r = check_one_corner_rearrangements(n, cfg)?;
        rows.push(Row::new(n, 1, "candidates", r.candidates, Method::Brute));
        rows.push(Row::new(n, 1, "rearrangements_checked", r.rearrangements_checked, Method::Brute));
        rows.push(Row::new(n, 1, "counterexamples", r.counterexamples.len(), Method::Brute));
    }
    Ok(rows)
}

/// Runs an experiment. Independent cells are computed in parallel and the
/// rows are sorted by `(n, k, statistic, method)` before returning.
pub fn run_experiment(exp: &Experiment, cfg: &BruteConfig, reproducible: bool) -> Result<Dataset> {
    let mut rows = crate::space::with_jobs(cfg.jobs, || match exp {
        Experiment::Counts { n_max, method } => counts_rows(*n_max, *method, cfg),
        Experiment::Decreasing { n_max } => decreasing_rows(*n_max, cfg),
        Experiment::StarProfile { ns } => star_profile_rows(ns),
        Experiment::AdtCompare { n_max } => adt_compare_rows(*n_max, cfg),
        Experiment::OneCorner { n_max } => one_corner_rows(*n_max, cfg),
    })?;
    rows.sort_by(|a, b| (a.n, a.k, &a.statistic, &a.method).cmp(&(b.n, b.k, &b.statistic, &b.method)));
    Ok(Dataset {
        metadata: Metadata {
            tool: "naples",
            version: env!("CARGO_PKG_VERSION"),
            experiment: exp.name(),
            parameters: exp.parameters(),
            generated_unix: (!reproducible).then(now_unix),
        },
        rows,
    })
}

/// Parses a count cell back out of a dataset row.
pub fn parse_count(value: &str) -> Result<BigCount> {
    value.parse()
}
