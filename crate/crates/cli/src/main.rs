use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use naples_core::counting::{count_decreasing_brute, count_decreasing_closed, DiskCache};
use naples_core::lattice::{decreasing_from_path, path_from_decreasing};
use naples_core::stats::{summarize_adt, PreferenceSet};
use naples_core::{
    adt_stats, circle_park, count_brute, count_pf_closed, count_second_closed, count_top_closed, psi,
    psi_inverse, ribbon_cells, run_experiment, signature_for, star_profile, tau_transform, BigCount,
    BruteConfig, Counter, Error, Experiment, LatticePath, Method, PreferenceVector, Result,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "naples", version, about = "Exact tools for k-Naples parking functions")]
struct Cli {
    /// Print one JSON object per result instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BruteArgs {
    /// Largest n for full brute-force scans.
    #[arg(long, default_value_t = 8)]
    cap: usize,
    /// Largest n for scans of decreasing preferences.
    #[arg(long, default_value_t = 14)]
    decreasing_cap: usize,
    /// Worker threads for exhaustive scans (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

impl BruteArgs {
    fn config(self) -> BruteConfig {
        BruteConfig {
            cap: self.cap,
            decreasing_cap: self.decreasing_cap,
            rearrangement_cap: self.cap,
            jobs: self.jobs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMethod {
    Brute,
    Recursive,
    Closed,
}

impl From<CliMethod> for Method {
    fn from(m: CliMethod) -> Method {
        match m {
            CliMethod::Brute => Method::Brute,
            CliMethod::Recursive => Method::Recursive,
            CliMethod::Closed => Method::Closed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Subcommand)]
enum PathCommand {
    /// Weakly decreasing k-Naples preference to its lattice path.
    Encode {
        pref: String,
        #[arg(long)]
        k: usize,
    },
    /// Lattice path (E/S string) back to its preference.
    Decode {
        path: String,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum Command {
    /// Park the cars under lookback k and report the outcome.
    Verify {
        pref: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Count k-Naples parking functions of length n.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "recursive")]
        method: CliMethod,
        /// Count only weakly decreasing preferences.
        #[arg(long)]
        decreasing: bool,
        #[command(flatten)]
        brute: BruteArgs,
    },
    /// Preferences needing lookback exactly k, for k = 1..=n.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the circular process on spots 0..=n.
    Contained {
        pref: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Apply the T map and show which positions were decremented.
    Tau { pref: String },
    /// Map a parking function of length n - 1 into lookback exactly n - 1.
    Psi { pref: String },
    /// Inverse of psi.
    PsiInv { pref: String },
    /// Lattice-path encoding of decreasing preferences.
    Path {
        #[command(subcommand)]
        action: PathCommand,
    },
    /// Signature and ribbon for half-length n and lookback k.
    Signature {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Ascents, descents and ties of one preference, or totals over a set.
    Stats {
        pref: Option<String>,
        /// Aggregate over a set instead: PF, B, PF_k or PP.
        #[arg(long, requires = "n")]
        set: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[command(flatten)]
        brute: BruteArgs,
    },
    /// Regenerate a data set: counts, decreasing, star-profile, adt-compare, one-corner.
    Experiment {
        name: String,
        #[arg(long)]
        n_max: Option<usize>,
        /// Comma-separated list of n (star-profile).
        #[arg(long, value_delimiter = ',')]
        ns: Option<Vec<usize>>,
        #[arg(long, value_enum)]
        method: Option<CliMethod>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit the generation timestamp.
        #[arg(long)]
        reproducible: bool,
        #[command(flatten)]
        brute: BruteArgs,
    },
}

struct Out {
    json: bool,
    lines: Vec<String>,
    object: serde_json::Value,
}

impl Out {
    fn new(json: bool) -> Self {
        Out { json, lines: Vec::new(), object: serde_json::Value::Null }
    }

    fn text(mut self, line: impl Into<String>) -> Self {
        self.lines.push(line.into());
        self
    }

    fn json(mut self, v: serde_json::Value) -> Self {
        self.object = v;
        self
    }

    fn emit(self) -> io::Result<()> {
        let mut stdout = io::stdout().lock();
        if self.json {
            writeln!(stdout, "{}", self.object)
        } else {
            for l in self.lines {
                writeln!(stdout, "{l}")?;
            }
            Ok(())
        }
    }
}

fn pref(s: &str) -> Result<PreferenceVector> {
    s.parse()
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn slot(c: Option<usize>) -> String {
    c.map_or("_".into(), |c| c.to_string())
}

fn recursive_count(n: usize, k: usize) -> Result<BigCount> {
    let Ok(dir) = std::env::var("NAPLES_CACHE_DIR") else {
        return Ok(Counter::new().count(n, k));
    };
    std::fs::create_dir_all(&dir)?;
    let mut cache = DiskCache::open(&dir)?;
    if let Some(v) = cache.get(n, k) {
        return Ok(v.clone());
    }
    let mut counter = Counter::new();
    counter.insert_table(cache.table(k));
    let value = counter.count(n, k);
    cache.absorb(&counter);
    cache.save()?;
    Ok(value)
}

fn closed_count(n: usize, k: usize) -> Result<BigCount> {
    if k == 0 {
        Ok(count_pf_closed(n))
    } else if n == 0 || k + 1 >= n {
        Ok(count_top_closed(n))
    } else if k + 2 == n {
        count_second_closed(n)
    } else {
        Err(Error::OutOfRange(format!(
            "no closed form for n = {n}, k = {k}; closed forms cover k = 0, n - 2 and k >= n - 1"
        )))
    }
}

fn count(n: usize, k: usize, method: Method, decreasing: bool, cfg: &BruteConfig) -> Result<BigCount> {
    match (decreasing, method) {
        (false, Method::Recursive) => recursive_count(n, k),
        (false, Method::Brute) => count_brute(n, k, cfg),
        (false, Method::Closed) => closed_count(n, k),
        (true, Method::Brute) => count_decreasing_brute(n, k, cfg),
        (true, Method::Closed) => count_decreasing_closed(n, k),
        (true, Method::Recursive) => Err(Error::OutOfRange(
            "decreasing counts have no recursive method; use --method brute or closed".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<()> {
    let out = Out::new(cli.json);
    let out = match cli.command {
        Command::Verify { pref: p, k } => {
            let v = pref(&p)?;
            let outcome = naples_core::park_k(&v, k);
            let record = outcome.to_record();
            let mut o = match outcome.failed_car() {
                None => out.text("ok"),
                Some(car) => out.text(format!("fail: car {car} finds no spot")),
            };
            if let Some(spots) = outcome.spots_by_car() {
                o = o.text(format!("spots by car: {}", joined(&spots)));
            }
            o.text(format!("street: {}", record.assignment.iter().map(|&c| slot(c)).collect::<Vec<_>>().join(",")))
                .json(json!({
                    "pref": v, "k": k, "ok": record.ok, "assignment": record.assignment,
                    "failed_car": record.failed_car, "spots_by_car": outcome.spots_by_car(),
                }))
        }
        Command::Count { n, k, method, decreasing, brute } => {
            let method = Method::from(method);
            let c = count(n, k, method, decreasing, &brute.config())?;
            out.text(c.to_string())
                .json(json!({ "n": n, "k": k, "method": method, "decreasing": decreasing, "count": c }))
        }
        Command::Star { n, k } => {
            let profile = star_profile(n)?;
            let cells: Vec<(usize, BigCount)> = match k {
                Some(k) if (1..=n).contains(&k) => vec![(k, profile[k - 1].clone())],
                Some(k) => return Err(Error::OutOfRange(format!("--k must lie in 1..={n}, got {k}"))),
                None => profile.into_iter().enumerate().map(|(i, c)| (i + 1, c)).collect(),
            };
            let mut o = out.json(json!({
                "n": n,
                "profile": cells.iter().map(|(k, c)| json!({ "k": k, "count": c })).collect::<Vec<_>>(),
            }));
            for (k, c) in cells {
                o = o.text(format!("{k} {c}"));
            }
            o
        }
        Command::Contained { pref: p, k } => {
            let v = pref(&p)?;
            let c = circle_park(v.entries(), k)?;
            let verdict = if c.empty_spot == 0 {
                "contained".to_string()
            } else {
                format!("not contained: spot {} left empty", c.empty_spot)
            };
            out.text(verdict)
                .text(format!("circle: {}", c.occupancy.iter().map(|&s| slot(s)).collect::<Vec<_>>().join(",")))
                .json(json!({ "pref": v, "k": k, "contained": c.empty_spot == 0, "circle": c }))
        }
        Command::Tau { pref: p } => {
            let t = tau_transform(&pref(&p)?);
            out.text(t.output.to_string())
                .text(format!("decremented positions: {}", joined(&t.decremented)))
                .json(serde_json::to_value(&t)?)
        }
        Command::Psi { pref: p } => {
            let image = psi(&pref(&p)?)?;
            out.text(image.to_string()).json(json!({ "input": p, "output": image }))
        }
        Command::PsiInv { pref: p } => {
            let image = psi_inverse(&pref(&p)?)?;
            out.text(image.to_string()).json(json!({ "input": p, "output": image }))
        }
        Command::Path { action: PathCommand::Encode { pref: p, k } } => {
            let path = path_from_decreasing(&pref(&p)?, k)?;
            out.text(path.to_string()).json(json!({ "pref": p, "k": k, "path": path }))
        }
        Command::Path { action: PathCommand::Decode { path, k } } => {
            let parsed: LatticePath = path.parse()?;
            let v = decreasing_from_path(&parsed, k)?;
            out.text(v.to_string()).json(json!({ "path": parsed, "k": k, "pref": v }))
        }
        Command::Signature { n, k } => {
            let s = signature_for(n, k)?;
            let ribbon = ribbon_cells(&s);
            let mut o = out
                .text(format!("signature: {s}"))
                .text(format!("ribbon: {} levels x {} columns", ribbon.levels, ribbon.columns));
            for (i, [lo, hi]) in ribbon.shaded.iter().enumerate() {
                o = o.text(format!("level {}: columns {lo}..={hi}", i + 1));
            }
            o.json(json!({ "n": n, "k": k, "signature": s, "ribbon": ribbon }))
        }
        Command::Stats { pref: p, set, n, k, brute } => match (p, set) {
            (Some(p), None) => {
                let t = adt_stats(&pref(&p)?);
                out.text(format!("ascents {} descents {} ties {}", t.ascents, t.descents, t.ties))
                    .json(json!({ "pref": p, "ascents": t.ascents, "descents": t.descents, "ties": t.ties }))
            }
            (None, Some(set)) => {
                let set: PreferenceSet = set.parse()?;
                let n = n.expect("clap requires --n with --set");
                let s = summarize_adt(n, k, set, &brute.config())?;
                let t = s.totals;
                out.text(format!(
                    "{set} n={n} k={k}: members {} ascents {} descents {} ties {}",
                    s.members, t.ascents, t.descents, t.ties
                ))
                .json(json!({
                    "set": set.label(), "n": n, "k": k, "members": s.members,
                    "ascents": t.ascents, "descents": t.descents, "ties": t.ties,
                }))
            }
            _ => {
                return Err(Error::OutOfRange(
                    "give either a preference or --set with --n, not both".into(),
                ))
            }
        },
        Command::Experiment { name, n_max, ns, method, format, out: path, reproducible, brute } => {
            let exp = Experiment::from_name(&name, n_max, ns, method.map(Method::from))?;
            let data = run_experiment(&exp, &brute.config(), reproducible)?;
            let sink: Box<dyn Write> = match &path {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            match format {
                Format::Csv => data.write_csv(sink)?,
                Format::Jsonl => data.write_jsonl(sink)?,
            }
            return Ok(());
        }
    };
    out.emit()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{first} (see --help)");
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_domain() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
