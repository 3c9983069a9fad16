//! Command dispatch, run reports and the scaling harness behind the `cvc`
//! binary.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cvc_core::approx::approx_cvc;
use cvc_core::graph::{connected_components, is_connected};
use cvc_core::io::gen_random;
use cvc_core::oracle::{
    brute_force, check_component_bound, check_phi_prime_injectivity, enumerate_connected_graphs,
};
use cvc_core::solver::{count_cvc_with, find_cvc_with, solve_wcvc_with};
use cvc_core::{Error, Graph, GraphFile, SolveOptions, SolveStats, VertexSet, DEFAULT_CELL_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cvc", version, about = "Exact connected vertex cover solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Cap on Steiner DP table cells.
    #[arg(long, global = true, env = "CVC_LIMIT_CELLS")]
    pub limit_cells: Option<usize>,

    /// Enumerate compression guesses on all cores.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Graph file.
    #[arg(long)]
    pub input: PathBuf,

    /// Cardinality budget.
    #[arg(short)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Decide,
    Weighted,
    Count,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a connected vertex cover of size at most k.
    Decide(SolveArgs),
    /// Minimum-weight connected vertex cover of size at most k.
    Weighted(SolveArgs),
    /// Count connected vertex covers of size at most k.
    Count(SolveArgs),
    /// 2-approximate connected vertex cover.
    Approx {
        #[arg(long)]
        input: PathBuf,
    },
    /// Brute-force reference answer.
    Oracle {
        #[arg(long, value_enum)]
        mode: OracleMode,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Check the component bound on every connected graph up to n vertices.
    VerifyBound {
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Check injectivity of the component encoding up to n vertices.
    PhiCheck {
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Write a seeded G(n, p) graph file to stdout.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the decision solver over a range of budgets.
    Bench {
        #[arg(long, default_value_t = 60)]
        n: usize,
        #[arg(long, default_value_t = 0.05)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        k_min: usize,
        #[arg(long, default_value_t = 18)]
        k_max: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Found,
    Infeasible,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Found => EXIT_OK,
            Status::Infeasible => EXIT_INFEASIBLE,
            Status::Error => EXIT_ERROR,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LedgerReport {
    pub enumerated: u64,
    pub valid_splits: u64,
    pub steiner_weight_sum: u64,
    /// Sum of `3 * 2^(|Z|-1)` over the compression calls.
    pub bound: u64,
    pub compressions: usize,
    pub within_bound: bool,
}

impl From<&SolveStats> for LedgerReport {
    fn from(s: &SolveStats) -> Self {
        LedgerReport {
            enumerated: s.enumerated(),
            valid_splits: s.compressions.iter().map(|l| l.valid_splits).sum(),
            steiner_weight_sum: s.steiner_weight_sum(),
            bound: s.compressions.iter().map(|l| l.bound()).sum(),
            compressions: s.compressions.len(),
            within_bound: s.all_within_bound(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checked: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ledger: Option<LedgerReport>,
}

impl RunReport {
    fn new(command: &str, status: Status) -> Self {
        RunReport {
            command: command.to_string(),
            status,
            size: None,
            weight: None,
            vertices: None,
            count: None,
            checked: None,
            violations: None,
            error: None,
            elapsed_ms: 0.0,
            ledger: None,
        }
    }

    fn with_set(mut self, s: &VertexSet) -> Self {
        self.size = Some(s.len());
        self.vertices = Some(s.to_one_based());
        self
    }

    pub fn error(command: &str, e: &Error) -> Self {
        let mut r = RunReport::new(command, Status::Error);
        r.error = Some(e.to_string());
        r
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("{} {:?}", self.command, self.status).to_uppercase()];
        if let Some(s) = self.size {
            lines.push(format!("size {s}"));
        }
        if let Some(w) = self.weight {
            lines.push(format!("weight {w}"));
        }
        if let Some(v) = &self.vertices {
            let v: Vec<String> = v.iter().map(ToString::to_string).collect();
            lines.push(format!("vertices {}", v.join(" ")));
        }
        if let Some(c) = &self.count {
            lines.push(format!("count {c}"));
        }
        if let (Some(c), Some(v)) = (self.checked, self.violations) {
            lines.push(format!("checked {c} violations {v}"));
        }
        if let Some(e) = &self.error {
            lines.push(format!("error {e}"));
        }
        if let Some(l) = &self.ledger {
            lines.push(format!(
                "ledger enumerated={} valid_splits={} steiner_weight_sum={} bound={} compressions={}",
                l.enumerated, l.valid_splits, l.steiner_weight_sum, l.bound, l.compressions
            ));
        }
        lines.push(format!("elapsed_ms {:.3}", self.elapsed_ms));
        lines.join("\n")
    }
}

fn load(path: &Path) -> cvc_core::Result<(Graph, Vec<f64>)> {
    GraphFile::parse_path(path)?.to_graph_and_weights()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Decide(_) => "decide",
        Command::Weighted(_) => "weighted",
        Command::Count(_) => "count",
        Command::Approx { .. } => "approx",
        Command::Oracle { .. } => "oracle",
        Command::VerifyBound { .. } => "verify-bound",
        Command::PhiCheck { .. } => "phi-check",
        Command::Gen { .. } => "gen",
        Command::Bench { .. } => "bench",
    }
}

impl Cli {
    pub fn options(&self) -> SolveOptions {
        SolveOptions {
            parallel: self.parallel,
            cell_limit: self.limit_cells.unwrap_or(DEFAULT_CELL_LIMIT),
        }
    }
}

/// Runs a report-producing command. `gen` and `bench` have their own
/// entry points.
pub fn run(cli: &Cli) -> RunReport {
    let name = command_name(&cli.command);
    let start = Instant::now();
    let mut report = dispatch(cli).unwrap_or_else(|e| RunReport::error(name, &e));
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

fn dispatch(cli: &Cli) -> cvc_core::Result<RunReport> {
    let opts = cli.options();
    let name = command_name(&cli.command);
    let found_or = |ok: bool| {
        if ok {
            Status::Found
        } else {
            Status::Infeasible
        }
    };
    match &cli.command {
        Command::Decide(a) => {
            let (g, _) = load(&a.input)?;
            let (found, stats) = find_cvc_with(&g, a.k, &opts)?;
            let mut r = match found {
                Some(s) => RunReport::new(name, Status::Found).with_set(&s),
                None => RunReport::new(name, Status::Infeasible),
            };
            r.ledger = Some((&stats).into());
            Ok(r)
        }
        Command::Weighted(a) => {
            let (g, w) = load(&a.input)?;
            let (found, stats) = solve_wcvc_with(&g, &w, a.k, &opts)?;
            let mut r = match found {
                Some(s) => {
                    let mut r = RunReport::new(name, Status::Found).with_set(&s.vertices);
                    r.weight = Some(s.weight);
                    r
                }
                None => RunReport::new(name, Status::Infeasible),
            };
            r.ledger = Some((&stats).into());
            Ok(r)
        }
        Command::Count(a) => {
            let (g, _) = load(&a.input)?;
            let (count, stats) = count_cvc_with(&g, a.k, &opts)?;
            let mut r = RunReport::new(name, found_or(count > 0u32.into()));
            r.count = Some(count.to_string());
            r.ledger = Some((&stats).into());
            Ok(r)
        }
        Command::Approx { input } => {
            let (g, _) = load(input)?;
            if !is_connected(&g) {
                return Err(Error::Disconnected);
            }
            Ok(RunReport::new(name, Status::Found).with_set(&approx_cvc(&g)?))
        }
        Command::Oracle { mode, solve } => {
            let (g, w) = load(&solve.input)?;
            let weights = (*mode == OracleMode::Weighted).then_some(&w[..]);
            let bf = brute_force(&g, weights, solve.k)?;
            let mut r = RunReport::new(name, found_or(bf.min_size.is_some()));
            match mode {
                OracleMode::Decide => r.size = bf.min_size,
                OracleMode::Weighted => {
                    r.size = bf.min_size;
                    r.weight = bf.min_weight;
                }
                OracleMode::Count => r.count = Some(bf.count.to_string()),
            }
            Ok(r)
        }
        Command::VerifyBound { n } => {
            let (mut checked, mut violations) = (0, 0);
            for size in 1..=*n {
                for g in enumerate_connected_graphs(size)? {
                    checked += 1;
                    if !check_component_bound(&g)?.holds {
                        violations += 1;
                    }
                }
            }
            let mut r = RunReport::new(name, found_or(violations == 0));
            r.checked = Some(checked);
            r.violations = Some(violations);
            Ok(r)
        }
        Command::PhiCheck { n } => {
            let (mut checked, mut violations) = (0, 0);
            for size in 1..=*n {
                for g in enumerate_connected_graphs(size)? {
                    checked += 1;
                    violations += check_phi_prime_injectivity(&g)?.collisions();
                }
            }
            let mut r = RunReport::new(name, found_or(violations == 0));
            r.checked = Some(checked);
            r.violations = Some(violations);
            Ok(r)
        }
        Command::Gen { .. } | Command::Bench { .. } => Err(Error::InvalidInput(format!(
            "{name} does not produce a run report"
        ))),
    }
}

/// One budget of a scaling run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub k: usize,
    pub status: Status,
    pub median_ms: f64,
    pub enumerated: u64,
    pub steiner_weight_sum: u64,
    pub compressions: usize,
    pub max_z: usize,
    pub approx_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// The largest connected component of a seeded `G(n, p)` graph.
pub fn scaling_instance(n: usize, p: f64, seed: u64) -> cvc_core::Result<Graph> {
    let g = gen_random(n, p, seed)?.to_graph()?;
    let Some(biggest) = connected_components(&g).into_iter().max_by_key(|c| c.len()) else {
        return Ok(g);
    };
    Ok(g.induced_subgraph(&biggest).0)
}

/// Times `find_cvc` for each budget; errors are recorded per row.
pub fn bench(
    g: &Graph,
    ks: impl IntoIterator<Item = usize>,
    reps: usize,
    opts: &SolveOptions,
) -> Vec<BenchRow> {
    ks.into_iter()
        .map(|k| {
            let mut times = Vec::new();
            let mut last: cvc_core::Result<(Option<VertexSet>, SolveStats)> =
                Ok((None, SolveStats::default()));
            for _ in 0..reps.max(1) {
                let start = Instant::now();
                last = find_cvc_with(g, k, opts);
                times.push(start.elapsed().as_secs_f64() * 1e3);
                if last.is_err() {
                    break;
                }
            }
            times.sort_by(f64::total_cmp);
            let median_ms = times[times.len() / 2];
            match last {
                Ok((found, stats)) => BenchRow {
                    k,
                    status: if found.is_some() {
                        Status::Found
                    } else {
                        Status::Infeasible
                    },
                    median_ms,
                    enumerated: stats.enumerated(),
                    steiner_weight_sum: stats.steiner_weight_sum(),
                    compressions: stats.compressions.len(),
                    max_z: stats.max_z(),
                    approx_size: stats.approx_size,
                    error: None,
                },
                Err(e) => BenchRow {
                    k,
                    status: Status::Error,
                    median_ms,
                    enumerated: 0,
                    steiner_weight_sum: 0,
                    compressions: 0,
                    max_z: 0,
                    approx_size: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

pub fn bench_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:>4} {:>10} {:>12} {:>12} {:>12} {:>6} {:>6}\n",
        "k", "status", "median_ms", "enumerated", "steiner_sum", "comps", "max_z"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>4} {:>10} {:>12.3} {:>12} {:>12} {:>6} {:>6}\n",
            r.k,
            format!("{:?}", r.status).to_uppercase(),
            r.median_ms,
            r.enumerated,
            r.steiner_weight_sum,
            r.compressions,
            r.max_z
        ));
    }
    out
}

/// Runs any command, writes its output and returns the exit code.
pub fn main_with(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Gen { n, p, seed } => match gen_random(*n, *p, *seed) {
            Ok(file) => {
                print!("{}", file.serialize());
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        },
        Command::Bench {
            n,
            p,
            seed,
            k_min,
            k_max,
            reps,
        } => {
            let g = match scaling_instance(*n, *p, *seed) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_ERROR;
                }
            };
            let rows = bench(&g, *k_min..=*k_max, *reps, &cli.options());
            if cli.json {
                for r in &rows {
                    println!("{}", serde_json::to_string(r).expect("row serializes"));
                }
            } else {
                println!("instance n={} m={}", g.n(), g.m());
                print!("{}", bench_table(&rows));
            }
            EXIT_OK
        }
        _ => {
            let report = run(cli);
            if cli.json {
                println!("{}", report.to_json());
            } else {
                println!("{}", report.to_text());
            }
            report.exit_code()
        }
    }
}
