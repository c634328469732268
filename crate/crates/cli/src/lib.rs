//! Argument handling and subcommands for the `matchsat` binary.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use matchsat::branch::{RuleCounts, SearchStats, SolveError};
use matchsat::genoracle::{brute_maxsat, OracleError, BRUTE_FORCE_MAX_VARS};
use matchsat::hitset::{brute_min_hitting_set, MiniHittingSet, BRUTE_FORCE_MAX_VERTICES};
use matchsat::{
    gen_random, matching_number, parse_dimacs_bytes, parse_hypergraph, solve, solve_m_minus_k,
    CnfFormula, Family, GenConfig, Generated, HitConfig, HitMode, Hypergraph, Instance,
    SolverConfig,
};
use serde::Serialize;

pub const EXIT_YES: i32 = 10;
pub const EXIT_NO: i32 = 20;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "matchsat", version, about = "MaxSat above the matching number")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether some assignment satisfies at least alpha clauses.
    Solve(SolveArgs),
    /// Decide whether a hypergraph has a hitting set of size at most m - k.
    HittingSet(HittingArgs),
    /// Compare the solver against brute force.
    Check(CheckArgs),
    /// Write a generated instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Randomized,
    Exact,
}

impl From<ModeArg> for HitMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Randomized => HitMode::Randomized,
            ModeArg::Exact => HitMode::Exact,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Uniform,
    Special,
    HypergraphReduction,
    Hypergraph,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Uniform => Family::Uniform,
            FamilyArg::Special => Family::Special,
            FamilyArg::HypergraphReduction => Family::HypergraphReduction,
            FamilyArg::Hypergraph => Family::Hypergraph,
        }
    }
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "randomized")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Color-coding trials per mini-set size before the exact search takes over.
    #[arg(long, default_value_t = matchsat::hitset::DEFAULT_TRIAL_CAP)]
    trial_cap: u64,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["alpha", "k"]))]
struct SolveArgs {
    /// DIMACS CNF file, or - for stdin.
    file: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<i64>,
    /// Target above the matching number: alpha = nu + k.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    parallel: bool,
    #[arg(long, default_value_t = matchsat::branch::DEFAULT_NODE_BUDGET)]
    node_budget: u64,
}

#[derive(Args, Debug)]
struct HittingArgs {
    /// Hypergraph file (`h <n> <m>` then one edge per line), or - for stdin.
    file: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ShapeArgs {
    #[arg(long, default_value_t = 8)]
    n: u32,
    #[arg(long, default_value_t = 16)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    min_len: usize,
    #[arg(long, default_value_t = 4)]
    max_len: usize,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["file", "family"]))]
struct CheckArgs {
    /// DIMACS CNF file to check at k = -1..3.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, default_value_t = 100)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "randomized")]
    mode: ModeArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    family: FamilyArg,
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Serialize, Debug)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Answer::Yes => EXIT_YES,
            Answer::No => EXIT_NO,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct RunReport {
    pub answer: Answer,
    pub alpha: i64,
    pub k: i64,
    pub nu: usize,
    pub stats: SearchStats,
    pub rule_counts: RuleCounts,
    pub wall_time_ms: f64,
}

#[derive(Serialize, Debug)]
pub struct HittingReport {
    pub answer: Answer,
    pub k: i64,
    pub num_vertices: u32,
    pub num_edges: usize,
    pub mini_hitting_set: Option<MiniHittingSet>,
    pub hitting_set: Option<Vec<u32>>,
    pub exact_fallback: bool,
    pub wall_time_ms: f64,
}

#[derive(Serialize, Debug)]
pub struct CheckReport {
    pub cases: u64,
    pub disagreements: u64,
    pub first_disagreement: Option<String>,
}

enum Failure {
    Usage(anyhow::Error),
    Resource(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn resource_or_usage(e: SolveError) -> Failure {
    match e {
        SolveError::NodeBudgetExceeded { .. } => Failure::Resource(e.into()),
        other => Failure::Usage(anyhow!(other)),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    Failure::Resource(e.into())
}

fn read_input(path: &Path) -> anyhow::Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_cnf(path: &Path) -> anyhow::Result<CnfFormula> {
    let bytes = read_input(path)?;
    parse_dimacs_bytes(&bytes).with_context(|| format!("parsing {}", path.display()))
}

fn read_hypergraph(path: &Path) -> anyhow::Result<Hypergraph> {
    let bytes = read_input(path)?;
    let text = std::str::from_utf8(&bytes).context("input is not valid UTF-8")?;
    parse_hypergraph(text).with_context(|| format!("parsing {}", path.display()))
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs one command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::HittingSet(a) => cmd_hitting_set(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Gen(a) => cmd_gen(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
        Err(Failure::Resource(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_RESOURCE
        }
    }
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    json: bool,
    value: &T,
    plain: String,
) -> anyhow::Result<()> {
    if json {
        serde_json::to_writer_pretty(&mut *out, value)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{plain}")?;
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let f = read_cnf(&a.file)?;
    let nu = matching_number(&f);
    let alpha = match (a.alpha, a.k) {
        (Some(alpha), _) => alpha,
        (None, Some(k)) => nu as i64 + k,
        (None, None) => unreachable!("clap requires one of --alpha/--k"),
    };
    let cfg = SolverConfig {
        mode: a.search.mode.into(),
        seed: a.search.seed,
        trial_cap: a.search.trial_cap,
        node_budget: a.node_budget,
        parallel: a.parallel,
    };
    let r = solve(&Instance::new(f, alpha), &cfg).map_err(resource_or_usage)?;
    let report = RunReport {
        answer: Answer::from_bool(r.answer),
        alpha,
        k: r.k,
        nu: r.nu,
        stats: r.stats,
        rule_counts: r.rule_counts,
        wall_time_ms: millis(start),
    };
    let plain = format!(
        "{} alpha={} nu={} k={} nodes={}",
        if r.answer { "yes" } else { "no" },
        alpha,
        r.nu,
        r.k,
        r.stats.nodes_expanded
    );
    emit(out, a.json, &report, plain)?;
    Ok(report.answer.exit_code())
}

fn cmd_hitting_set(a: HittingArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let h = read_hypergraph(&a.file)?;
    let cfg = HitConfig {
        mode: a.search.mode.into(),
        seed: a.search.seed,
        trial_cap: a.search.trial_cap,
    };
    let ans = solve_m_minus_k(&h, a.k, &cfg);
    let report = HittingReport {
        answer: Answer::from_bool(ans.exists),
        k: a.k,
        num_vertices: h.num_vertices(),
        num_edges: h.num_edges(),
        mini_hitting_set: ans.mini,
        hitting_set: ans.hitting_set.clone(),
        exact_fallback: ans.exact_fallback,
        wall_time_ms: millis(start),
    };
    let plain = match &ans.hitting_set {
        Some(hs) => format!(
            "yes hitting set of size {} (bound {}): {:?}",
            hs.len(),
            h.num_edges() as i64 - a.k,
            hs
        ),
        None => format!(
            "no hitting set of size at most {}",
            h.num_edges() as i64 - a.k
        ),
    };
    emit(out, a.json, &report, plain)?;
    Ok(report.answer.exit_code())
}

fn check_formula(
    f: &CnfFormula,
    cfg: &SolverConfig,
    label: &str,
    report: &mut CheckReport,
) -> Result<(), Failure> {
    let sat = brute_maxsat(f).map_err(oracle_failure)? as i64;
    let nu = matching_number(f) as i64;
    for k in -1..=3 {
        let alpha = nu + k;
        let got = solve(&Instance::new(f.clone(), alpha), cfg)
            .map_err(resource_or_usage)?
            .answer;
        report.cases += 1;
        if got != (sat >= alpha) {
            report.disagreements += 1;
            report
                .first_disagreement
                .get_or_insert_with(|| format!("{label} k={k}"));
        }
    }
    Ok(())
}

fn check_hypergraph(
    h: &Hypergraph,
    cfg: &HitConfig,
    label: &str,
    report: &mut CheckReport,
) -> Result<(), Failure> {
    if h.num_vertices() > BRUTE_FORCE_MAX_VERTICES {
        return Err(Failure::Resource(anyhow!(
            "brute force limited to {BRUTE_FORCE_MAX_VERTICES} vertices"
        )));
    }
    let tau = brute_min_hitting_set(h)
        .map_err(|e| Failure::Resource(e.into()))?
        .len() as i64;
    let m = h.num_edges() as i64;
    for k in -1..=3 {
        report.cases += 1;
        if solve_m_minus_k(h, k, cfg).exists != (tau <= m - k) {
            report.disagreements += 1;
            report
                .first_disagreement
                .get_or_insert_with(|| format!("{label} k={k}"));
        }
    }
    Ok(())
}

fn gen_config(family: FamilyArg, shape: &ShapeArgs, seed: u64) -> GenConfig {
    GenConfig {
        seed,
        num_vars: shape.n,
        num_clauses: shape.m,
        clause_len: (shape.min_len, shape.max_len),
        family: family.into(),
    }
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mode: HitMode = a.mode.into();
    let solver = SolverConfig {
        mode,
        seed: a.seed,
        ..SolverConfig::default()
    };
    let mut report = CheckReport {
        cases: 0,
        disagreements: 0,
        first_disagreement: None,
    };
    if let Some(path) = &a.file {
        let f = read_cnf(path)?;
        check_formula(&f, &solver, &path.display().to_string(), &mut report)?;
    } else if let Some(family) = a.family {
        if !matches!(family, FamilyArg::Hypergraph) && a.shape.n as usize > BRUTE_FORCE_MAX_VARS {
            return Err(Failure::Resource(anyhow!(
                "brute force limited to {BRUTE_FORCE_MAX_VARS} variables"
            )));
        }
        for i in 0..a.count {
            let seed = a.seed.wrapping_add(i);
            let label = format!("seed {seed}");
            let generated = gen_random(&gen_config(family, &a.shape, seed))
                .map_err(|e| Failure::Usage(e.into()))?;
            match generated {
                Generated::Cnf(f) => check_formula(&f, &solver, &label, &mut report)?,
                Generated::Hypergraph(h) => {
                    let cfg = HitConfig {
                        mode,
                        seed,
                        ..HitConfig::default()
                    };
                    check_hypergraph(&h, &cfg, &label, &mut report)?
                }
            }
        }
    }
    let plain = match &report.first_disagreement {
        None => format!("ok: {} cases agree with brute force", report.cases),
        Some(first) => format!(
            "FAILED: {} of {} cases disagree, first at {first}",
            report.disagreements, report.cases
        ),
    };
    emit(out, a.json, &report, plain)?;
    Ok(if report.disagreements == 0 {
        0
    } else {
        EXIT_DISAGREE
    })
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let generated = gen_random(&gen_config(a.family, &a.shape, a.seed))
        .map_err(|e| Failure::Usage(e.into()))?;
    let text = generated.to_text();
    match &a.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => out.write_all(text.as_bytes()).context("writing stdout")?,
    }
    Ok(0)
}
