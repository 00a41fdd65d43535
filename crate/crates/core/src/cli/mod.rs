//! The `hdrelay` command-line front end.
//!
//! Exit statuses: 0 success, 1 runtime error, 2 usage error,
//! 3 verification violation. Every flag is validated before any
//! computation starts, and output is written only once it is complete.

pub mod emit;
pub mod grid;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::channel::GENERATOR_NAME;
use crate::cutset::Schedule;
use crate::dmt::{self, CutGrid, DmtCurve};
use crate::outage::{self, BoundModel, OutageRow, RunConfig, DEFAULT_MIN_COUNT};
use crate::verify::{self, CheckKind};
use emit::{Cell, Format, Table};
use grid::{parse_count, Grid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hdrelay", version, about = "Cut-set bounds, outage and DMT exponents of half-duplex relay channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: $HDRELAY_WORKERS, else available parallelism)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Outage exponent d(r): closed form next to the grid oracle
    Exponent(ExponentArgs),
    /// Monte Carlo outage probability over an SNR grid
    Outage(OutageArgs),
    /// Diversity slope fitted to an outage table
    Slope(SlopeArgs),
    /// Best single-relay listen fraction per multiplexing gain
    ScheduleOpt(ScheduleArgs),
    /// Baseline DMT curves
    Curves(CurvesArgs),
    /// Randomized checks of the supporting inequalities
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    /// Number of relays; 1 is the single-relay channel, more is the two-hop network
    #[arg(long, default_value_t = 1)]
    pub relays: usize,
    /// Listen fraction of the single relay
    #[arg(long)]
    pub t: Option<f64>,
    /// Multiplexing gains, `start:stop:step`
    #[arg(long)]
    pub r_grid: Grid,
    /// Oracle grid step (default 0.005 for one relay, 0.05 otherwise)
    #[arg(long)]
    pub oracle_step: Option<f64>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// Single-relay cut-set upper bound
    SingleRelay,
    /// Two-hop min-cut Z-channel lower bound
    TwoHop,
}

#[derive(Debug, Args)]
pub struct OutageArgs {
    #[arg(long, default_value_t = 1)]
    pub relays: usize,
    /// Bound deciding outage (default: single-relay for 1 relay, two-hop otherwise)
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    /// Listen fraction (single-relay model)
    #[arg(long, default_value_t = 0.5)]
    pub t: f64,
    /// Multiplexing gain; rate is r log2(snr)
    #[arg(long)]
    pub r: f64,
    /// SNR points in dB, `start:stop:step`
    #[arg(long)]
    pub snr_db: Grid,
    /// Trials per SNR point, e.g. 1e6
    #[arg(long, value_parser = parse_count)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    /// Constant gap subtracted from the bound, in bits
    #[arg(long, default_value_t = 0.0)]
    pub gap_bits: f64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct SlopeArgs {
    /// Outage table written by `outage` (CSV or JSON)
    #[arg(long)]
    pub input: PathBuf,
    /// Rows with fewer outages are ignored
    #[arg(long, default_value_t = DEFAULT_MIN_COUNT)]
    pub min_count: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[arg(long)]
    pub r_grid: Grid,
    #[arg(long, default_value_t = 0.05)]
    pub t_step: f64,
    #[arg(long, default_value_t = dmt::DEFAULT_ORACLE_STEP)]
    pub oracle_step: f64,
    /// Emit d(r; t) for every grid t instead of the maximizer only
    #[arg(long)]
    pub profile: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("curve").required(true).args(["miso", "parallel", "single_relay", "two_hop"])))]
pub struct CurvesArgs {
    /// m x 1 MISO bound m(1 - r)
    #[arg(long)]
    pub miso: Option<usize>,
    /// Two alternating parallel channels, 2(1 - r)
    #[arg(long)]
    pub parallel: bool,
    /// Single-relay cut-set exponent at t = 0.5
    #[arg(long)]
    pub single_relay: bool,
    /// Two-hop network with N relays, (N + 1)(1 - r)
    #[arg(long)]
    pub two_hop: Option<usize>,
    #[arg(long)]
    pub r_grid: Grid,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Tchebychef,
    AvgLemma,
    CutAvg,
}

impl From<KindArg> for CheckKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Tchebychef => CheckKind::Tchebychef,
            KindArg::AvgLemma => CheckKind::AvgLemma,
            KindArg::CutAvg => CheckKind::CutAvg,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, value_parser = parse_count, default_value = "10000")]
    pub instances: u64,
    #[arg(long)]
    pub seed: u64,
    /// Largest instance size (default 16 / 8 / 6 by kind)
    #[arg(long)]
    pub max_n: Option<usize>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Completed command: the table to write and the exit status to return.
struct Outcome {
    table: Table,
    exit: i32,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Self { table, exit: EXIT_OK }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit status.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let command_line = argv.join(" ");
    let out = match &cli.command {
        Command::Exponent(a) => &a.out,
        Command::Outage(a) => &a.out,
        Command::Slope(a) => &a.out,
        Command::ScheduleOpt(a) => &a.out,
        Command::Curves(a) => &a.out,
        Command::Verify(a) => &a.out,
    };
    let workers = match out.workers {
        Some(0) => {
            eprintln!("error: --workers must be >= 1");
            return EXIT_USAGE;
        }
        Some(w) => w,
        None => outage::default_workers(),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return EXIT_RUNTIME;
        }
    };
    let result = pool.install(|| dispatch(&cli.command, workers));
    match result {
        Ok(mut outcome) => {
            let table = &mut outcome.table;
            table.meta("tool_version", env!("CARGO_PKG_VERSION"));
            table.meta("command_line", command_line);
            table.meta("timestamp", chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
            table.metadata.entry("seed").or_insert(Value::Null);
            table.metadata.entry("generator").or_insert(Value::Null);
            if let Err(e) = emit::emit(table, out.format, out.output.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                return EXIT_RUNTIME;
            }
            outcome.exit
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            EXIT_RUNTIME
        }
    }
}

fn dispatch(command: &Command, workers: usize) -> Result<Outcome, Failure> {
    match command {
        Command::Exponent(a) => exponent(a),
        Command::Outage(a) => outage_cmd(a, workers),
        Command::Slope(a) => slope(a),
        Command::ScheduleOpt(a) => schedule_opt(a),
        Command::Curves(a) => curves(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn check_r_grid(grid: &Grid) -> Result<(), Failure> {
    if let Some(r) = grid.0.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return usage(format!("multiplexing gain {r} outside [0, 1]"));
    }
    Ok(())
}

fn check_step(name: &str, step: f64) -> Result<(), Failure> {
    if step > 0.0 && step <= 0.25 {
        Ok(())
    } else {
        usage(format!("{name} {step} outside (0, 0.25]"))
    }
}

fn exponent(a: &ExponentArgs) -> Result<Outcome, Failure> {
    check_r_grid(&a.r_grid)?;
    if a.relays == 0 || a.relays > crate::cutset::MAX_RELAYS {
        return usage(format!("--relays must be in 1..={}", crate::cutset::MAX_RELAYS));
    }
    if a.relays > 1 && a.t.is_some() {
        return usage("--t applies only to the single-relay channel; the two-hop network is uniformly scheduled");
    }
    let t = a.t.unwrap_or(0.5);
    if !(0.0..=1.0).contains(&t) {
        return usage(format!("--t {t} outside [0, 1]"));
    }
    let step = a.oracle_step.unwrap_or(if a.relays == 1 { 0.005 } else { 0.05 });
    check_step("--oracle-step", step)?;
    let dim = if a.relays == 1 { 3 } else { a.relays + 1 };
    let axis = (1.0 / step).round() + 1.0;
    if dim as f64 * axis.powi(dim as i32) > dmt::DEFAULT_ORACLE_BUDGET {
        return usage(format!("oracle grid too large for step {step} in {dim} dimensions"));
    }

    let mut table = Table::new(vec!["r", "d_analytic", "d_oracle", "worst_cut"]);
    table.meta("relays", a.relays as u64);
    table.meta("oracle_step", step);
    table.meta("oracle_tolerance", dmt::oracle_tolerance(dim, step));
    if a.relays == 1 {
        table.meta("t", t);
    }
    for &r in &a.r_grid.0 {
        let row = if a.relays == 1 {
            // the closed form holds for the half-half schedule only
            let analytic = (t == 0.5).then(|| dmt::single_relay_exponent_analytic(r)).transpose()?;
            let oracle = dmt::single_relay_exponent_oracle(r, t, step)?;
            vec![r.into(), analytic.into(), oracle.into(), Cell::Missing]
        } else {
            let analytic = dmt::two_hop_exponent_analytic(a.relays, r)?;
            let oracle = dmt::two_hop_exponent_oracle(a.relays, r, step, CutGrid::Crossing)?;
            let worst = oracle
                .per_cut
                .iter()
                .find(|(_, d)| *d == oracle.min)
                .map_or(Cell::Missing, |(c, _)| Cell::Int(c.0 as u64));
            vec![r.into(), analytic.into(), oracle.min.into(), worst]
        };
        table.push(row);
    }
    Ok(Outcome::ok(table))
}

fn outage_cmd(a: &OutageArgs, workers: usize) -> Result<Outcome, Failure> {
    let model = a.model.unwrap_or(if a.relays == 1 { ModelArg::SingleRelay } else { ModelArg::TwoHop });
    let (model, schedule) = match model {
        ModelArg::SingleRelay => {
            if a.relays != 1 {
                return usage("the single-relay model needs --relays 1");
            }
            let schedule = Schedule::single_relay(a.t).map_err(|e| Failure::Usage(e.to_string()))?;
            (BoundModel::SingleRelayUb, schedule)
        }
        ModelArg::TwoHop => {
            let schedule = Schedule::uniform_two_hop(a.relays).map_err(|e| Failure::Usage(e.to_string()))?;
            (BoundModel::TwoHopZlb, schedule)
        }
    };
    let cfg = RunConfig {
        model,
        n_relays: a.relays,
        schedule,
        r: a.r,
        snr_db_grid: a.snr_db.0.clone(),
        trials_per_point: a.trials,
        seed: a.seed,
        gap_bits: a.gap_bits,
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let result = outage::estimate_outage_with_workers(&cfg, workers)?;

    let mut table = Table::new(vec![
        "snr_db", "snr_linear", "rate_bits", "trials", "outage_count", "p_hat", "ci_low", "ci_high",
    ]);
    let meta = serde_json::to_value(&result.metadata).expect("metadata serializes");
    if let Value::Object(map) = meta {
        table.metadata.extend(map);
    }
    for row in &result.rows {
        table.push(vec![
            row.snr_db.into(),
            row.snr_linear.into(),
            row.rate_bits.into(),
            row.trials.into(),
            row.outage_count.into(),
            row.p_hat.into(),
            row.ci_low.into(),
            row.ci_high.into(),
        ]);
    }
    Ok(Outcome::ok(table))
}

/// Reads outage rows back from a CSV table or a JSON document with a `rows` array.
pub fn read_outage_rows(path: &Path) -> Result<(Vec<OutageRow>, Option<Value>), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let doc: Value = serde_json::from_str(&text).map_err(|e| format!("bad JSON: {e}"))?;
        let rows = doc.get("rows").cloned().ok_or("JSON input has no `rows` array")?;
        let rows: Vec<OutageRow> = serde_json::from_value(rows).map_err(|e| format!("bad outage rows: {e}"))?;
        Ok((rows, doc.get("metadata").and_then(|m| m.get("seed")).cloned()))
    } else {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let rows = reader
            .deserialize()
            .collect::<Result<Vec<OutageRow>, _>>()
            .map_err(|e| format!("bad CSV outage table: {e}"))?;
        Ok((rows, None))
    }
}

fn slope(a: &SlopeArgs) -> Result<Outcome, Failure> {
    let (rows, seed) = read_outage_rows(&a.input).map_err(Failure::Runtime)?;
    let fit = outage::estimate_diversity_slope(&rows, a.min_count)?;
    let mut table = Table::new(vec!["slope", "stderr", "points_used", "min_count"]);
    table.meta("input", a.input.display().to_string());
    if let Some(seed) = seed {
        table.meta("seed", seed);
    }
    table.push(vec![fit.slope.into(), fit.stderr.into(), (fit.points_used as u64).into(), a.min_count.into()]);
    Ok(Outcome::ok(table))
}

fn schedule_opt(a: &ScheduleArgs) -> Result<Outcome, Failure> {
    check_r_grid(&a.r_grid)?;
    check_step("--t-step", a.t_step)?;
    check_step("--oracle-step", a.oracle_step)?;
    let mut table = if a.profile {
        Table::new(vec!["r", "t", "d"])
    } else {
        Table::new(vec!["r", "t_star", "d_star"])
    };
    table.meta("t_step", a.t_step);
    table.meta("oracle_step", a.oracle_step);
    table.meta("oracle_tolerance", dmt::oracle_tolerance(3, a.oracle_step));
    for &r in &a.r_grid.0 {
        let opt = dmt::optimize_schedule_single_with(r, a.t_step, a.oracle_step)?;
        if a.profile {
            for &(t, d) in &opt.profile {
                table.push(vec![r.into(), t.into(), d.into()]);
            }
        } else {
            table.push(vec![r.into(), opt.t_star.into(), opt.d_star.into()]);
        }
    }
    Ok(Outcome::ok(table))
}

fn curves(a: &CurvesArgs) -> Result<Outcome, Failure> {
    check_r_grid(&a.r_grid)?;
    if a.r_grid.0.windows(2).any(|w| !(w[0] < w[1])) {
        return usage("--r-grid must be strictly increasing");
    }
    let rs = &a.r_grid.0;
    let (name, curve) = if let Some(m) = a.miso {
        if m == 0 {
            return usage("--miso needs at least one antenna");
        }
        (format!("miso-{m}x1"), DmtCurve::sample(rs, |r| dmt::miso_dmt(m, r))?)
    } else if a.parallel {
        ("parallel".to_string(), DmtCurve::sample(rs, dmt::parallel_channel_dmt)?)
    } else if a.single_relay {
        ("single-relay".to_string(), DmtCurve::sample(rs, dmt::single_relay_exponent_analytic)?)
    } else if let Some(n) = a.two_hop {
        if n == 0 {
            return usage("--two-hop needs at least one relay");
        }
        (format!("two-hop-{n}"), DmtCurve::sample(rs, |r| dmt::two_hop_exponent_analytic(n, r))?)
    } else {
        return usage("choose one curve");
    };
    let mut table = Table::new(vec!["r", "d"]);
    table.meta("curve", name);
    for &(r, d) in curve.points() {
        table.push(vec![r.into(), d.into()]);
    }
    Ok(Outcome::ok(table))
}

fn verify_cmd(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let kind: CheckKind = a.kind.into();
    if a.instances == 0 {
        return usage("--instances must be >= 1");
    }
    let report = verify::run_randomized_suite(kind, a.instances, a.seed, a.max_n)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut table = Table::new(vec!["kind", "instances", "violations", "worst_margin", "seed", "max_n"]);
    table.meta("seed", a.seed);
    table.meta("generator", GENERATOR_NAME);
    table.meta("tolerance", verify::MARGIN_TOL);
    table.push(vec![
        Cell::Text(kind.to_string()),
        report.instances.into(),
        report.violations.into(),
        report.worst_margin.into(),
        report.seed.into(),
        (report.max_n as u64).into(),
    ]);
    let exit = if report.violations == 0 { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Outcome { table, exit })
}
