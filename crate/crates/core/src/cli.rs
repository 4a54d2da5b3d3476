//! Command-line front end: `classify`, `run`, `verify` and `suir-verify`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::ring::{GroundState, ObservedConfig};
use crate::sim::{default_max_rounds, run, Crash, Outcome};
use crate::suig::AlgorithmVariant;
use crate::symmetry::{analyze, reflection_axes, Axis, AxisKind, Orientation};
use crate::verify::{verify_suig, verify_suir, CrashMode, VerifyReport};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status when a run or sweep did not meet its contract.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for unusable arguments.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "suig",
    version,
    about = "Crash-tolerant gathering of oblivious robots on rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the class, reflection axes, roles and quasi-axes of a configuration.
    Classify {
        /// `n=<int>;occ=<i,j,...>` or a 0/1 string.
        #[arg(long)]
        config: ObservedConfig,
    },
    /// Execute one run and print its outcome.
    Run {
        #[arg(long)]
        config: ObservedConfig,
        /// Round at which one robot crashes (needs --crash-node).
        #[arg(long, requires = "crash_node")]
        crash_round: Option<usize>,
        /// Node whose robot crashes (needs --crash-round).
        #[arg(long, requires = "crash_round")]
        crash_node: Option<usize>,
        /// Defaults to 4nk+20.
        #[arg(long)]
        max_rounds: Option<usize>,
        /// Print an ASCII frame per round.
        #[arg(long)]
        render: bool,
        /// Write the trace as JSON lines.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exhaustive sweep over odd rings.
    Verify {
        /// Ring size or inclusive range `a..b` (even sizes in a range are skipped).
        #[arg(long)]
        n: IntRange,
        /// Robot counts, inclusive; defaults to `4..n` and is capped at `n`.
        #[arg(long)]
        k: Option<IntRange>,
        #[arg(long, value_enum, default_value_t = CrashArg::All)]
        crash: CrashArg,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write every scenario and a summary as JSON lines.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Two-robot rendezvous sweep over even rings.
    SuirVerify {
        /// Ring size or inclusive range `a..b` (odd sizes in a range are skipped).
        #[arg(long)]
        n: IntRange,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CrashArg {
    All,
    None,
}

impl From<CrashArg> for CrashMode {
    fn from(c: CrashArg) -> Self {
        match c {
            CrashArg::All => CrashMode::All,
            CrashArg::None => CrashMode::None,
        }
    }
}

/// `7` or `4..8`, both ends included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRange {
    pub lo: usize,
    pub hi: usize,
}

impl IntRange {
    pub fn single(&self) -> bool {
        self.lo == self.hi
    }

    pub fn range(&self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{s}` is not an integer or a range a..b"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(IntRange { lo, hi })
    }
}

/// Parses `args` (program name first) and runs the command, writing to `out`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_FAILED
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Classify { config } => {
            out.write_all(classify_report(&config).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Run {
            config,
            crash_round,
            crash_node,
            max_rounds,
            render,
            json,
        } => run_command(
            &config,
            crash_round.zip(crash_node),
            max_rounds,
            render,
            json,
            out,
        ),
        Command::Verify {
            n,
            k,
            crash,
            jobs,
            report,
        } => verify_command(&n, k.as_ref(), crash.into(), jobs, report, out),
        Command::SuirVerify { n } => suir_command(&n, out),
    }
}

fn axis_label(n: usize, a: &Axis) -> String {
    match a.kind {
        AxisKind::NodeEdge => format!("axis@node{}", a.fixed_nodes[0]),
        AxisKind::NodeNode => format!("axis@nodes{},{}", a.fixed_nodes[0], a.fixed_nodes[1]),
        AxisKind::EdgeEdge => {
            let lo = (a.c - 1) / 2;
            format!("axis@edge{}-{}", lo, (lo + 1) % n)
        }
    }
}

fn pair((a, b): (usize, usize)) -> String {
    format!("{{{},{}}}", a.min(b), a.max(b))
}

/// Text printed by `classify`.
pub fn classify_report(c: &ObservedConfig) -> String {
    let n = c.n();
    let an = analyze(c);
    let mut head = an.class.to_string();
    let axes = reflection_axes(c);
    match (&an.axis, &an.roles) {
        (Some(axis), Some(roles)) => {
            write!(
                head,
                " {} target={} main={}",
                axis_label(n, axis),
                roles.target,
                pair(roles.main)
            )
            .unwrap();
            match roles.secondary {
                Some(s) => write!(head, " secondary={}", pair(s)).unwrap(),
                None => head.push_str(" secondary=none"),
            }
        }
        _ => {
            for a in &axes {
                write!(head, " {}", axis_label(n, a)).unwrap();
            }
        }
    }
    let mut s = head;
    s.push('\n');
    for q in &an.quasi {
        let orientation = match q.orientation {
            Orientation::Pos => "POS",
            Orientation::Neg => "NEG",
        };
        writeln!(
            s,
            "quasi r={} r'={} target={} gap={} leading={} orientation={}",
            q.r, q.r_prime, q.target, q.gap_distance, q.leading, orientation
        )
        .unwrap();
    }
    s
}

fn run_command(
    config: &ObservedConfig,
    crash: Option<(usize, usize)>,
    max_rounds: Option<usize>,
    render: bool,
    json: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let n = config.n();
    let k = config.count();
    let variant = if n.is_multiple_of(2) && k == 2 {
        AlgorithmVariant::SuirShortestPath
    } else {
        AlgorithmVariant::SuigRing
    };
    let crash = match crash {
        Some((round, node)) => {
            if !config.is_occupied(node) {
                return Err(CliError::Usage(format!(
                    "crash node {node} is not occupied in {config}"
                )));
            }
            Some(Crash { round, node })
        }
        None => None,
    };
    let bound = max_rounds.unwrap_or_else(|| default_max_rounds(n, k));
    let g0 = GroundState::distinct(config)?;
    let (trace, outcome) = run(&g0, crash, variant, bound)?;
    if render {
        for e in &trace.entries {
            writeln!(out, "{}", e.render())?;
        }
    }
    if let Some(path) = json {
        fs::write(path, trace.to_json_lines())?;
    }
    writeln!(out, "{outcome}")?;
    let ok = match (outcome, crash) {
        (Outcome::GatheredAt { node, .. }, Some(c)) => {
            // a crash scheduled after gathering is injected where everybody is
            node == c.node || trace.entries.iter().all(|e| e.round < c.round)
        }
        (Outcome::GatheredAt { .. }, None) => true,
        _ => false,
    };
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn verify_command(
    n: &IntRange,
    k: Option<&IntRange>,
    crash: CrashMode,
    jobs: Option<usize>,
    report: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if n.single() && (n.lo.is_multiple_of(2) || n.lo < 5) {
        return Err(CliError::Usage(format!(
            "--n {} must be an odd ring size of at least 5",
            n.lo
        )));
    }
    let mut plan = Vec::new();
    for size in n.range().filter(|s| s % 2 == 1 && *s >= 5) {
        let (lo, hi) = k.map_or((4, size), |k| (k.lo, k.hi.min(size)));
        if lo <= hi {
            plan.push((size, lo..=hi));
        }
    }
    if plan.is_empty() {
        return Err(CliError::Usage("nothing to verify for these ranges".into()));
    }
    let reports = with_jobs(jobs, || {
        plan.iter()
            .map(|(size, ks)| verify_suig(*size, ks.clone(), crash).map(|r| (*size, ks.clone(), r)))
            .collect::<crate::Result<Vec<_>>>()
    })??;
    let labelled: Vec<(String, VerifyReport)> = reports
        .into_iter()
        .map(|(size, ks, r)| (format!("n={size} k={}..{}", ks.start(), ks.end()), r))
        .collect();
    finish(labelled, report, out)
}

fn suir_command(n: &IntRange, out: &mut dyn Write) -> Result<i32, CliError> {
    if n.single() && (n.lo % 2 == 1 || n.lo < 4) {
        return Err(CliError::Usage(format!(
            "--n {} must be an even ring size of at least 4",
            n.lo
        )));
    }
    let mut labelled = Vec::new();
    for size in n.range().filter(|s| s % 2 == 0 && *s >= 4) {
        labelled.push((format!("n={size} k=2"), verify_suir(size)?));
    }
    if labelled.is_empty() {
        return Err(CliError::Usage("nothing to verify for this range".into()));
    }
    finish(labelled, None, out)
}

fn finish(
    reports: Vec<(String, VerifyReport)>,
    report: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut all_passed = true;
    let mut lines = String::new();
    for (label, r) in &reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        all_passed &= r.passed();
        write!(out, "{label} {verdict} {}", r.summary)?;
        lines.push_str(&r.to_json_lines());
    }
    if let Some(path) = report {
        fs::write(path, lines)?;
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_FAILED })
}
