//! Command implementations behind the `oddcycles` binary. Each command
//! returns an [`Outcome`] (exit code plus the text for stdout and stderr) so
//! the binary stays a thin shell and the commands can be tested in-process.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use oddcycles::extractor::VerifyReport;
use oddcycles::invariants::{bipartite_check, girth, is_two_connected, odd_girth, BipartiteWitness};
use oddcycles::{
    emit_graph, extract_consecutive_odd, parse_graph, verify_record, ExtractError, ExtractionConfig, Graph, Mode,
    ParseOptions, ResultRecord,
};

pub mod experiment;
pub mod family;

/// Exit codes, one per outcome category.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const HYPOTHESIS: i32 = 3;
    pub const UNDERDELIVERED: i32 = 4;
    pub const UNVERIFIED: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(name = "oddcycles", version, about = "Cycles of consecutive odd lengths: extraction, oracles, generators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Human-readable summary on stderr.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Collapse repeated edge lines instead of rejecting the input.
    #[arg(long, global = true)]
    pub dedup: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size, density, bipartiteness, 2-connectivity and girths as one JSON record.
    Analyze {
        /// Edge list or DIMACS file; `-` reads stdin.
        input: PathBuf,
    },
    /// Extract cycles of consecutive odd lengths.
    Extract {
        input: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Relaxed)]
        mode: ModeArg,
        /// Average-degree constant checked in strict mode.
        #[arg(long, default_value_t = oddcycles::extractor::DEFAULT_C)]
        c: u64,
    },
    /// Re-check an extraction result against its graph.
    Verify { graph: PathBuf, result: PathBuf },
    /// Emit a graph from one of the built-in families as an edge list.
    Generate(family::FamilyArgs),
    /// Run a JSON experiment plan and write one CSV row per trial.
    Experiment {
        plan: PathBuf,
        /// Enumeration cap for the oracle column.
        #[arg(long)]
        cap: Option<u64>,
        /// Overrides the plan's seed base.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Relaxed,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Relaxed => Mode::Relaxed,
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: exit::OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: stderr.into() }
    }

    fn note(mut self, pretty: bool, text: impl FnOnce() -> String) -> Self {
        if pretty {
            self.stderr.push_str(&text());
        }
        self
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let opts = ParseOptions { dedup: cli.dedup };
    match &cli.command {
        Command::Analyze { input } => cmd_analyze(input, opts, cli.pretty),
        Command::Extract { input, k, mode, c } => {
            cmd_extract(input, opts, &ExtractionConfig { k: *k, c: *c, mode: (*mode).into() }, cli.pretty)
        }
        Command::Verify { graph, result } => cmd_verify(graph, result, opts),
        Command::Generate(args) => match family::generate(args) {
            Ok(g) => Outcome::ok(emit_graph(&g)),
            Err(e) => Outcome::fail(exit::INPUT, format!("error: {e}\n")),
        },
        Command::Experiment { plan, cap, seed } => experiment::cmd_experiment(plan, *cap, *seed, cli.out.is_some()),
    }
}

pub fn read_input(path: &Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_graph(path: &Path, opts: ParseOptions) -> Result<Graph, String> {
    let text = read_input(path)?;
    parse_graph(&text, opts).map_err(|e| format!("{}: {e}", path.display()))
}

/// Stable-key summary printed by `analyze`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyzeRecord {
    pub n: usize,
    pub m: usize,
    pub avg: Option<String>,
    pub bipartite: bool,
    pub two_connected: bool,
    pub girth: Option<usize>,
    pub odd_girth: Option<usize>,
}

pub fn analyze(g: &Graph) -> AnalyzeRecord {
    let og = odd_girth(g);
    AnalyzeRecord {
        n: g.n(),
        m: g.m(),
        avg: g.average_degree().ok().map(|a| a.to_string()),
        bipartite: og.is_none(),
        two_connected: is_two_connected(g).is_two_connected(),
        girth: girth(g),
        odd_girth: og,
    }
}

pub fn cmd_analyze(input: &Path, opts: ParseOptions, pretty: bool) -> Outcome {
    let g = match load_graph(input, opts) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(exit::INPUT, format!("error: {e}\n")),
    };
    let rec = analyze(&g);
    Outcome::ok(to_json_line(&rec)).note(pretty, || {
        let mut s = format!("{} vertices, {} edges\n", rec.n, rec.m);
        s.push_str(&format!("2-connectivity: {:?}\n", is_two_connected(&g)));
        match bipartite_check(&g) {
            Ok(BipartiteWitness::OddCycle(c)) => s.push_str(&format!("odd cycle: {c:?}\n")),
            Ok(BipartiteWitness::Bipartite { side }) => s.push_str(&format!("sides: {side:?}\n")),
            Err(e) => s.push_str(&format!("bipartite witness unavailable: {e}\n")),
        }
        s
    })
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain records serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    status: &'a str,
    reason: String,
}

/// Exit category for an extraction error.
pub fn error_code(e: &ExtractError) -> i32 {
    match e {
        _ if e.is_hypothesis_failure() => exit::HYPOTHESIS,
        ExtractError::InvalidConfig(_) => exit::INPUT,
        _ => exit::UNDERDELIVERED,
    }
}

pub fn cmd_extract(input: &Path, opts: ParseOptions, cfg: &ExtractionConfig, pretty: bool) -> Outcome {
    let g = match load_graph(input, opts) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(exit::INPUT, format!("error: {e}\n")),
    };
    match extract_consecutive_odd(&g, cfg) {
        Ok(r) => {
            let code = if r.t_achieved >= cfg.k { exit::OK } else { exit::UNDERDELIVERED };
            let mut out = Outcome::ok(to_json_line(&r.to_record()));
            out.code = code;
            if code != exit::OK {
                out.stderr = format!("error: only {} cycles, k = {}\n", r.t_achieved, cfg.k);
            }
            out.note(pretty, || {
                format!("case {}, lengths {:?}, target {}\ntrace: {:#?}\n", r.case, r.lengths(), r.t_target, r.trace)
            })
        }
        Err(e) => {
            let code = error_code(&e);
            let status = match code {
                exit::HYPOTHESIS => "hypothesis_failure",
                exit::INPUT => "invalid_config",
                _ => "underdelivered",
            };
            let mut out = Outcome::fail(code, format!("error: {e}\n"));
            out.stdout = to_json_line(&ErrorRecord { status, reason: e.reason() });
            out.note(pretty, || e.trace().map(|t| format!("trace: {t:#?}\n")).unwrap_or_default())
        }
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    passed: bool,
    #[serde(flatten)]
    report: &'a VerifyReport,
}

pub fn cmd_verify(graph: &Path, result: &Path, opts: ParseOptions) -> Outcome {
    let g = match load_graph(graph, opts) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(exit::INPUT, format!("error: {e}\n")),
    };
    let record: ResultRecord = match read_input(result).and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string())) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(exit::INPUT, format!("error: {}: {e}\n", result.display())),
    };
    let report = verify_record(&g, &record);
    let passed = report.passed();
    let mut out = Outcome::ok(to_json_line(&VerifyOutput { passed, report: &report }));
    if !passed {
        out.code = exit::UNVERIFIED;
        out.stderr = format!("error: {} verification failures\n", report.failures.len());
    }
    out
}
