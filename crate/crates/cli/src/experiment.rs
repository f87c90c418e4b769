//! JSON experiment plans, run in parallel and written as CSV in trial order.
//!
//! A plan names a family, a grid of parameter sets, the `k` values, the mode,
//! and how many seeded trials to run per (grid point, k):
//!
//! ```json
//! {"family":"gnp","grid":[{"n":60,"p":0.5}],"k":[2],"mode":"relaxed","trials":20,"seed_base":0}
//! ```

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use oddcycles::extractor::DEFAULT_C;
use oddcycles::oracle::{enumerate_cycles, estimated_cycle_count, longest_consecutive_odd_run, subset_spectrum};
use oddcycles::oracle::{EnumerateOptions, DEFAULT_CAP};
use oddcycles::{extract_consecutive_odd, verify_result, ExtractionConfig, Graph, Mode};

use crate::family::{build, Family, Params};
use crate::{exit, read_input, Outcome};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentPlan {
    pub family: Family,
    pub grid: Vec<Params>,
    pub k: Vec<u64>,
    #[serde(default = "relaxed")]
    pub mode: Mode,
    #[serde(default = "default_c")]
    pub c: u64,
    pub trials: usize,
    #[serde(default)]
    pub seed_base: u64,
    /// Where to write the table when `--out` is not given.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn relaxed() -> Mode {
    Mode::Relaxed
}

fn default_c() -> u64 {
    DEFAULT_C
}

impl ExperimentPlan {
    pub fn parse(text: &str) -> Result<Self, String> {
        let plan: ExperimentPlan = serde_json::from_str(text).map_err(|e| e.to_string())?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        if self.grid.is_empty() {
            return Err("grid must not be empty".into());
        }
        if self.k.is_empty() || self.k.contains(&0) {
            return Err("k must be a nonempty list of positive integers".into());
        }
        Ok(())
    }

    /// Every trial in output order: grid point, then k, then trial index.
    pub fn jobs(&self) -> Vec<Job<'_>> {
        let mut jobs = Vec::new();
        for params in &self.grid {
            for &k in &self.k {
                for i in 0..self.trials {
                    jobs.push(Job { index: jobs.len(), params, k, seed: self.seed_base + i as u64 });
                }
            }
        }
        jobs
    }
}

pub struct Job<'a> {
    pub index: usize,
    pub params: &'a Params,
    pub k: u64,
    pub seed: u64,
}

/// One CSV row. `status` is `ok`, `underdelivered`, or the error reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub trial: usize,
    pub family: String,
    pub params: String,
    pub k: u64,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub t_target: String,
    pub t_achieved: String,
    pub case: String,
    pub lengths: String,
    pub verified: String,
    pub oracle_run: String,
    pub status: String,
}

/// Longest consecutive odd run by exhaustive counting, or `None` when the
/// estimated enumeration exceeds `cap` or the cap is hit.
pub fn oracle_run(g: &Graph, cap: u64) -> Option<usize> {
    if let Some(s) = subset_spectrum(g) {
        return Some(longest_consecutive_odd_run(&s));
    }
    if estimated_cycle_count(g) > cap as f64 {
        return None;
    }
    let s = enumerate_cycles(g, EnumerateOptions { cap, ..Default::default() }).spectrum;
    (!s.truncated).then(|| longest_consecutive_odd_run(&s))
}

pub fn run_job(plan: &ExperimentPlan, job: &Job<'_>, cap: u64) -> Row {
    let mut row = Row {
        trial: job.index,
        family: plan.family.to_string(),
        params: job.params.describe(),
        k: job.k,
        seed: job.seed,
        n: 0,
        m: 0,
        t_target: String::new(),
        t_achieved: String::new(),
        case: String::new(),
        lengths: String::new(),
        verified: String::new(),
        oracle_run: String::new(),
        status: String::new(),
    };
    let g = match build(plan.family, job.params, job.seed) {
        Ok(g) => g,
        Err(e) => {
            row.status = format!("generator: {e}");
            return row;
        }
    };
    row.n = g.n();
    row.m = g.m();
    row.oracle_run = oracle_run(&g, cap).map_or_else(|| "skipped".to_string(), |r| r.to_string());
    let cfg = ExtractionConfig { k: job.k, c: plan.c, mode: plan.mode };
    match extract_consecutive_odd(&g, &cfg) {
        Ok(r) => {
            row.t_target = r.t_target.to_string();
            row.t_achieved = r.t_achieved.to_string();
            row.case = r.case.to_string();
            row.lengths = r.lengths().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(";");
            row.verified = verify_result(&g, &r).passed().to_string();
            row.status = if r.t_achieved >= job.k { "ok" } else { "underdelivered" }.to_string();
        }
        Err(e) => row.status = e.reason(),
    }
    row
}

/// Runs every trial and renders the table. Rows are in job order whatever
/// order the threads finish in.
pub fn run_plan(plan: &ExperimentPlan, cap: u64) -> String {
    let jobs = plan.jobs();
    let rows: Vec<Row> = jobs.par_iter().map(|job| run_job(plan, job, cap)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is UTF-8")
}

pub fn cmd_experiment(path: &Path, cap: Option<u64>, seed: Option<u64>, has_out_flag: bool) -> Outcome {
    let plan = match read_input(path).and_then(|t| ExperimentPlan::parse(&t)) {
        Ok(mut p) => {
            if let Some(s) = seed {
                p.seed_base = s;
            }
            p
        }
        Err(e) => return Outcome::fail(exit::INPUT, format!("error: plan {}: {e}\n", path.display())),
    };
    let table = run_plan(&plan, cap.unwrap_or(DEFAULT_CAP));
    match (&plan.output, has_out_flag) {
        (Some(out), false) => match std::fs::write(out, &table) {
            Ok(()) => Outcome { code: exit::OK, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome::fail(exit::INPUT, format!("error: {}: {e}\n", out.display())),
        },
        _ => Outcome { code: exit::OK, stdout: table, stderr: String::new() },
    }
}
