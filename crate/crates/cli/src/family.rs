//! Family names and parameters shared by `generate` and experiment plans.

use std::fmt;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use oddcycles::generators::{self, BlowupSpec, GeneratorError};
use oddcycles::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Complete,
    Kbip,
    Cycle,
    Theta,
    /// Blow-up of a cycle (`--n`) or, with `--base complete`, of a complete graph.
    Blowup,
    /// `K_{m,m}` glued to an odd cycle at one vertex.
    Cutodd,
    Gnp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_possible_value().expect("no skipped variants");
        f.write_str(s.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseFamily {
    #[default]
    Cycle,
    Complete,
}

/// Family parameters. Which ones are required depends on the family.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Vertex count (complete, cycle, gnp, blow-up base).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Side sizes for kbip.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    /// Three theta path lengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<usize>>,
    /// Blow-up part size.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[arg(long, value_enum)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseFamily>,
    /// Core side for cutodd.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Odd cycle length for cutodd.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    /// Edge probability for gnp.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

impl Params {
    /// `key=value` pairs joined by `;`, in declaration order.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                parts.push(format!("{k}={v}"));
            }
        };
        push("n", self.n.map(|x| x.to_string()));
        push("a", self.a.map(|x| x.to_string()));
        push("b", self.b.map(|x| x.to_string()));
        push("lengths", self.lengths.as_ref().map(|l| l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
        push("t", self.t.map(|x| x.to_string()));
        push("base", self.base.map(|b| format!("{b:?}").to_lowercase()));
        push("m", self.m.map(|x| x.to_string()));
        push("l", self.l.map(|x| x.to_string()));
        push("p", self.p.map(|x| x.to_string()));
        parts.join(";")
    }
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[command(flatten)]
    pub params: Params,
    /// Seed for random families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family {0} needs --{1}")]
    Missing(Family, &'static str),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
}

fn need<T: Copy>(family: Family, name: &'static str, v: Option<T>) -> Result<T, FamilyError> {
    v.ok_or(FamilyError::Missing(family, name))
}

/// Builds the graph described by `family` and `params`; `seed` is only read
/// by `gnp`.
pub fn build(family: Family, params: &Params, seed: u64) -> Result<Graph, FamilyError> {
    let f = family;
    let g = match family {
        Family::Complete => generators::complete(need(f, "n", params.n)?)?,
        Family::Kbip => generators::complete_bipartite(need(f, "a", params.a)?, need(f, "b", params.b)?)?,
        Family::Cycle => generators::cycle(need(f, "n", params.n)?)?,
        Family::Theta => {
            let l = params.lengths.as_deref().ok_or(FamilyError::Missing(f, "lengths"))?;
            match l {
                [a, b, c] => generators::theta(*a, *b, *c)?,
                _ => return Err(FamilyError::Missing(f, "lengths")),
            }
        }
        Family::Blowup => {
            let n = need(f, "n", params.n)?;
            let base = match params.base.unwrap_or_default() {
                BaseFamily::Cycle => generators::cycle(n)?,
                BaseFamily::Complete => generators::complete(n)?,
            };
            generators::blowup(&BlowupSpec { base, t: need(f, "t", params.t)? })?
        }
        Family::Cutodd => generators::cut_vertex_odd_family(need(f, "m", params.m)?, need(f, "l", params.l)?)?,
        Family::Gnp => generators::gnp(need(f, "n", params.n)?, need(f, "p", params.p)?, seed)?,
    };
    Ok(g)
}

pub fn generate(args: &FamilyArgs) -> Result<Graph, FamilyError> {
    build(args.family, &args.params, args.seed)
}
