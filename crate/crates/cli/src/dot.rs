//! Graphviz export.
//!
//! Node names are positional (`v0`, `c0`, `t0`, …) so arbitrary vertex ids
//! never clash; the ids appear in labels. ℒ- and 𝒫-arrows (and Δ-node
//! branches on the quotient) are drawn as point stubs with forward arrows.

use std::fmt::{self, Write};
use std::str::FromStr;

use lne_core::arith::format_rational;
use lne_core::discriminant::EwVertex;
use lne_core::pipeline::PipelineRun;
use lne_core::{Int, WeightedGraph};
use num_traits::ToPrimitive;

/// Beyond this many arrows at one vertex a single labelled stub is drawn.
const MAX_STUBS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotStage {
    Input,
    Refined,
    Quotient,
    EggersWall,
}

impl DotStage {
    pub fn as_str(self) -> &'static str {
        match self {
            DotStage::Input => "input",
            DotStage::Refined => "refined",
            DotStage::Quotient => "quotient",
            DotStage::EggersWall => "eggers_wall",
        }
    }
}

impl fmt::Display for DotStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DotStage {
    type Err = DotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "input" => Ok(DotStage::Input),
            "refined" => Ok(DotStage::Refined),
            "quotient" => Ok(DotStage::Quotient),
            "eggers_wall" | "eggers-wall" => Ok(DotStage::EggersWall),
            other => Err(DotError::UnknownStage(other.to_string())),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DotError {
    #[error("unknown stage `{0}` (expected input, refined, quotient or eggers_wall)")]
    UnknownStage(String),
    #[error("stage `{stage}` is not available: {reason}")]
    MissingStage { stage: DotStage, reason: &'static str },
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct Writer {
    out: String,
}

impl Writer {
    fn new(name: &str) -> Self {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        let _ = writeln!(out, "  node [shape=box fontname=\"monospace\"];");
        Writer { out }
    }

    fn node(&mut self, name: &str, label: &str, extra: &str) {
        let _ = writeln!(self.out, "  {name} [label=\"{}\"{extra}];", escape(label));
    }

    fn edge(&mut self, a: &str, b: &str, label: &str) {
        let _ = writeln!(self.out, "  {a} -- {b} [label=\"{}\"];", escape(label));
    }

    /// `count` arrow stubs named `{prefix}{owner}_{k}`.
    fn stubs(&mut self, owner: &str, prefix: &str, count: &Int, color: &str) {
        let n = count.to_usize().unwrap_or(usize::MAX);
        let (drawn, label) = if n > MAX_STUBS {
            (1, format!(" label=\"{count}\""))
        } else {
            (n, String::new())
        };
        for k in 0..drawn {
            let stub = format!("{prefix}{owner}_{k}");
            let _ = writeln!(self.out, "  {stub} [shape=point label=\"\"];");
            let _ = writeln!(
                self.out,
                "  {owner} -- {stub} [dir=forward color={color}{label}];"
            );
        }
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

fn vertex_label(g: &WeightedGraph, v: usize, m: Option<&Int>, q: Option<String>) -> String {
    let vx = g.vertex(v);
    let mut label = format!("{} | e={} g={}", vx.id, vx.self_int, vx.genus);
    if let Some(m) = m {
        let _ = write!(label, " m={m}");
    }
    if let Some(q) = q {
        let _ = write!(label, " q={q}");
    }
    label
}

fn missing(run: &PipelineRun, stage: DotStage) -> DotError {
    let reason = if !run.validation.is_ok() {
        "input failed validation"
    } else if run.certificate.is_some() {
        "input is not LNE"
    } else {
        "stage was not run"
    };
    DotError::MissingStage { stage, reason }
}

pub fn export_dot(run: &PipelineRun, stage: DotStage) -> Result<String, DotError> {
    match stage {
        DotStage::Input => Ok(input_dot(run)),
        DotStage::Refined => refined_dot(run).ok_or_else(|| missing(run, stage)),
        DotStage::Quotient => quotient_dot(run).ok_or_else(|| missing(run, stage)),
        DotStage::EggersWall => eggers_wall_dot(run).ok_or_else(|| missing(run, stage)),
    }
}

fn input_dot(run: &PipelineRun) -> String {
    let g = &run.input;
    let mut w = Writer::new("input");
    for v in 0..g.vertex_count() {
        let m = run.cycles.as_ref().map(|c| &c.multiplicities()[v]);
        let q = run.rates.as_ref().map(|r| format_rational(r.rate(v)));
        w.node(&format!("v{v}"), &vertex_label(g, v, m, q), "");
    }
    if let Some(c) = &run.cycles {
        for v in 0..g.vertex_count() {
            w.stubs(&format!("v{v}"), "L", &c.l_vector()[v], "blue");
        }
    }
    for e in g.edges() {
        w.edge(&format!("v{}", e.ends[0]), &format!("v{}", e.ends[1]), &e.id);
    }
    w.finish()
}

fn refined_dot(run: &PipelineRun) -> Option<String> {
    let r = run.refined.as_ref()?;
    let g = &r.graph;
    let mut w = Writer::new("refined");
    for v in 0..g.vertex_count() {
        let label = vertex_label(
            g,
            v,
            Some(&r.cycles.multiplicities()[v]),
            Some(format_rational(r.rates.rate(v))),
        );
        w.node(&format!("v{v}"), &label, "");
    }
    for v in 0..g.vertex_count() {
        w.stubs(&format!("v{v}"), "L", &r.cycles.l_vector()[v], "blue");
        w.stubs(&format!("v{v}"), "P", &r.p_vector[v], "red");
    }
    for e in g.edges() {
        w.edge(&format!("v{}", e.ends[0]), &format!("v{}", e.ends[1]), &e.id);
    }
    Some(w.finish())
}

fn quotient_dot(run: &PipelineRun) -> Option<String> {
    let q = &run.discriminant.as_ref()?.quotient;
    let mut w = Writer::new("quotient");
    for (i, c) in q.classes.iter().enumerate() {
        let label = format!(
            "{} | q={} m={} size={}",
            c.id,
            format_rational(&c.rate),
            c.multiplicity,
            c.members.len()
        );
        let extra = if c.is_root { " peripheries=2" } else { "" };
        w.node(&format!("c{i}"), &label, extra);
    }
    for (i, c) in q.classes.iter().enumerate() {
        if c.is_delta {
            w.stubs(&format!("c{i}"), "D", &c.arrows, "red");
        }
    }
    for e in &q.edges {
        w.edge(
            &format!("c{}", e.ends[0]),
            &format!("c{}", e.ends[1]),
            &e.members.len().to_string(),
        );
    }
    Some(w.finish())
}

fn eggers_wall_dot(run: &PipelineRun) -> Option<String> {
    let ew = &run.discriminant.as_ref()?.eggers_wall;
    let mut w = Writer::new("eggers_wall");
    for (i, v) in ew.vertices.iter().enumerate() {
        match v {
            EwVertex::Internal {
                id,
                exponent,
                multiplicity,
                is_root,
                ..
            } => {
                let mut label = format!("{id} |");
                if let Some(e) = exponent {
                    let _ = write!(label, " e={}", format_rational(e));
                }
                let _ = write!(label, " m={multiplicity}");
                let extra = if *is_root { " peripheries=2" } else { "" };
                w.node(&format!("t{i}"), &label, extra);
            }
            EwVertex::Leaf { .. } => {
                w.node(&format!("t{i}"), "", " shape=point");
            }
        }
    }
    for e in &ew.edges {
        w.edge(
            &format!("t{}", e.ends[0]),
            &format!("t{}", e.ends[1]),
            &format!("i={}", e.index),
        );
    }
    Some(w.finish())
}
