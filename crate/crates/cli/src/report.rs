//! JSON and plain-text reports of a pipeline run.
//!
//! Object keys keep insertion order and vertex-keyed maps follow the graph's
//! vertex order, so identical inputs give identical bytes.

use std::fmt::Write;

use lne_core::arith::format_rational;
use lne_core::discriminant::{DiscriminantData, EggersWallTree, EwVertex, QuotientGraph};
use lne_core::graph::ValidationReport;
use lne_core::pipeline::PipelineRun;
use lne_core::{Int, NotLneCertificate, Rational, RefinedGraph, Stage, VertexMap, WeightedGraph};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::graph_file::GraphFile;

pub const TOOL_NAME: &str = "lne";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of the compact serialization of `g`.
pub fn input_hash(g: &WeightedGraph) -> String {
    let digest = Sha256::digest(GraphFile::from_graph(g).canonical_json().as_bytes());
    format!("{digest:x}")
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn int_value(n: &Int) -> Value {
    match n.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(n.to_string()),
    }
}

pub fn rational_value(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn per_vertex<T>(g: &WeightedGraph, values: &VertexMap<T>, f: impl Fn(&T) -> Value) -> Value {
    let map: Map<String, Value> = values
        .iter()
        .enumerate()
        .map(|(v, x)| (g.vertex_id(v).to_string(), f(x)))
        .collect();
    Value::Object(map)
}

fn id_list(g: &WeightedGraph, vs: &[usize]) -> Value {
    vs.iter().map(|&v| Value::from(g.vertex_id(v))).collect()
}

pub fn validation_value(report: &ValidationReport) -> Value {
    json!({
        "ok": report.is_ok(),
        "connected": report.connected,
        "loop_free": report.loop_free,
        "signs_ok": report.signs_ok,
        "negative_definite": report.negative_definite,
        "failures": report.failures.iter().map(|f| json!({
            "kind": f.kind(),
            "message": f.to_string(),
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate_value(cert: &NotLneCertificate) -> Value {
    json!({
        "violations": cert.violations().iter().map(|v| json!({
            "rule": v.rule.as_str(),
            "vertex": v.vertex,
            "detail": v.detail,
        })).collect::<Vec<_>>(),
    })
}

fn refined_value(r: &RefinedGraph) -> Value {
    let g = &r.graph;
    let provenance: Map<String, Value> = r
        .provenance
        .iter()
        .map(|(id, p)| {
            (
                id.clone(),
                json!({
                    "parent_edge": p.parent_edge,
                    "from": p.from_vertex,
                    "position": rational_value(&p.position),
                    "edge_length": rational_value(&p.edge_length),
                }),
            )
        })
        .collect();
    json!({
        "graph": GraphFile::from_graph(g),
        "edge_ids": g.edges().iter().map(|e| e.id.clone()).collect::<Vec<_>>(),
        "blowups": r.blowups,
        "multiplicities": per_vertex(g, r.cycles.multiplicities(), int_value),
        "l_vector": per_vertex(g, r.cycles.l_vector(), int_value),
        "inner_rates": per_vertex(g, &r.rates.rates, rational_value),
        "provenance": provenance,
    })
}

fn quotient_value(r: &RefinedGraph, q: &QuotientGraph) -> Value {
    let g = &r.graph;
    json!({
        "root": q.classes[q.root].id,
        "classes": q.classes.iter().map(|c| json!({
            "id": c.id,
            "members": id_list(g, &c.members),
            "rate": rational_value(&c.rate),
            "multiplicity": int_value(&c.multiplicity),
            "arrows": int_value(&c.arrows),
            "root": c.is_root,
            "delta": c.is_delta,
            "node": c.is_node,
        })).collect::<Vec<_>>(),
        "edges": q.edges.iter().map(|e| json!({
            "ends": [q.classes[e.ends[0]].id, q.classes[e.ends[1]].id],
            "members": e.members.iter().map(|&x| g.edge(x).id.clone()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// Display name of an Eggers–Wall vertex.
pub fn ew_label(ew: &EggersWallTree, v: usize) -> String {
    match &ew.vertices[v] {
        EwVertex::Internal { id, .. } => id.clone(),
        EwVertex::Leaf { branch: None, .. } => "root leaf".into(),
        EwVertex::Leaf {
            branch: Some(b), ..
        } => format!("branch {b}"),
    }
}

fn eggers_wall_value(d: &DiscriminantData) -> Value {
    let ew = &d.eggers_wall;
    let vertices: Vec<Value> = ew
        .vertices
        .iter()
        .enumerate()
        .map(|(v, x)| match x {
            EwVertex::Internal {
                id,
                exponent,
                multiplicity,
                is_root,
                is_delta,
                ..
            } => json!({
                "index": v,
                "kind": "internal",
                "class": id,
                "e": exponent.as_ref().map(rational_value),
                "multiplicity": int_value(multiplicity),
                "root": is_root,
                "delta": is_delta,
            }),
            EwVertex::Leaf {
                attached_to,
                branch,
            } => json!({
                "index": v,
                "kind": "leaf",
                "attached_to": attached_to,
                "branch": branch,
            }),
        })
        .collect();
    json!({
        "root": ew.root,
        "vertices": vertices,
        "edges": ew.edges.iter().map(|e| json!({
            "ends": e.ends,
            "i": int_value(&e.index),
        })).collect::<Vec<_>>(),
        "branches": d.branches.iter().map(|b| json!({
            "branch": b.branch,
            "leaf": b.leaf,
            "attached_to": ew_label(ew, b.attached_to),
            "exponents": b.node_exponents.iter().map(rational_value).collect::<Vec<_>>(),
            "jump_exponents": b.jump_exponents.iter().map(rational_value).collect::<Vec<_>>(),
            "diverges": b.diverges(),
        })).collect::<Vec<_>>(),
    })
}

fn or_null<T>(x: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    x.map_or(Value::Null, f)
}

/// Report of every stage up to `through`. Keys for stages that did not run
/// are present and `null`.
pub fn build_report(run: &PipelineRun, through: Stage) -> Value {
    let g = &run.input;
    let mut out = Map::new();
    out.insert(
        "tool".into(),
        json!({ "name": TOOL_NAME, "version": TOOL_VERSION }),
    );
    out.insert("input_sha256".into(), input_hash(g).into());
    out.insert("input".into(), json!(GraphFile::from_graph(g)));
    out.insert("validation".into(), validation_value(&run.validation));

    if through >= Stage::Cycles {
        let c = run.cycles.as_ref();
        out.insert(
            "fundamental_cycle".into(),
            or_null(c, |c| per_vertex(g, c.z_min(), int_value)),
        );
        out.insert(
            "multiplicities".into(),
            or_null(c, |c| per_vertex(g, c.multiplicities(), int_value)),
        );
        out.insert(
            "l_vector".into(),
            or_null(c, |c| per_vertex(g, c.l_vector(), int_value)),
        );
        out.insert("l_nodes".into(), or_null(c, |c| id_list(g, c.l_nodes())));
        out.insert(
            "total_multiplicity".into(),
            or_null(run.total_multiplicity.as_ref(), int_value),
        );
    }
    if through >= Stage::Rates {
        out.insert(
            "inner_rates".into(),
            or_null(run.rates.as_ref(), |r| per_vertex(g, &r.rates, rational_value)),
        );
    }
    if through >= Stage::Nash {
        let r = run.refined.as_ref();
        out.insert("refined".into(), or_null(r, refined_value));
        out.insert(
            "p_nodes".into(),
            or_null(r, |r| id_list(&r.graph, &r.p_nodes)),
        );
        out.insert(
            "p_vector".into(),
            or_null(r, |r| per_vertex(&r.graph, &r.p_vector, int_value)),
        );
        out.insert(
            "local_degrees".into(),
            or_null(r.zip(run.local_degrees.as_ref()), |(r, d)| {
                per_vertex(&r.graph, d, int_value)
            }),
        );
    }
    if through >= Stage::Discriminant {
        let d = run.refined.as_ref().zip(run.discriminant.as_ref());
        out.insert(
            "quotient".into(),
            or_null(d, |(r, d)| quotient_value(r, &d.quotient)),
        );
        out.insert("eggers_wall".into(), or_null(d, |(_, d)| eggers_wall_value(d)));
    }
    out.insert(
        "not_lne_certificate".into(),
        or_null(run.certificate.as_ref(), certificate_value),
    );
    Value::Object(out)
}

pub fn render_json(run: &PipelineRun, through: Stage) -> String {
    let mut s = serde_json::to_string_pretty(&build_report(run, through))
        .expect("report values always serialize");
    s.push('\n');
    s
}

fn pairs<T>(g: &WeightedGraph, values: &VertexMap<T>, f: impl Fn(&T) -> String) -> String {
    values
        .iter()
        .enumerate()
        .map(|(v, x)| format!("{}={}", g.vertex_id(v), f(x)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn ids(g: &WeightedGraph, vs: &[usize]) -> String {
    if vs.is_empty() {
        return "-".into();
    }
    vs.iter().map(|&v| g.vertex_id(v)).collect::<Vec<_>>().join(" ")
}

fn rationals(rs: &[Rational]) -> String {
    let inner: Vec<_> = rs.iter().map(format_rational).collect();
    format!("[{}]", inner.join(", "))
}

/// Short human-readable summary.
pub fn render_text(run: &PipelineRun, through: Stage) -> String {
    let g = &run.input;
    let mut out = String::new();
    let _ = writeln!(out, "{TOOL_NAME} {TOOL_VERSION}");
    let _ = writeln!(out, "input        sha256:{}", input_hash(g));
    let _ = writeln!(
        out,
        "graph        {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    if run.validation.is_ok() {
        let _ = writeln!(out, "validation   ok");
    } else {
        let _ = writeln!(out, "validation   failed");
        for f in &run.validation.failures {
            let _ = writeln!(out, "  - {f}");
        }
    }
    if let Some(c) = run.cycles.as_ref().filter(|_| through >= Stage::Cycles) {
        let _ = writeln!(out, "Z_min        {}", pairs(g, c.z_min(), Int::to_string));
        let _ = writeln!(out, "l            {}", pairs(g, c.l_vector(), Int::to_string));
        let _ = writeln!(out, "L-nodes      {}", ids(g, c.l_nodes()));
        if let Some(t) = &run.total_multiplicity {
            let _ = writeln!(out, "-Z_min^2     {t}");
        }
    }
    if let Some(r) = run.rates.as_ref().filter(|_| through >= Stage::Rates) {
        let _ = writeln!(out, "rates        {}", pairs(g, &r.rates, format_rational));
    }
    if let Some(r) = run.refined.as_ref().filter(|_| through >= Stage::Nash) {
        let rg = &r.graph;
        let _ = writeln!(
            out,
            "refined      {} vertices, {} edges, {} blowups",
            rg.vertex_count(),
            rg.edge_count(),
            r.blowups
        );
        let weights: Vec<_> = rg
            .vertices()
            .iter()
            .map(|v| format!("{}={}", v.id, v.self_int))
            .collect();
        let _ = writeln!(out, "  e          {}", weights.join(" "));
        let _ = writeln!(
            out,
            "  m          {}",
            pairs(rg, r.cycles.multiplicities(), Int::to_string)
        );
        let _ = writeln!(out, "  q          {}", pairs(rg, &r.rates.rates, format_rational));
        let _ = writeln!(out, "  p          {}", pairs(rg, &r.p_vector, Int::to_string));
        let _ = writeln!(out, "  P-nodes    {}", ids(rg, &r.p_nodes));
        if let Some(d) = &run.local_degrees {
            let _ = writeln!(out, "  deg        {}", pairs(rg, d, Int::to_string));
        }
    }
    if let (Some(r), Some(d)) = (&run.refined, &run.discriminant) {
        if through >= Stage::Discriminant {
            let q = &d.quotient;
            let _ = writeln!(
                out,
                "quotient     {} classes, {} edges, root {}",
                q.classes.len(),
                q.edges.len(),
                q.classes[q.root].id
            );
            for c in &q.classes {
                let _ = writeln!(
                    out,
                    "  {:<10} {{{}}} q={} m={} arrows={}",
                    c.id,
                    ids(&r.graph, &c.members),
                    format_rational(&c.rate),
                    c.multiplicity,
                    c.arrows
                );
            }
            for b in &d.branches {
                let _ = writeln!(
                    out,
                    "branch {:<5} at {}: exponents {} jumps {}{}",
                    b.branch,
                    ew_label(&d.eggers_wall, b.attached_to),
                    rationals(&b.node_exponents),
                    rationals(&b.jump_exponents),
                    if b.diverges() { " (differ)" } else { "" }
                );
            }
        }
    }
    match &run.certificate {
        Some(cert) => {
            let _ = writeln!(out, "verdict      not LNE");
            for v in cert.violations() {
                let at = v.vertex.as_deref().map(|x| format!(" at {x}")).unwrap_or_default();
                let _ = writeln!(out, "  - {}{at}: {}", v.rule.as_str(), v.detail);
            }
        }
        None if run.validation.is_ok() && through == Stage::Discriminant => {
            let _ = writeln!(out, "verdict      LNE");
        }
        None if run.validation.is_ok() => {
            let _ = writeln!(out, "verdict      no certificate through {}", through.as_str());
        }
        None => {}
    }
    out
}
