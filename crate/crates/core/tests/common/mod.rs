//! Fixtures shared by the integration tests: a fixed corpus and a seeded
//! generator of small weighted graphs.
#![allow(dead_code)]

use lne_core::graph::{validate_graph, Vertex};
use lne_core::pipeline::{run_pipeline, PipelineOptions, PipelineRun};
use lne_core::WeightedGraph;
use rand::Rng;

pub fn a2() -> WeightedGraph {
    WeightedGraph::build(&[("v1", 0, -2), ("v2", 0, -2)], &[("v1", "v2")]).unwrap()
}

pub fn cusp() -> WeightedGraph {
    WeightedGraph::build(
        &[
            ("v1", 0, -3),
            ("v2", 0, -3),
            ("v3", 0, -3),
            ("w1", 0, -2),
            ("w2", 0, -2),
            ("w3", 0, -2),
        ],
        &[
            ("v1", "w2"),
            ("w2", "v3"),
            ("v3", "w1"),
            ("w1", "v2"),
            ("v2", "w3"),
            ("w3", "v1"),
        ],
    )
    .unwrap()
}

fn chain(weights: &[i64]) -> WeightedGraph {
    let ids: Vec<String> = (0..weights.len()).map(|i| format!("a{i}")).collect();
    let vs: Vec<(&str, i64, i64)> = ids.iter().zip(weights).map(|(id, &e)| (id.as_str(), 0, e)).collect();
    let es: Vec<(&str, &str)> = ids.windows(2).map(|w| (w[0].as_str(), w[1].as_str())).collect();
    WeightedGraph::build(&vs, &es).unwrap()
}

/// Named graphs the pipeline is expected to accept.
pub fn corpus() -> Vec<(&'static str, WeightedGraph)> {
    vec![
        ("a2", a2()),
        ("cusp", cusp()),
        ("a1", chain(&[-2])),
        ("a3", chain(&[-2, -2, -2])),
        ("a4", chain(&[-2, -2, -2, -2])),
        ("a6", chain(&[-2, -2, -2, -2, -2, -2])),
        ("chain-2-3", chain(&[-2, -3])),
        ("chain-3-2-4", chain(&[-3, -2, -4])),
        ("smooth", chain(&[-1])),
        ("cone-5", chain(&[-5])),
        (
            "cone-elliptic",
            WeightedGraph::build(&[("v", 1, -3)], &[]).unwrap(),
        ),
        (
            "star-3",
            WeightedGraph::build(
                &[("c", 0, -3), ("x", 0, -2), ("y", 0, -2), ("z", 0, -2)],
                &[("c", "x"), ("c", "y"), ("c", "z")],
            )
            .unwrap(),
        ),
        (
            "star-heavy",
            WeightedGraph::build(
                &[("c", 0, -6), ("x", 0, -3), ("y", 0, -3), ("z", 0, -3)],
                &[("c", "x"), ("c", "y"), ("c", "z")],
            )
            .unwrap(),
        ),
        (
            "triangle",
            WeightedGraph::build(
                &[("a", 0, -3), ("b", 0, -3), ("c", 0, -3)],
                &[("a", "b"), ("b", "c"), ("c", "a")],
            )
            .unwrap(),
        ),
        (
            "double-edge",
            WeightedGraph::build(&[("a", 0, -3), ("b", 0, -3)], &[("a", "b"), ("a", "b")]).unwrap(),
        ),
    ]
}

/// A connected graph on at most `max_n` vertices. Half the time the weights
/// satisfy `e(v) ≤ −val(v)`, otherwise they are uniform in `−1..=−4`.
pub fn random_graph(rng: &mut impl Rng, max_n: usize) -> WeightedGraph {
    let n = rng.gen_range(1..=max_n);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    if n >= 3 {
        for _ in 0..rng.gen_range(0..=2) {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    let mut valency = vec![0i64; n];
    for &(a, b) in &edges {
        valency[a] += 1;
        valency[b] += 1;
    }
    let dominant = rng.gen_bool(0.5);
    let vertices = (0..n)
        .map(|v| {
            let genus = if rng.gen_bool(0.1) { 1 } else { 0 };
            let e = if dominant {
                -valency[v].max(1) - rng.gen_range(0..=2)
            } else {
                -rng.gen_range(1..=4)
            };
            Vertex::new(format!("u{v}"), genus, e)
        })
        .collect();
    let edges = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (format!("e{i}"), format!("u{a}"), format!("u{b}")))
        .collect();
    WeightedGraph::from_parts(vertices, edges).unwrap()
}

/// Full run of a valid graph the pipeline accepts.
pub fn accepted_run(g: &WeightedGraph) -> Option<PipelineRun> {
    if !validate_graph(g).is_ok() {
        return None;
    }
    let run = run_pipeline(g, &PipelineOptions::default()).expect("pipeline error");
    run.is_lne().then_some(run)
}

/// `count` random accepted graphs from a seeded stream.
pub fn random_accepted(rng: &mut impl Rng, count: usize, max_n: usize) -> Vec<(WeightedGraph, PipelineRun)> {
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 200 * count, "generator rarely produces accepted graphs");
        let g = random_graph(rng, max_n);
        if let Some(run) = accepted_run(&g) {
            out.push((g, run));
        }
    }
    out
}
