//! Refinement to the minimal good resolution factoring through the Nash
//! transform, 𝒫-nodes and local degrees.
//!
//! An edge `[v, v']` is blown up while `|q_v − q_{v'}| < d(v, v')`. The rate
//! along such an edge rises with slope one from both ends to a single
//! 𝒫-node of rate `(d + q_v + q_{v'})/2`, which the loop reaches by
//! repeatedly subdividing the edge that contains it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{format_rational, to_rational, Int, Rational};
use crate::certificate::{LneRule, LneViolation, NotLneCertificate, Verdict};
use crate::cycles::CycleData;
use crate::graph::{blow_up_double_point, GraphError, VertexMap, WeightedGraph};
use crate::metric::{
    edge_length, inner_rates, p_vector, p_vector_rational, MetricError, RateAssignment,
};

pub const DEFAULT_BLOWUP_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefineOptions {
    pub blowup_cap: usize,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions {
            blowup_cap: DEFAULT_BLOWUP_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NashError {
    CapExceeded { cap: usize, dump: String },
    Graph(GraphError),
    Metric(MetricError),
    /// A postcondition of the refinement failed.
    Invariant(String),
}

impl fmt::Display for NashError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NashError::CapExceeded { cap, dump } => {
                write!(f, "refinement exceeded {cap} blowups; {dump}")
            }
            NashError::Graph(e) => write!(f, "{e}"),
            NashError::Metric(e) => write!(f, "{e}"),
            NashError::Invariant(msg) => write!(f, "refinement invariant violated: {msg}"),
        }
    }
}

impl From<GraphError> for NashError {
    fn from(e: GraphError) -> Self {
        NashError::Graph(e)
    }
}

impl From<MetricError> for NashError {
    fn from(e: MetricError) -> Self {
        NashError::Metric(e)
    }
}

/// Where a created vertex sits on an edge of the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub parent_edge: String,
    /// First endpoint of the parent edge; positions are measured from it.
    pub from_vertex: String,
    /// Distance from `from_vertex`, in `(0, edge_length)`.
    pub position: Rational,
    pub edge_length: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedGraph {
    pub graph: WeightedGraph,
    /// Pulled-back fundamental cycle and ℒ-vector (zero on created vertices).
    pub cycles: CycleData,
    pub rates: RateAssignment,
    pub p_vector: VertexMap<Int>,
    /// Ascending vertex positions.
    pub p_nodes: Vec<usize>,
    /// Keyed by created vertex id.
    pub provenance: BTreeMap<String, Provenance>,
    pub blowups: usize,
}

impl RefinedGraph {
    pub fn is_p_node(&self, v: usize) -> bool {
        self.p_nodes.binary_search(&v).is_ok()
    }
}

/// Incident edges whose far end has strictly smaller rate; parallel edges
/// count separately.
pub fn incoming_edge_count(g: &WeightedGraph, rates: &RateAssignment, v: usize) -> usize {
    g.incident(v)
        .filter(|&(_, w)| rates.rate(w) < rates.rate(v))
        .count()
}

/// `{v : l_v > 1 or v has at least two incoming edges}`, compared against
/// `{v : p_v > 0}` from the closed form. Disagreement is a certificate.
pub fn p_nodes(
    g: &WeightedGraph,
    data: &CycleData,
    rates: &RateAssignment,
) -> Result<Verdict<Vec<usize>>, MetricError> {
    let p = match p_vector(g, data, rates)? {
        Verdict::Accepted(p) => p,
        Verdict::NotLne(c) => return Ok(Verdict::NotLne(c)),
    };
    Ok(check_p_node_characterization(g, data, rates, &p))
}

fn check_p_node_characterization(
    g: &WeightedGraph,
    data: &CycleData,
    rates: &RateAssignment,
    p: &VertexMap<Int>,
) -> Verdict<Vec<usize>> {
    let mut violations = Vec::new();
    let mut nodes = Vec::new();
    for v in 0..g.vertex_count() {
        let incoming = incoming_edge_count(g, rates, v);
        let structural = data.l_vector()[v] > Int::from(1) || incoming >= 2;
        let by_formula = p[v].is_positive();
        if structural != by_formula {
            violations.push(LneViolation {
                rule: LneRule::PNodeCharacterization,
                vertex: Some(g.vertex_id(v).into()),
                detail: format!(
                    "p = {} but l = {} with {} incoming edges",
                    p[v],
                    data.l_vector()[v],
                    incoming
                ),
            });
        }
        if by_formula {
            nodes.push(v);
        }
    }
    match NotLneCertificate::new(violations) {
        Some(c) => Verdict::NotLne(c),
        None => Verdict::Accepted(nodes),
    }
}

/// `|q_v − q_{v'}| < 1/lcm(m_v, m_{v'})`.
pub fn edge_needs_blowup(end_a: (&Rational, &Int), end_b: (&Rational, &Int)) -> bool {
    (end_a.0 - end_b.0).abs() < edge_length(end_a.1, end_b.1)
}

/// Rate of the unique 𝒫-node inside a slack edge: `(d + q_v + q_{v'})/2`.
pub fn interior_p_node_rate(q_v: &Rational, q_w: &Rational, d: &Rational) -> Rational {
    (d + q_v + q_w) / Rational::from_integer(Int::from(2))
}

/// `l_v` on ℒ-nodes, the number of incoming edges elsewhere.
pub fn local_degree(g: &WeightedGraph, data: &CycleData, rates: &RateAssignment, v: usize) -> Int {
    if data.is_l_node(v) {
        data.l_vector()[v].clone()
    } else {
        Int::from(incoming_edge_count(g, rates, v))
    }
}

#[derive(Clone, Debug)]
struct EdgeOrigin {
    input_edge: String,
    from_vertex: String,
    input_length: Rational,
    /// Positions of the current edge's two endpoints on the input edge.
    ends: [Rational; 2],
}

/// Blows up slack edges (smallest edge id first, rates recomputed after each
/// blowup) until every edge is tight.
pub fn nash_refine(
    g: &WeightedGraph,
    data: &CycleData,
    rates: &RateAssignment,
    options: RefineOptions,
) -> Result<Verdict<RefinedGraph>, NashError> {
    let mut graph = g.clone();
    let mut cycles = data.clone();
    let mut current = rates.clone();

    let mut origins: BTreeMap<String, EdgeOrigin> = BTreeMap::new();
    let mut expected_peaks: BTreeMap<String, Rational> = BTreeMap::new();
    for e in g.edges() {
        let [a, b] = e.ends;
        let len = rates.length(a, b);
        origins.insert(
            e.id.clone(),
            EdgeOrigin {
                input_edge: e.id.clone(),
                from_vertex: g.vertex_id(a).to_string(),
                input_length: len.clone(),
                ends: [Rational::zero(), len.clone()],
            },
        );
        if edge_needs_blowup((rates.rate(a), rates.multiplicity(a)), (rates.rate(b), rates.multiplicity(b))) {
            expected_peaks.insert(
                e.id.clone(),
                interior_p_node_rate(rates.rate(a), rates.rate(b), &len),
            );
        }
    }

    let mut provenance = BTreeMap::new();
    let mut created_on: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut blowups = 0usize;
    loop {
        let slack = graph.edge_id_order().into_iter().find(|&e| {
            let [a, b] = graph.edge(e).ends;
            !current.is_tight(a, b)
        });
        let Some(ei) = slack else { break };
        if blowups >= options.blowup_cap {
            let [a, b] = graph.edge(ei).ends;
            return Err(NashError::CapExceeded {
                cap: options.blowup_cap,
                dump: format!(
                    "{} vertices, {} edges; next slack edge `{}` = [{} (q={}, m={}), {} (q={}, m={})]",
                    graph.vertex_count(),
                    graph.edge_count(),
                    graph.edge(ei).id,
                    graph.vertex_id(a),
                    format_rational(current.rate(a)),
                    current.multiplicity(a),
                    graph.vertex_id(b),
                    format_rational(current.rate(b)),
                    current.multiplicity(b),
                ),
            });
        }
        let edge_id = graph.edge(ei).id.clone();
        let origin = origins
            .remove(&edge_id)
            .ok_or_else(|| NashError::Invariant(format!("edge `{edge_id}` has no origin")))?;
        let [a, b] = graph.edge(ei).ends;
        let blown = blow_up_double_point(&graph, cycles.multiplicities(), &edge_id)?;
        let w = blown.new_vertex;

        let next_cycles = CycleData::from_cycle(&blown.graph, blown.multiplicities.clone());
        for v in 0..graph.vertex_count() {
            if next_cycles.l_vector()[v] != cycles.l_vector()[v] {
                return Err(NashError::Invariant(format!(
                    "I·m = −L broken at `{}` after blowing up `{edge_id}`",
                    graph.vertex_id(v)
                )));
            }
        }
        if !next_cycles.l_vector()[w].is_zero() {
            return Err(NashError::Invariant(format!(
                "created vertex `{}` has non-zero l",
                blown.graph.vertex_id(w)
            )));
        }
        let next_rates = inner_rates(&blown.graph, &next_cycles)?;
        for v in 0..graph.vertex_count() {
            if next_rates.rate(v) != current.rate(v) {
                return Err(NashError::Invariant(format!(
                    "rate of `{}` changed after blowing up `{edge_id}`",
                    graph.vertex_id(v)
                )));
            }
        }

        // position of w along the input edge
        let from_a = next_rates.length(a, w);
        let towards_b = origin.ends[1] > origin.ends[0];
        let pos_w = if towards_b {
            &origin.ends[0] + &from_a
        } else {
            &origin.ends[0] - &from_a
        };
        let to_b = next_rates.length(w, b);
        let expected_b = if towards_b { &pos_w + &to_b } else { &pos_w - &to_b };
        if expected_b != origin.ends[1] {
            return Err(NashError::Invariant(format!(
                "subdivision of `{edge_id}` does not preserve its length"
            )));
        }
        let w_id = blown.graph.vertex_id(w).to_string();
        provenance.insert(
            w_id,
            Provenance {
                parent_edge: origin.input_edge.clone(),
                from_vertex: origin.from_vertex.clone(),
                position: pos_w.clone(),
                edge_length: origin.input_length.clone(),
            },
        );
        created_on
            .entry(origin.input_edge.clone())
            .or_default()
            .push(w);
        for (k, &ne) in blown.new_edges.iter().enumerate() {
            let ends = if k == 0 {
                [origin.ends[0].clone(), pos_w.clone()]
            } else {
                [pos_w.clone(), origin.ends[1].clone()]
            };
            origins.insert(
                blown.graph.edge(ne).id.clone(),
                EdgeOrigin {
                    ends,
                    ..origin.clone()
                },
            );
        }

        graph = blown.graph;
        cycles = next_cycles;
        current = next_rates;
        blowups += 1;
    }

    for e in graph.edges() {
        if !current.is_tight(e.ends[0], e.ends[1]) {
            return Err(NashError::Invariant(format!("edge `{}` is still slack", e.id)));
        }
    }
    for (edge, peak) in &expected_peaks {
        let created = created_on.get(edge).map(Vec::as_slice).unwrap_or(&[]);
        let top = created.iter().max_by(|&&x, &&y| current.rate(x).cmp(current.rate(y)));
        match top {
            Some(&v) if current.rate(v) == peak && incoming_edge_count(&graph, &current, v) == 2 => {}
            _ => {
                return Err(NashError::Invariant(format!(
                    "edge `{edge}` did not produce a 𝒫-node of rate {}",
                    format_rational(peak)
                )))
            }
        }
    }

    let p = match p_vector(&graph, &cycles, &current)? {
        Verdict::Accepted(p) => p,
        Verdict::NotLne(c) => return Ok(Verdict::NotLne(c)),
    };
    let p_nodes = match check_p_node_characterization(&graph, &cycles, &current, &p) {
        Verdict::Accepted(n) => n,
        Verdict::NotLne(c) => return Ok(Verdict::NotLne(c)),
    };

    // Σ m_v p_v is unchanged by double-point blowups.
    let weighted = |m: &VertexMap<Int>, p: &VertexMap<Rational>| {
        m.iter()
            .zip(p.iter())
            .fold(Rational::zero(), |acc, (m, p)| acc + to_rational(m) * p)
    };
    let coarse_total = weighted(data.multiplicities(), &p_vector_rational(g, data, rates));
    let refined_total = weighted(cycles.multiplicities(), &p.map(to_rational));
    if coarse_total != refined_total {
        return Err(NashError::Invariant(format!(
            "Σ m·p changed from {} to {}",
            format_rational(&coarse_total),
            format_rational(&refined_total)
        )));
    }

    let genus_violations: Vec<_> = (0..graph.vertex_count())
        .filter(|&v| graph.vertex(v).genus > 0 && !p[v].is_positive())
        .map(|v| LneViolation {
            rule: LneRule::PositiveGenusNotPNode,
            vertex: Some(graph.vertex_id(v).into()),
            detail: format!("genus {} but p = {}", graph.vertex(v).genus, p[v]),
        })
        .collect();
    if let Some(c) = NotLneCertificate::new(genus_violations) {
        return Ok(Verdict::NotLne(c));
    }

    Ok(Verdict::Accepted(RefinedGraph {
        graph,
        cycles,
        rates: current,
        p_vector: p,
        p_nodes,
        provenance,
        blowups,
    }))
}

/// Local degree of every vertex of a refined graph.
pub fn local_degrees(refined: &RefinedGraph) -> VertexMap<Int> {
    VertexMap::from_fn(refined.graph.vertex_count(), |v| {
        local_degree(&refined.graph, &refined.cycles, &refined.rates, v)
    })
}
