//! Weighted dual graphs and their intersection theory.
//!
//! Vertices carry a genus `g(v) ≥ 0` and a self-intersection `e(v) < 0`;
//! edges are identified by id, so parallel edges are distinct double points.
//! A [`Divisor`] is an integer vector indexed by vertex position, and the
//! intersection pairing is `D·D' = Dᵀ I D'` with `I` the incidence matrix.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_traits::{One, Signed, Zero};

use crate::arith::{leading_principal_minors, to_rational, Int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: i64,
    pub self_int: i64,
}

impl Vertex {
    pub fn new(id: impl Into<String>, genus: i64, self_int: i64) -> Self {
        Vertex {
            id: id.into(),
            genus,
            self_int,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Vertex positions; equal entries mean a loop (rejected by validation).
    pub ends: [usize; 2],
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    UnknownVertex(String),
    UnknownEdge(String),
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            GraphError::UnknownEdge(e) => write!(f, "unknown edge `{e}`"),
            GraphError::DimensionMismatch { expected, found } => write!(
                f,
                "divisor has {found} coefficients but the graph has {expected} vertices"
            ),
        }
    }
}

/// Values indexed by vertex position in a [`WeightedGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap<T> {
    values: Vec<T>,
}

impl<T> VertexMap<T> {
    pub fn from_vec(values: Vec<T>) -> Self {
        VertexMap { values }
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> T) -> Self {
        VertexMap {
            values: (0..len).map(f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<&T> {
        self.values.get(v)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, T> {
        self.values.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn push(&mut self, value: T) {
        self.values.push(value);
    }

    pub fn set(&mut self, v: usize, value: T) {
        self.values[v] = value;
    }

    pub fn into_vec(self) -> Vec<T> {
        self.values
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> VertexMap<U> {
        VertexMap {
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<T> Index<usize> for VertexMap<T> {
    type Output = T;

    fn index(&self, v: usize) -> &T {
        &self.values[v]
    }
}

pub type Divisor = VertexMap<Int>;
pub type RationalDivisor = VertexMap<Rational>;

impl Divisor {
    pub fn zero(g: &WeightedGraph) -> Self {
        VertexMap::from_fn(g.vertex_count(), |_| Int::zero())
    }

    /// The reduced divisor `Σ_v E_v`.
    pub fn ones(g: &WeightedGraph) -> Self {
        VertexMap::from_fn(g.vertex_count(), |_| Int::one())
    }

    /// `E_v` for the vertex at position `v`.
    pub fn point_mass(g: &WeightedGraph, v: usize) -> Self {
        VertexMap::from_fn(g.vertex_count(), |u| if u == v { Int::one() } else { Int::zero() })
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        VertexMap::from_vec(values.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn to_rational(&self) -> RationalDivisor {
        self.map(to_rational)
    }
}

/// A finite connected graph with genus and self-intersection weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vertex_index: BTreeMap<String, usize>,
    edge_index: BTreeMap<String, usize>,
    next_created: u64,
}

impl WeightedGraph {
    /// Builds a graph from vertices and `(edge id, endpoint id, endpoint id)`
    /// triples. Reports every duplicate id and dangling endpoint at once.
    /// Loops and sign violations are accepted here and reported by
    /// [`validate_graph`].
    pub fn from_parts(
        vertices: Vec<Vertex>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Self, Vec<ValidationFailure>> {
        let mut failures = Vec::new();
        let mut vertex_index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.id.clone(), i).is_some() {
                failures.push(ValidationFailure::DuplicateVertex(v.id.clone()));
            }
        }
        let mut edge_index = BTreeMap::new();
        let mut built = Vec::with_capacity(edges.len());
        for (id, a, b) in edges {
            if edge_index.insert(id.clone(), built.len()).is_some() {
                failures.push(ValidationFailure::DuplicateEdge(id.clone()));
            }
            let mut ends = [0usize; 2];
            let mut ok = true;
            for (slot, end) in [a, b].into_iter().enumerate() {
                match vertex_index.get(&end) {
                    Some(&i) => ends[slot] = i,
                    None => {
                        ok = false;
                        failures.push(ValidationFailure::UnknownEndpoint {
                            edge: id.clone(),
                            vertex: end,
                        });
                    }
                }
            }
            if ok {
                built.push(Edge { id, ends });
            }
        }
        if failures.is_empty() {
            Ok(WeightedGraph {
                vertices,
                edges: built,
                vertex_index,
                edge_index,
                next_created: 0,
            })
        } else {
            Err(failures)
        }
    }

    /// Convenience constructor for tests and fixtures: vertices as
    /// `(id, genus, self-intersection)`, edges as endpoint pairs with ids
    /// `e0, e1, …` in order.
    pub fn build(vertices: &[(&str, i64, i64)], edges: &[(&str, &str)]) -> Result<Self, Vec<ValidationFailure>> {
        WeightedGraph::from_parts(
            vertices
                .iter()
                .map(|&(id, g, e)| Vertex::new(id, g, e))
                .collect(),
            edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| (format!("e{i}"), a.to_string(), b.to_string()))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize, GraphError> {
        self.vertex_index(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    /// Vertex positions sorted by id.
    pub fn id_order(&self) -> Vec<usize> {
        self.vertex_index.values().copied().collect()
    }

    /// Edge positions sorted by id.
    pub fn edge_id_order(&self) -> Vec<usize> {
        self.edge_index.values().copied().collect()
    }

    /// `(edge position, far endpoint)` for every edge at `v`, in edge order.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.ends.contains(&v))
            .map(move |(i, e)| (i, e.other(v)))
    }

    /// Number of incident edge endpoints.
    pub fn valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| e.ends.iter().filter(|&&x| x == v).count())
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as sorted vertex position lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for e in &self.edges {
            adjacency[e.ends[0]].push(e.ends[1]);
            adjacency[e.ends[1]].push(e.ends[0]);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn fresh_vertex_id(&mut self) -> String {
        loop {
            let id = format!("b{}", self.next_created);
            self.next_created += 1;
            if !self.vertex_index.contains_key(&id) {
                return id;
            }
        }
    }
}

/// Square integer matrix: `e(v)` on the diagonal, number of joining edges
/// off the diagonal. Loops are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    entries: Vec<Vec<Int>>,
}

impl IncidenceMatrix {
    pub fn of(g: &WeightedGraph) -> Self {
        let n = g.vertex_count();
        let mut entries = vec![vec![Int::zero(); n]; n];
        for (i, v) in g.vertices().iter().enumerate() {
            entries[i][i] = Int::from(v.self_int);
        }
        for e in g.edges() {
            let [a, b] = e.ends;
            if a != b {
                entries[a][b] += 1;
                entries[b][a] += 1;
            }
        }
        IncidenceMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.entries
    }

    /// `I·D`, whose entry at `v` is `D·E_v`.
    pub fn apply(&self, d: &Divisor) -> VertexMap<Int> {
        VertexMap::from_vec(
            self.entries
                .iter()
                .map(|row| row.iter().zip(d.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn apply_rational(&self, d: &RationalDivisor) -> RationalDivisor {
        VertexMap::from_vec(
            self.entries
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(d.iter())
                        .fold(Rational::zero(), |acc, (a, b)| acc + b * a)
                })
                .collect(),
        )
    }
}

fn check_dim(g: &WeightedGraph, d: &Divisor) -> Result<(), GraphError> {
    if d.len() == g.vertex_count() {
        Ok(())
    } else {
        Err(GraphError::DimensionMismatch {
            expected: g.vertex_count(),
            found: d.len(),
        })
    }
}

/// `D1ᵀ·I·D2`.
pub fn intersection(g: &WeightedGraph, d1: &Divisor, d2: &Divisor) -> Result<Int, GraphError> {
    check_dim(g, d1)?;
    check_dim(g, d2)?;
    let product = IncidenceMatrix::of(g).apply(d2);
    Ok(d1.iter().zip(product.iter()).map(|(a, b)| a * b).sum())
}

/// Sylvester's criterion on `I`: `(−1)^k det_k > 0` for every leading minor.
pub fn is_negative_definite(g: &WeightedGraph) -> bool {
    first_definiteness_failure(g).is_none()
}

/// 1-based order and value of the first leading minor with the wrong sign.
fn first_definiteness_failure(g: &WeightedGraph) -> Option<(usize, Int)> {
    let minors = leading_principal_minors(IncidenceMatrix::of(g).rows());
    minors.into_iter().enumerate().find_map(|(k, det)| {
        let order = k + 1;
        let signed = if order % 2 == 1 { -det.clone() } else { det.clone() };
        (!signed.is_positive()).then_some((order, det))
    })
}

/// `Z_Γ·E_v = −e(v) + 2g(v) − 2`, by vertex id.
pub fn canonical_pairing(g: &WeightedGraph, v: &str) -> Result<Int, GraphError> {
    Ok(canonical_pairing_at(g, g.require_vertex(v)?))
}

pub fn canonical_pairing_at(g: &WeightedGraph, v: usize) -> Int {
    let vx = g.vertex(v);
    Int::from(-vx.self_int + 2 * vx.genus - 2)
}

/// One violated constraint of a raw graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    Empty,
    DuplicateVertex(String),
    DuplicateEdge(String),
    UnknownEndpoint { edge: String, vertex: String },
    LoopEdge { edge: String, vertex: String },
    NonNegativeSelfIntersection { vertex: String, value: i64 },
    NegativeGenus { vertex: String, value: i64 },
    Disconnected { components: usize },
    NotNegativeDefinite { minor: usize, determinant: Int },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::Empty => write!(f, "graph has no vertices"),
            ValidationFailure::DuplicateVertex(v) => write!(f, "duplicate vertex id `{v}`"),
            ValidationFailure::DuplicateEdge(e) => write!(f, "duplicate edge id `{e}`"),
            ValidationFailure::UnknownEndpoint { edge, vertex } => {
                write!(f, "edge `{edge}` references unknown vertex `{vertex}`")
            }
            ValidationFailure::LoopEdge { edge, vertex } => {
                write!(f, "edge `{edge}` is a loop at `{vertex}`")
            }
            ValidationFailure::NonNegativeSelfIntersection { vertex, value } => {
                write!(f, "vertex `{vertex}` has self-intersection {value} (must be negative)")
            }
            ValidationFailure::NegativeGenus { vertex, value } => {
                write!(f, "vertex `{vertex}` has genus {value} (must be non-negative)")
            }
            ValidationFailure::Disconnected { components } => {
                write!(f, "graph has {components} connected components")
            }
            ValidationFailure::NotNegativeDefinite { minor, determinant } => write!(
                f,
                "incidence matrix is not negative definite (leading minor of order {minor} is {determinant})"
            ),
        }
    }
}

impl ValidationFailure {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            ValidationFailure::Empty => "empty",
            ValidationFailure::DuplicateVertex(_) => "duplicate-vertex",
            ValidationFailure::DuplicateEdge(_) => "duplicate-edge",
            ValidationFailure::UnknownEndpoint { .. } => "unknown-endpoint",
            ValidationFailure::LoopEdge { .. } => "loop-edge",
            ValidationFailure::NonNegativeSelfIntersection { .. } => "self-intersection",
            ValidationFailure::NegativeGenus { .. } => "genus",
            ValidationFailure::Disconnected { .. } => "disconnected",
            ValidationFailure::NotNegativeDefinite { .. } => "not-negative-definite",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub connected: bool,
    pub loop_free: bool,
    pub signs_ok: bool,
    pub negative_definite: bool,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// Report for a graph that could not even be assembled.
    pub fn structural(failures: Vec<ValidationFailure>) -> Self {
        ValidationReport {
            connected: false,
            loop_free: false,
            signs_ok: false,
            negative_definite: false,
            failures,
        }
    }
}

pub fn validate_graph(g: &WeightedGraph) -> ValidationReport {
    let mut failures = Vec::new();
    if g.vertex_count() == 0 {
        failures.push(ValidationFailure::Empty);
        return ValidationReport::structural(failures);
    }
    let components = g.components().len();
    if components > 1 {
        failures.push(ValidationFailure::Disconnected { components });
    }
    let mut loop_free = true;
    for e in g.edges() {
        if e.ends[0] == e.ends[1] {
            loop_free = false;
            failures.push(ValidationFailure::LoopEdge {
                edge: e.id.clone(),
                vertex: g.vertex_id(e.ends[0]).to_string(),
            });
        }
    }
    let mut signs_ok = true;
    for v in g.vertices() {
        if v.self_int >= 0 {
            signs_ok = false;
            failures.push(ValidationFailure::NonNegativeSelfIntersection {
                vertex: v.id.clone(),
                value: v.self_int,
            });
        }
        if v.genus < 0 {
            signs_ok = false;
            failures.push(ValidationFailure::NegativeGenus {
                vertex: v.id.clone(),
                value: v.genus,
            });
        }
    }
    let definiteness = first_definiteness_failure(g);
    if let Some((minor, determinant)) = definiteness.clone() {
        failures.push(ValidationFailure::NotNegativeDefinite { minor, determinant });
    }
    ValidationReport {
        connected: components == 1,
        loop_free,
        signs_ok,
        negative_definite: definiteness.is_none(),
        failures,
    }
}

/// Outcome of [`blow_up_double_point`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    pub graph: WeightedGraph,
    pub multiplicities: Divisor,
    /// Position of the exceptional vertex (always the last vertex).
    pub new_vertex: usize,
    /// Positions of the two new edges: toward the removed edge's first and
    /// second endpoint respectively.
    pub new_edges: [usize; 2],
}

/// Blows up the double point of `edge`: the edge `[v, v']` is replaced by
/// `[v, w]` and `[w, v']` with `w` a new `(-1)`-curve of genus zero,
/// `e(v)` and `e(v')` drop by one and `m_w = m_v + m_{v'}`.
///
/// New edge ids are `<edge>.0` (the `v` side) and `<edge>.1`.
pub fn blow_up_double_point(
    g: &WeightedGraph,
    m: &Divisor,
    edge: &str,
) -> Result<Blowup, GraphError> {
    check_dim(g, m)?;
    let ei = g
        .edge_index(edge)
        .ok_or_else(|| GraphError::UnknownEdge(edge.to_string()))?;
    let [a, b] = g.edge(ei).ends;

    let mut out = g.clone();
    out.vertices[a].self_int -= 1;
    out.vertices[b].self_int -= 1;
    let w_id = out.fresh_vertex_id();
    let w = out.vertices.len();
    out.vertices.push(Vertex::new(w_id.clone(), 0, -1));
    out.vertex_index.insert(w_id, w);

    out.edges.remove(ei);
    let left = Edge {
        id: format!("{edge}.0"),
        ends: [a, w],
    };
    let right = Edge {
        id: format!("{edge}.1"),
        ends: [w, b],
    };
    out.edges.push(left);
    out.edges.push(right);
    out.edge_index = out
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.clone(), i))
        .collect();

    let mut mult = m.clone();
    mult.push(&m[a] + &m[b]);
    let n_edges = out.edges.len();
    Ok(Blowup {
        graph: out,
        multiplicities: mult,
        new_vertex: w,
        new_edges: [n_edges - 2, n_edges - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, lcm, ratio};

    fn a2() -> WeightedGraph {
        WeightedGraph::build(&[("v1", 0, -2), ("v2", 0, -2)], &[("v1", "v2")]).unwrap()
    }

    fn cusp() -> WeightedGraph {
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

    #[test]
    fn a2_validates() {
        let r = validate_graph(&a2());
        assert!(r.is_ok(), "{:?}", r.failures);
        assert!(r.connected && r.loop_free && r.signs_ok && r.negative_definite);
    }

    #[test]
    fn single_minus_one_curve_validates() {
        let g = WeightedGraph::build(&[("v", 0, -1)], &[]).unwrap();
        assert!(validate_graph(&g).is_ok());
        assert!(is_negative_definite(&g));
    }

    #[test]
    fn doubled_edge_between_minus_ones_is_not_definite() {
        let g = WeightedGraph::build(&[("a", 0, -1), ("b", 0, -1)], &[("a", "b"), ("a", "b")])
            .unwrap();
        let r = validate_graph(&g);
        assert_eq!(
            r.failures,
            vec![ValidationFailure::NotNegativeDefinite {
                minor: 2,
                determinant: int(-3)
            }]
        );
    }

    #[test]
    fn every_violation_is_listed() {
        let g = WeightedGraph::build(
            &[("a", -1, 1), ("b", 0, -2), ("c", 0, -2)],
            &[("a", "a"), ("a", "b")],
        )
        .unwrap();
        let kinds: Vec<_> = validate_graph(&g).failures.iter().map(|f| f.kind()).collect();
        assert_eq!(
            kinds,
            vec!["disconnected", "loop-edge", "self-intersection", "genus", "not-negative-definite"]
        );
    }

    #[test]
    fn structural_errors_are_collected() {
        let err = WeightedGraph::from_parts(
            vec![Vertex::new("a", 0, -2), Vertex::new("a", 0, -2)],
            vec![
                ("e".into(), "a".into(), "x".into()),
                ("e".into(), "y".into(), "a".into()),
            ],
        )
        .unwrap_err();
        assert_eq!(err.len(), 4);
    }

    #[test]
    fn intersection_examples() {
        let g = a2();
        let ones = Divisor::ones(&g);
        assert_eq!(intersection(&g, &ones, &ones).unwrap(), int(-2));
        assert_eq!(intersection(&g, &Divisor::zero(&g), &ones).unwrap(), int(0));

        let c = cusp();
        let v1 = c.vertex_index("v1").unwrap();
        assert_eq!(
            intersection(&c, &Divisor::point_mass(&c, v1), &Divisor::ones(&c)).unwrap(),
            int(-1)
        );
        assert!(matches!(
            intersection(&g, &Divisor::from_i64s(&[1]), &ones),
            Err(GraphError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn definiteness_examples() {
        assert!(is_negative_definite(&a2()));
        assert!(is_negative_definite(&cusp()));
        let minors = leading_principal_minors(IncidenceMatrix::of(&cusp()).rows());
        assert_eq!(minors.len(), 6);
    }

    #[test]
    fn canonical_pairing_examples() {
        let c = cusp();
        assert_eq!(canonical_pairing(&c, "v1").unwrap(), int(1));
        assert_eq!(canonical_pairing(&c, "w1").unwrap(), int(0));
        let elliptic = WeightedGraph::build(&[("E", 1, -2)], &[]).unwrap();
        assert_eq!(canonical_pairing(&elliptic, "E").unwrap(), int(2));
        assert_eq!(
            canonical_pairing(&c, "zz"),
            Err(GraphError::UnknownVertex("zz".into()))
        );
    }

    #[test]
    fn blowup_of_a2_edge() {
        let g = a2();
        let b = blow_up_double_point(&g, &Divisor::from_i64s(&[1, 1]), "e0").unwrap();
        let weights: Vec<_> = b.graph.vertices().iter().map(|v| v.self_int).collect();
        assert_eq!(weights, vec![-3, -3, -1]);
        assert_eq!(b.multiplicities, Divisor::from_i64s(&[1, 1, 2]));
        assert_eq!(b.graph.vertex_id(b.new_vertex), "b0");
        assert_eq!(b.graph.valency(b.new_vertex), 2);
        assert!(b.graph.edge_index("e0").is_none());
        assert!(is_negative_definite(&b.graph));
        // chain order v1 - b0 - v2
        assert_eq!(b.graph.edge(b.new_edges[0]).ends, [0, 2]);
        assert_eq!(b.graph.edge(b.new_edges[1]).ends, [2, 1]);
    }

    #[test]
    fn blowup_of_cusp_edge() {
        let c = cusp();
        let b = blow_up_double_point(&c, &Divisor::ones(&c), "e5").unwrap();
        let v1 = b.graph.vertex_index("v1").unwrap();
        let w3 = b.graph.vertex_index("w3").unwrap();
        assert_eq!(b.graph.vertex(v1).self_int, -4);
        assert_eq!(b.graph.vertex(w3).self_int, -3);
        assert_eq!(b.multiplicities[b.new_vertex], int(2));
        assert_eq!(
            blow_up_double_point(&c, &Divisor::ones(&c), "nope"),
            Err(GraphError::UnknownEdge("nope".into()))
        );
    }

    #[test]
    fn repeated_blowups_keep_ids_fresh_and_lengths_additive() {
        let g = a2();
        let b1 = blow_up_double_point(&g, &Divisor::from_i64s(&[1, 1]), "e0").unwrap();
        let b2 = blow_up_double_point(&b1.graph, &b1.multiplicities, "e0.0").unwrap();
        assert_eq!(b2.graph.vertex_id(b2.new_vertex), "b1");
        assert_eq!(b2.multiplicities[b2.new_vertex], int(3));
        let m = |x: i64, y: i64| ratio(1, 1) / to_rational(&lcm(&int(x), &int(y)));
        assert_eq!(m(1, 2), m(1, 3) + m(3, 2));
        assert!(is_negative_definite(&b2.graph));
    }

    #[test]
    fn fresh_ids_skip_caller_ids() {
        let g = WeightedGraph::build(&[("b0", 0, -2), ("x", 0, -2)], &[("b0", "x")]).unwrap();
        let b = blow_up_double_point(&g, &Divisor::ones(&g), "e0").unwrap();
        assert_eq!(b.graph.vertex_id(b.new_vertex), "b1");
    }
}
