//! Eggers–Wall tree of the generic discriminant curve.
//!
//! Starting from a Nash-refined graph:
//!
//! * the nodes are the ℒ-nodes, the 𝒫-nodes and the vertices of valency at
//!   least three;
//! * the principal part is what remains after repeatedly stripping non-node
//!   vertices of valency at most one;
//! * two vertices are equivalent when they have the same rate `q` and are
//!   connected through vertices of rate `≥ q`;
//! * the quotient of the principal part is the principal part of the
//!   discriminant's resolution graph, with the root class (the ℒ-nodes) and
//!   Δ-node classes (those containing 𝒫-nodes);
//! * the Eggers–Wall tree decorates quotient nodes with `e = q`, quotient edges
//!   with `lcm` of the end multiplicities, and hangs one leaf on the root and
//!   one per discriminant branch on each Δ-node class.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::arith::{format_rational, lcm, sum_ints, Int, Rational};
use crate::certificate::{LneRule, LneViolation, NotLneCertificate, Verdict};
use crate::nash::RefinedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscriminantError {
    EmptyGraph,
    /// A Δ-node class carries more branches than can be materialized.
    TooManyBranches { class: String, arrows: Int },
}

impl fmt::Display for DiscriminantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscriminantError::EmptyGraph => write!(f, "refined graph is empty"),
            DiscriminantError::TooManyBranches { class, arrows } => {
                write!(f, "class `{class}` has {arrows} branches")
            }
        }
    }
}

/// ℒ-nodes, 𝒫-nodes and vertices of valency `≥ 3`, ascending.
pub fn node_set(refined: &RefinedGraph) -> Vec<usize> {
    let g = &refined.graph;
    (0..g.vertex_count())
        .filter(|&v| refined.cycles.is_l_node(v) || refined.is_p_node(v) || g.valency(v) >= 3)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalPart {
    /// Ascending vertex positions in the refined graph.
    pub vertices: Vec<usize>,
    /// Ascending edge positions in the refined graph.
    pub edges: Vec<usize>,
    pub nodes: Vec<usize>,
}

impl PrincipalPart {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_node(&self, v: usize) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }
}

/// Strips bamboos: non-node vertices of valency `≤ 1` are removed until none
/// is left. Then checks that each surviving non-node vertex lies on an
/// injective path between two distinct nodes.
pub fn principal_part(
    refined: &RefinedGraph,
    nodes: &[usize],
) -> Result<Verdict<PrincipalPart>, DiscriminantError> {
    let g = &refined.graph;
    if g.vertex_count() == 0 || nodes.is_empty() {
        return Err(DiscriminantError::EmptyGraph);
    }
    let node_set: BTreeSet<usize> = nodes.iter().copied().collect();
    let mut alive = vec![true; g.vertex_count()];
    let mut degree: Vec<usize> = (0..g.vertex_count()).map(|v| g.valency(v)).collect();
    let mut queue: VecDeque<usize> = (0..g.vertex_count())
        .filter(|v| !node_set.contains(v) && degree[*v] <= 1)
        .collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for (_, w) in g.incident(v) {
            if alive[w] {
                degree[w] -= 1;
                if !node_set.contains(&w) && degree[w] <= 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    let vertices: Vec<usize> = (0..g.vertex_count()).filter(|&v| alive[v]).collect();
    let edges: Vec<usize> = (0..g.edge_count())
        .filter(|&e| g.edge(e).ends.iter().all(|&v| alive[v]))
        .collect();
    let pp = PrincipalPart {
        vertices,
        edges,
        nodes: nodes.to_vec(),
    };

    let violations: Vec<_> = pp
        .vertices
        .iter()
        .filter(|&&v| !pp.is_node(v) && disjoint_paths_to_nodes(refined, &pp, v) < 2)
        .map(|&v| LneViolation {
            rule: LneRule::PrincipalPartCoverage,
            vertex: Some(g.vertex_id(v).into()),
            detail: "not on an injective path between two nodes".into(),
        })
        .collect();
    Ok(match NotLneCertificate::new(violations) {
        Some(c) => Verdict::NotLne(c),
        None => Verdict::Accepted(pp),
    })
}

/// Maximum number (capped at two) of paths from `start` to distinct nodes
/// that share no vertex other than `start`, by unit-capacity augmenting
/// paths on the vertex-split principal part.
fn disjoint_paths_to_nodes(refined: &RefinedGraph, pp: &PrincipalPart, start: usize) -> usize {
    let g = &refined.graph;
    let n = g.vertex_count();
    // vertex v: in = 2v, out = 2v+1; sink = 2n
    let sink = 2 * n;
    let mut cap: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n + 1];
    let mut add = |cap: &mut BTreeMap<(usize, usize), i32>, a: usize, b: usize, c: i32| {
        *cap.entry((a, b)).or_insert(0) += c;
        cap.entry((b, a)).or_insert(0);
        adj[a].push(b);
        adj[b].push(a);
    };
    for &v in &pp.vertices {
        let through = if v == start { 2 } else { 1 };
        add(&mut cap, 2 * v, 2 * v + 1, through);
        if pp.is_node(v) && v != start {
            add(&mut cap, 2 * v, sink, 1);
        }
    }
    for &e in &pp.edges {
        let [a, b] = g.edge(e).ends;
        add(&mut cap, 2 * a + 1, 2 * b, 1);
        add(&mut cap, 2 * b + 1, 2 * a, 1);
    }
    let source = 2 * start;
    let mut flow = 0;
    while flow < 2 {
        let mut prev: Vec<Option<usize>> = vec![None; 2 * n + 1];
        let mut seen = vec![false; 2 * n + 1];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &w in &adj[u] {
                if !seen[w] && cap.get(&(u, w)).copied().unwrap_or(0) > 0 {
                    seen[w] = true;
                    prev[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        let mut w = sink;
        while let Some(u) = prev[w] {
            *cap.get_mut(&(u, w)).expect("forward arc") -= 1;
            *cap.get_mut(&(w, u)).expect("reverse arc") += 1;
            w = u;
        }
        flow += 1;
    }
    flow
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Smallest member vertex id.
    pub id: String,
    /// Ascending vertex positions.
    pub members: Vec<usize>,
    pub rate: Rational,
}

/// Partition of the principal part; classes sorted by `(rate, id)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<EquivalenceClass>,
    class_of: BTreeMap<usize, usize>,
}

impl Partition {
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.class_of.get(&v).copied()
    }
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// `v ~ v'` iff `q_v = q_{v'}` and both lie in one component of the
/// principal-part subgraph induced on `{u : q_u ≥ q_v}`. Levels are swept in
/// descending rate with a disjoint-set forest.
pub fn equivalence_classes(refined: &RefinedGraph, pp: &PrincipalPart) -> Partition {
    let g = &refined.graph;
    let rates = &refined.rates;
    let mut levels: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for &v in &pp.vertices {
        levels.entry(rates.rate(v).clone()).or_default().push(v);
    }
    let mut dsu = DisjointSet::new(g.vertex_count());
    let mut active = vec![false; g.vertex_count()];
    let mut classes = Vec::new();
    for (rate, members) in levels.iter().rev() {
        for &v in members {
            active[v] = true;
        }
        for &v in members {
            for &e in &pp.edges {
                let edge = g.edge(e);
                if edge.ends.contains(&v) {
                    let w = edge.other(v);
                    if active[w] {
                        dsu.union(v, w);
                    }
                }
            }
        }
        let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in members {
            grouped.entry(dsu.find(v)).or_default().push(v);
        }
        for (_, mut group) in grouped {
            group.sort_unstable();
            let id = group
                .iter()
                .map(|&v| g.vertex_id(v))
                .min()
                .expect("non-empty class")
                .into();
            classes.push(EquivalenceClass {
                id,
                members: group,
                rate: rate.clone(),
            });
        }
    }
    classes.sort_by(|a, b| a.rate.cmp(&b.rate).then_with(|| a.id.cmp(&b.id)));
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.members.iter().map(move |&v| (v, i)))
        .collect();
    Partition { classes, class_of }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientClass {
    pub id: String,
    pub members: Vec<usize>,
    pub rate: Rational,
    pub multiplicity: Int,
    /// `Σ p_v` over members: the number of discriminant branches through it.
    pub arrows: Int,
    pub is_root: bool,
    pub is_delta: bool,
    /// Contains a node of the refined graph.
    pub is_node: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientEdge {
    /// Class positions, smaller first.
    pub ends: [usize; 2],
    /// Principal-part edges identified into this one.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub classes: Vec<QuotientClass>,
    pub edges: Vec<QuotientEdge>,
    pub root: usize,
}

impl QuotientGraph {
    pub fn delta_classes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(|&c| self.classes[c].is_delta)
    }

    /// Parent of every class in the tree rooted at the root class.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut adj = vec![Vec::new(); self.classes.len()];
        for e in &self.edges {
            adj[e.ends[0]].push(e.ends[1]);
            adj[e.ends[1]].push(e.ends[0]);
        }
        let mut parent = vec![None; self.classes.len()];
        let mut seen = vec![false; self.classes.len()];
        seen[self.root] = true;
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Classes from the root down to `c`, inclusive.
    pub fn root_path(&self, c: usize) -> Vec<usize> {
        let parent = self.parents();
        let mut path = vec![c];
        let mut cur = c;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// Class graph of the principal part, checked to be a tree with constant
/// multiplicity per class, root class `= V_ℒ` and rates strictly increasing
/// from the root to every Δ-node class.
pub fn quotient_graph(
    refined: &RefinedGraph,
    pp: &PrincipalPart,
    partition: &Partition,
) -> Verdict<QuotientGraph> {
    let g = &refined.graph;
    let m = refined.cycles.multiplicities();
    let mut violations = Vec::new();

    let mut classes = Vec::with_capacity(partition.classes.len());
    for class in &partition.classes {
        let multiplicity = m[class.members[0]].clone();
        if let Some(&bad) = class.members.iter().find(|&&v| m[v] != multiplicity) {
            violations.push(LneViolation {
                rule: LneRule::ClassMultiplicity,
                vertex: Some(class.id.clone()),
                detail: format!(
                    "members `{}` (m={}) and `{}` (m={})",
                    g.vertex_id(class.members[0]),
                    multiplicity,
                    g.vertex_id(bad),
                    m[bad]
                ),
            });
        }
        let arrows = sum_ints(class.members.iter().map(|&v| &refined.p_vector[v]));
        classes.push(QuotientClass {
            id: class.id.clone(),
            members: class.members.clone(),
            rate: class.rate.clone(),
            multiplicity,
            arrows,
            is_root: class.members.iter().any(|&v| refined.cycles.is_l_node(v)),
            is_delta: class.members.iter().any(|&v| refined.is_p_node(v)),
            is_node: class.members.iter().any(|&v| pp.is_node(v)),
        });
    }

    let mut edge_map: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for &e in &pp.edges {
        let [a, b] = g.edge(e).ends;
        let (ca, cb) = (
            partition.class_of(a).expect("principal-part vertex"),
            partition.class_of(b).expect("principal-part vertex"),
        );
        if ca == cb {
            violations.push(LneViolation {
                rule: LneRule::CollapsedEdge,
                vertex: Some(classes[ca].id.clone()),
                detail: format!("edge `{}` joins two equivalent vertices", g.edge(e).id),
            });
            continue;
        }
        edge_map.entry([ca.min(cb), ca.max(cb)]).or_default().push(e);
    }
    let edges: Vec<QuotientEdge> = edge_map
        .into_iter()
        .map(|(ends, members)| QuotientEdge { ends, members })
        .collect();

    let roots: Vec<usize> = (0..classes.len()).filter(|&c| classes[c].is_root).collect();
    let l_nodes = refined.cycles.l_nodes();
    let root = roots.first().copied().unwrap_or(0);
    if roots.len() != 1 || classes.get(root).map(|c| c.members.as_slice()) != Some(l_nodes) {
        violations.push(LneViolation {
            rule: LneRule::RootClass,
            vertex: None,
            detail: format!(
                "{} classes contain l-nodes; root class is not exactly the l-node set",
                roots.len()
            ),
        });
    }

    let quotient = QuotientGraph {
        classes,
        edges,
        root,
    };
    let parents = quotient.parents();
    let reached = (0..quotient.classes.len())
        .filter(|&c| c == root || parents[c].is_some())
        .count();
    if reached != quotient.classes.len() || quotient.edges.len() + 1 != quotient.classes.len() {
        violations.push(LneViolation {
            rule: LneRule::QuotientNotTree,
            vertex: None,
            detail: format!(
                "{} classes, {} edges, {} reachable from the root",
                quotient.classes.len(),
                quotient.edges.len(),
                reached
            ),
        });
    } else {
        for c in quotient.delta_classes() {
            let path = quotient.root_path(c);
            if let Some(w) = path
                .windows(2)
                .find(|w| quotient.classes[w[0]].rate >= quotient.classes[w[1]].rate)
            {
                violations.push(LneViolation {
                    rule: LneRule::RootPathMonotonicity,
                    vertex: Some(quotient.classes[c].id.clone()),
                    detail: format!(
                        "rate {} at `{}` is not below {} at `{}`",
                        format_rational(&quotient.classes[w[0]].rate),
                        quotient.classes[w[0]].id,
                        format_rational(&quotient.classes[w[1]].rate),
                        quotient.classes[w[1]].id
                    ),
                });
            }
        }
    }

    match NotLneCertificate::new(violations) {
        Some(c) => Verdict::NotLne(c),
        None => Verdict::Accepted(quotient),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EwVertex {
    /// A quotient class.
    Internal {
        id: String,
        /// `e = q` on nodes; `None` on valency-two non-node classes.
        exponent: Option<Rational>,
        rate: Rational,
        multiplicity: Int,
        is_root: bool,
        is_delta: bool,
    },
    /// An attached edge's free end. `branch` is `None` for the root leaf.
    Leaf { attached_to: usize, branch: Option<usize> },
}

impl EwVertex {
    pub fn is_leaf(&self) -> bool {
        matches!(self, EwVertex::Leaf { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EwEdge {
    pub ends: [usize; 2],
    /// Edge index `i`.
    pub index: Int,
}

/// Internal vertices share positions with the quotient classes; leaves
/// follow (the root leaf first, then branches by class).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EggersWallTree {
    pub vertices: Vec<EwVertex>,
    pub edges: Vec<EwEdge>,
    pub root: usize,
}

impl EggersWallTree {
    pub fn internal_count(&self) -> usize {
        self.vertices.iter().filter(|v| !v.is_leaf()).count()
    }

    pub fn branch_leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| {
            matches!(
                self.vertices[v],
                EwVertex::Leaf {
                    branch: Some(_),
                    ..
                }
            )
        })
    }

    fn multiplicity(&self, v: usize) -> Option<&Int> {
        match &self.vertices[v] {
            EwVertex::Internal { multiplicity, .. } => Some(multiplicity),
            EwVertex::Leaf { .. } => None,
        }
    }
}

/// Builds the decorated tree from an accepted quotient.
pub fn eggers_wall_tree(q: &QuotientGraph) -> Result<EggersWallTree, DiscriminantError> {
    let mut vertices: Vec<EwVertex> = q
        .classes
        .iter()
        .map(|c| EwVertex::Internal {
            id: c.id.clone(),
            exponent: (c.is_node || c.is_root || c.is_delta).then(|| c.rate.clone()),
            rate: c.rate.clone(),
            multiplicity: c.multiplicity.clone(),
            is_root: c.is_root,
            is_delta: c.is_delta,
        })
        .collect();
    let mut edges: Vec<EwEdge> = q
        .edges
        .iter()
        .map(|e| EwEdge {
            ends: e.ends,
            index: lcm(
                &q.classes[e.ends[0]].multiplicity,
                &q.classes[e.ends[1]].multiplicity,
            ),
        })
        .collect();

    let mut attach = |vertices: &mut Vec<EwVertex>, class: usize, branch: Option<usize>| {
        let leaf = vertices.len();
        vertices.push(EwVertex::Leaf {
            attached_to: class,
            branch,
        });
        edges.push(EwEdge {
            ends: [class, leaf],
            index: q.classes[class].multiplicity.clone(),
        });
    };
    attach(&mut vertices, q.root, None);
    let mut branch = 0usize;
    for c in q.delta_classes() {
        let count = q.classes[c]
            .arrows
            .to_usize()
            .filter(|&n| n <= 1 << 20)
            .ok_or_else(|| DiscriminantError::TooManyBranches {
                class: q.classes[c].id.clone(),
                arrows: q.classes[c].arrows.clone(),
            })?;
        for _ in 0..count {
            attach(&mut vertices, c, Some(branch));
            branch += 1;
        }
    }
    Ok(EggersWallTree {
        vertices,
        edges,
        root: q.root,
    })
}

/// Exponent data of one discriminant branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchExponents {
    pub branch: usize,
    pub leaf: usize,
    /// The internal vertex the branch is attached to.
    pub attached_to: usize,
    /// `e` at every decorated node strictly above the root on the path.
    pub node_exponents: Vec<Rational>,
    /// `e` at the vertices where the multiplicity increases along the path.
    pub jump_exponents: Vec<Rational>,
}

impl BranchExponents {
    pub fn diverges(&self) -> bool {
        self.node_exponents != self.jump_exponents
    }
}

/// Exponent lists for every branch leaf, in branch order.
pub fn branch_exponent_lists(ew: &EggersWallTree) -> Vec<BranchExponents> {
    let n = ew.vertices.len();
    let mut adj = vec![Vec::new(); n];
    for e in &ew.edges {
        adj[e.ends[0]].push(e.ends[1]);
        adj[e.ends[1]].push(e.ends[0]);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[ew.root] = true;
    let mut queue = VecDeque::from([ew.root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
    }

    let mut out = Vec::new();
    for leaf in ew.branch_leaves() {
        let EwVertex::Leaf {
            attached_to,
            branch: Some(branch),
        } = ew.vertices[leaf]
        else {
            continue;
        };
        let mut path = vec![attached_to];
        let mut cur = attached_to;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        let mut node_exponents = Vec::new();
        let mut jump_exponents = Vec::new();
        for (k, &v) in path.iter().enumerate().skip(1) {
            if let EwVertex::Internal { exponent, rate, .. } = &ew.vertices[v] {
                if let Some(e) = exponent {
                    node_exponents.push(e.clone());
                }
                if ew.multiplicity(v) > ew.multiplicity(path[k - 1]) {
                    jump_exponents.push(rate.clone());
                }
            }
        }
        out.push(BranchExponents {
            branch,
            leaf,
            attached_to,
            node_exponents,
            jump_exponents,
        });
    }
    out
}

/// Everything the discriminant stage produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantData {
    pub principal_part: PrincipalPart,
    pub partition: Partition,
    pub quotient: QuotientGraph,
    pub eggers_wall: EggersWallTree,
    pub branches: Vec<BranchExponents>,
}

pub fn discriminant(refined: &RefinedGraph) -> Result<Verdict<DiscriminantData>, DiscriminantError> {
    let nodes = node_set(refined);
    let pp = match principal_part(refined, &nodes)? {
        Verdict::Accepted(pp) => pp,
        Verdict::NotLne(c) => return Ok(Verdict::NotLne(c)),
    };
    let partition = equivalence_classes(refined, &pp);
    let quotient = match quotient_graph(refined, &pp, &partition) {
        Verdict::Accepted(q) => q,
        Verdict::NotLne(c) => return Ok(Verdict::NotLne(c)),
    };
    let eggers_wall = eggers_wall_tree(&quotient)?;
    let branches = branch_exponent_lists(&eggers_wall);
    debug_assert!(branches.iter().all(|b| !b.node_exponents.iter().any(Zero::is_zero)));
    Ok(Verdict::Accepted(DiscriminantData {
        principal_part: pp,
        partition,
        quotient,
        eggers_wall,
        branches,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::cycles::lne_cycle_data;
    use crate::graph::WeightedGraph;
    use crate::metric::inner_rates;
    use crate::nash::{nash_refine, RefineOptions};

    fn refine(g: &WeightedGraph) -> RefinedGraph {
        let data = lne_cycle_data(g).unwrap().unwrap();
        let rates = inner_rates(g, &data).unwrap();
        nash_refine(g, &data, &rates, RefineOptions::default())
            .unwrap()
            .unwrap()
    }

    fn a2() -> RefinedGraph {
        refine(&WeightedGraph::build(&[("v1", 0, -2), ("v2", 0, -2)], &[("v1", "v2")]).unwrap())
    }

    fn cusp() -> RefinedGraph {
        refine(
            &WeightedGraph::build(
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
            .unwrap(),
        )
    }

    fn ids(r: &RefinedGraph, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| r.graph.vertex_id(v).into()).collect()
    }

    #[test]
    fn node_sets() {
        let c = cusp();
        assert_eq!(node_set(&c).len(), 6);
        let a = a2();
        assert_eq!(node_set(&a).len(), 3);
    }

    #[test]
    fn principal_parts_keep_everything_here() {
        for r in [cusp(), a2()] {
            let pp = principal_part(&r, &node_set(&r)).unwrap().unwrap();
            assert_eq!(pp.vertices.len(), r.graph.vertex_count());
            assert_eq!(pp.edges.len(), r.graph.edge_count());
        }
    }

    #[test]
    fn bamboo_is_stripped() {
        // Hang a non-node chain x - y off the 𝒫-node of refined A2.
        let a = a2();
        let mut extended = a.clone();
        let g = WeightedGraph::build(
            &[("v1", 0, -3), ("v2", 0, -3), ("b0", 0, -1), ("x", 0, -2), ("y", 0, -2)],
            &[("v1", "b0"), ("b0", "v2"), ("b0", "x"), ("x", "y")],
        )
        .unwrap();
        extended.graph = g;
        let m = [1, 1, 2, 1, 1].map(int).to_vec();
        extended.cycles = crate::cycles::CycleData::from_cycle(
            &extended.graph,
            crate::graph::VertexMap::from_vec(m),
        );
        let nodes = vec![0, 1, 2];
        let pp = principal_part(&extended, &nodes).unwrap().unwrap();
        assert_eq!(ids(&extended, &pp.vertices), vec!["v1", "v2", "b0"]);
        assert_eq!(pp.edges, vec![0, 1]);
    }

    #[test]
    fn cusp_classes_and_quotient() {
        let c = cusp();
        let pp = principal_part(&c, &node_set(&c)).unwrap().unwrap();
        let part = equivalence_classes(&c, &pp);
        let classes: Vec<Vec<String>> = part.classes.iter().map(|k| ids(&c, &k.members)).collect();
        assert_eq!(
            classes,
            vec![vec!["v1", "v2", "v3"], vec!["w1"], vec!["w2"], vec!["w3"]]
        );
        let q = quotient_graph(&c, &pp, &part).unwrap();
        assert_eq!(q.root, 0);
        assert_eq!(q.edges.len(), 3);
        assert!(q.edges.iter().all(|e| e.ends[0] == 0 && e.members.len() == 2));
        assert_eq!(q.delta_classes().count(), 3);
        assert!(q.classes[1..].iter().all(|k| k.arrows == int(2)));

        let ew = eggers_wall_tree(&q).unwrap();
        assert_eq!(ew.branch_leaves().count(), 6);
        assert!(ew.edges.iter().all(|e| e.index == int(1)));
        let branches = branch_exponent_lists(&ew);
        assert_eq!(branches.len(), 6);
        for b in &branches {
            assert_eq!(b.node_exponents, vec![ratio(2, 1)]);
            assert!(b.jump_exponents.is_empty());
            assert!(b.diverges());
        }
    }

    #[test]
    fn a2_classes_and_tree() {
        let a = a2();
        let pp = principal_part(&a, &node_set(&a)).unwrap().unwrap();
        let part = equivalence_classes(&a, &pp);
        let classes: Vec<Vec<String>> = part.classes.iter().map(|k| ids(&a, &k.members)).collect();
        assert_eq!(classes, vec![vec!["v1", "v2"], vec!["b0"]]);
        let q = quotient_graph(&a, &pp, &part).unwrap();
        assert_eq!(q.edges.len(), 1);
        assert_eq!(q.classes[1].multiplicity, int(2));
        assert_eq!(q.classes[1].rate, ratio(3, 2));
        assert_eq!(q.classes[1].arrows, int(1));

        let ew = eggers_wall_tree(&q).unwrap();
        assert_eq!(ew.internal_count(), 2);
        assert_eq!(ew.vertices.len(), 4);
        assert_eq!(
            ew.edges.iter().map(|e| e.index.clone()).collect::<Vec<_>>(),
            vec![int(2), int(1), int(2)]
        );
        let branches = branch_exponent_lists(&ew);
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].node_exponents, vec![ratio(3, 2)]);
        assert_eq!(branches[0].jump_exponents, vec![ratio(3, 2)]);
        assert!(!branches[0].diverges());
    }

    #[test]
    fn distinct_rates_on_a_chain_give_singletons() {
        // A3: Z = ones, l = (1,0,1), rates (1,2,1), every edge tight.
        let r = refine(
            &WeightedGraph::build(
                &[("a", 0, -2), ("b", 0, -2), ("c", 0, -2)],
                &[("a", "b"), ("b", "c")],
            )
            .unwrap(),
        );
        assert_eq!(r.blowups, 0);
        let pp = principal_part(&r, &node_set(&r)).unwrap().unwrap();
        let part = equivalence_classes(&r, &pp);
        assert_eq!(part.classes.len(), 2);
        // the two ends share rate 1 and connect through b (rate 2 ≥ 1)
        assert_eq!(part.classes[0].members, vec![0, 2]);
    }

    #[test]
    fn single_vertex_cone() {
        // cone over a smooth plane cubic: e = -3, g = 1, l = 3, p = 2(1+3-1) = 6
        let r = refine(&WeightedGraph::build(&[("v", 1, -3)], &[]).unwrap());
        assert_eq!(r.p_vector.as_slice(), &[int(6)]);
        let d = discriminant(&r).unwrap().unwrap();
        assert_eq!(d.quotient.classes.len(), 1);
        assert_eq!(d.eggers_wall.vertices.len(), 1 + 1 + 6);
        assert!(d.branches.iter().all(|b| b.node_exponents.is_empty()));
    }
}
