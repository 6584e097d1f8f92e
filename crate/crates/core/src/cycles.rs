//! Fundamental cycle, multiplicities and the ℒ-vector.
//!
//! For an LNE germ the maximal ideal cycle equals the fundamental cycle
//! `Z_min`, so the multiplicities `m_v` and `l_v = −Z_min·E_v` are read off
//! the graph alone.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{sum_ints, Int};
use crate::certificate::{LneRule, LneViolation, NotLneCertificate, Verdict};
use crate::graph::{intersection, Divisor, IncidenceMatrix, VertexMap, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleError {
    /// Laufer's iteration passed its coefficient budget; the input cannot have
    /// been negative definite.
    LauferCapExceeded { cap: Int },
    EmptyGraph,
}

impl fmt::Display for CycleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleError::LauferCapExceeded { cap } => write!(
                f,
                "Laufer iteration exceeded coefficient sum {cap}; input is not negative definite"
            ),
            CycleError::EmptyGraph => write!(f, "graph has no vertices"),
        }
    }
}

/// Coefficient-sum budget: `64·|V|·max|e(v)|`.
pub fn laufer_cap(g: &WeightedGraph) -> Int {
    let max_e = g
        .vertices()
        .iter()
        .map(|v| v.self_int.unsigned_abs())
        .max()
        .unwrap_or(1)
        .max(1);
    Int::from(64u64) * Int::from(g.vertex_count() as u64) * Int::from(max_e)
}

/// Minimal nonzero element of the Lipman cone `{Z : Z·E_v ≤ 0 ∀v}`.
pub fn fundamental_cycle(g: &WeightedGraph) -> Result<Divisor, CycleError> {
    fundamental_cycle_traced(g, |_| {})
}

/// Laufer's algorithm, calling `observe` on every intermediate cycle.
///
/// Starts from `Σ E_v` (the fundamental cycle has full support on a connected
/// graph) and adds `E_v` while some `Z·E_v > 0`, choosing the smallest such
/// vertex id.
pub fn fundamental_cycle_traced(
    g: &WeightedGraph,
    mut observe: impl FnMut(&Divisor),
) -> Result<Divisor, CycleError> {
    if g.vertex_count() == 0 {
        return Err(CycleError::EmptyGraph);
    }
    let matrix = IncidenceMatrix::of(g);
    let order = g.id_order();
    let cap = laufer_cap(g);
    let mut z = Divisor::ones(g);
    let mut pairing = matrix.apply(&z);
    let mut total = Int::from(g.vertex_count());
    observe(&z);
    while let Some(&v) = order.iter().find(|&&v| pairing[v].is_positive()) {
        z.set(v, &z[v] + 1);
        total += 1;
        if total > cap {
            return Err(CycleError::LauferCapExceeded { cap });
        }
        for u in 0..g.vertex_count() {
            let updated = &pairing[u] + matrix.entry(u, v);
            pairing.set(u, updated);
        }
        observe(&z);
    }
    Ok(z)
}

/// `v ↦ −Z·E_v`.
pub fn l_vector(g: &WeightedGraph, z: &Divisor) -> VertexMap<Int> {
    IncidenceMatrix::of(g).apply(z).map(|x| -x)
}

/// Fundamental cycle data of an accepted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleData {
    z_min: Divisor,
    l_vector: VertexMap<Int>,
    l_nodes: Vec<usize>,
}

impl CycleData {
    /// Assembles cycle data from a Lipman-cone divisor, recomputing `L`.
    pub(crate) fn from_cycle(g: &WeightedGraph, z_min: Divisor) -> Self {
        let l_vector = l_vector(g, &z_min);
        let l_nodes = (0..g.vertex_count())
            .filter(|&v| l_vector[v].is_positive())
            .collect();
        CycleData {
            z_min,
            l_vector,
            l_nodes,
        }
    }

    pub fn z_min(&self) -> &Divisor {
        &self.z_min
    }

    /// `m_v`, the coefficients of `Z_min`.
    pub fn multiplicities(&self) -> &Divisor {
        &self.z_min
    }

    pub fn l_vector(&self) -> &VertexMap<Int> {
        &self.l_vector
    }

    /// Positions of the ℒ-nodes `{v : l_v > 0}`, ascending.
    pub fn l_nodes(&self) -> &[usize] {
        &self.l_nodes
    }

    pub fn is_l_node(&self, v: usize) -> bool {
        self.l_nodes.binary_search(&v).is_ok()
    }
}

/// `Z_min`, `m`, `L` and `V_ℒ`, or a certificate when an ℒ-node has
/// multiplicity other than one.
pub fn lne_cycle_data(g: &WeightedGraph) -> Result<Verdict<CycleData>, CycleError> {
    let z = fundamental_cycle(g)?;
    let data = CycleData::from_cycle(g, z);
    let violations: Vec<_> = data
        .l_nodes
        .iter()
        .filter(|&&v| !data.z_min[v].is_one())
        .map(|&v| LneViolation {
            rule: LneRule::LNodeMultiplicity,
            vertex: Some(g.vertex_id(v).into()),
            detail: format!(
                "l = {} but multiplicity in Z_min is {}",
                data.l_vector[v], data.z_min[v]
            ),
        })
        .collect();
    Ok(match NotLneCertificate::new(violations) {
        Some(cert) => Verdict::NotLne(cert),
        None => Verdict::Accepted(data),
    })
}

/// `−Z_min·Z_min`, equal to `Σ m_v l_v`.
pub fn total_multiplicity(g: &WeightedGraph, data: &CycleData) -> Int {
    let self_int = intersection(g, &data.z_min, &data.z_min)
        .expect("cycle data is defined on the graph's vertex set");
    debug_assert_eq!(
        -self_int.clone(),
        sum_ints(
            &data
                .z_min
                .iter()
                .zip(data.l_vector.iter())
                .map(|(m, l)| m * l)
                .collect::<Vec<_>>()
        )
    );
    if self_int.is_zero() {
        Int::zero()
    } else {
        -self_int
    }
}
