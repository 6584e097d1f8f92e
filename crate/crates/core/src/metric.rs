//! The `1/lcm(m_v, m_w)` edge metric, inner rates and the 𝒫-vector.
//!
//! Inner rates are `q_v = d(v, V_ℒ) + 1`. The 𝒫-vector is evaluated from the
//! closed form
//!
//! ```text
//! p_v = −E_v·( Σ_{v'} (m_{v'} q_{v'} − 1) E_{v'} − (Z_Γ − Z_min) )
//! ```
//!
//! and, independently, the Laplacian identity `I·A = K + L − P` with
//! `a_v = m_v q_v` and `k_v = val(v) + 2g(v) − 2` is available as a residual.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{as_integer, format_rational, lcm, to_rational, Int, Rational};
use crate::certificate::{LneRule, LneViolation, NotLneCertificate, Verdict};
use crate::cycles::CycleData;
use crate::graph::{canonical_pairing_at, IncidenceMatrix, VertexMap, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricError {
    EmptySources,
    NonPositiveMultiplicity { vertex: usize },
    /// Some vertex is unreachable from the sources.
    Disconnected { vertex: usize },
    /// The ℒ-node shortcut `p_v = 2(g + l_v − 1)` disagrees with the closed
    /// form at an ℒ-node all of whose edges are tight. This is an algebraic
    /// identity, so a mismatch is a bug.
    ShortcutMismatch { vertex: usize, formula: Int, shortcut: Int },
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricError::EmptySources => write!(f, "distance source set is empty"),
            MetricError::NonPositiveMultiplicity { vertex } => {
                write!(f, "vertex #{vertex} has non-positive multiplicity")
            }
            MetricError::Disconnected { vertex } => {
                write!(f, "vertex #{vertex} is unreachable")
            }
            MetricError::ShortcutMismatch {
                vertex,
                formula,
                shortcut,
            } => write!(
                f,
                "p-vector at l-node #{vertex}: closed form gives {formula}, shortcut gives {shortcut}"
            ),
        }
    }
}

/// `1/lcm(m_v, m_w)`.
pub fn edge_length(m_v: &Int, m_w: &Int) -> Rational {
    Rational::new(Int::one(), lcm(m_v, m_w))
}

/// Multi-source shortest-path distances under [`edge_length`] weights.
/// Queue ties are broken by vertex id.
pub fn distance_to_set(
    g: &WeightedGraph,
    m: &VertexMap<Int>,
    sources: &[usize],
) -> Result<VertexMap<Rational>, MetricError> {
    if sources.is_empty() {
        return Err(MetricError::EmptySources);
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| !m[v].is_positive()) {
        return Err(MetricError::NonPositiveMultiplicity { vertex: v });
    }
    let mut rank = vec![0usize; g.vertex_count()];
    for (r, v) in g.id_order().into_iter().enumerate() {
        rank[v] = r;
    }
    let mut dist: Vec<Option<Rational>> = vec![None; g.vertex_count()];
    let mut done = vec![false; g.vertex_count()];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = Some(Rational::zero());
        heap.push(Reverse((Rational::zero(), rank[s], s)));
    }
    while let Some(Reverse((d, _, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for (_, w) in g.incident(v) {
            if done[w] {
                continue;
            }
            let candidate = &d + edge_length(&m[v], &m[w]);
            if dist[w].as_ref().is_none_or(|cur| candidate < *cur) {
                dist[w] = Some(candidate.clone());
                heap.push(Reverse((candidate, rank[w], w)));
            }
        }
    }
    let mut out = Vec::with_capacity(dist.len());
    for (v, d) in dist.into_iter().enumerate() {
        out.push(d.ok_or(MetricError::Disconnected { vertex: v })?);
    }
    Ok(VertexMap::from_vec(out))
}

/// Multiplicities and inner rates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateAssignment {
    pub multiplicities: VertexMap<Int>,
    pub rates: VertexMap<Rational>,
}

impl RateAssignment {
    pub fn rate(&self, v: usize) -> &Rational {
        &self.rates[v]
    }

    pub fn multiplicity(&self, v: usize) -> &Int {
        &self.multiplicities[v]
    }

    /// `d(v, w)` for an edge joining `v` and `w`.
    pub fn length(&self, v: usize, w: usize) -> Rational {
        edge_length(&self.multiplicities[v], &self.multiplicities[w])
    }

    /// Whether `|q_v − q_w| = d(v, w)` on the edge `[v, w]`.
    pub fn is_tight(&self, v: usize, w: usize) -> bool {
        (&self.rates[v] - &self.rates[w]).abs() == self.length(v, w)
    }
}

/// `q_v = d(v, V_ℒ) + 1`.
pub fn inner_rates(g: &WeightedGraph, data: &CycleData) -> Result<RateAssignment, MetricError> {
    let m = data.multiplicities().clone();
    let dist = distance_to_set(g, &m, data.l_nodes())?;
    Ok(RateAssignment {
        rates: dist.map(|d| d + Rational::one()),
        multiplicities: m,
    })
}

/// The closed-form 𝒫-vector as exact rationals, without integrality checks.
pub fn p_vector_rational(
    g: &WeightedGraph,
    data: &CycleData,
    rates: &RateAssignment,
) -> VertexMap<Rational> {
    let matrix = IncidenceMatrix::of(g);
    // Σ (m q − 1) E
    let shifted = VertexMap::from_fn(g.vertex_count(), |v| {
        to_rational(rates.multiplicity(v)) * rates.rate(v) - Rational::one()
    });
    let shifted_pairing = matrix.apply_rational(&shifted);
    let zmin_pairing = matrix.apply(data.z_min());
    VertexMap::from_fn(g.vertex_count(), |v| {
        // −E_v·(S − Z_Γ + Z_min) = −S·E_v + Z_Γ·E_v − Z_min·E_v
        -shifted_pairing[v].clone() + to_rational(&canonical_pairing_at(g, v))
            - to_rational(&zmin_pairing[v])
    })
}

/// Closed-form 𝒫-vector. Non-integral or negative entries yield a
/// certificate. At ℒ-nodes whose incident edges are all tight the value is
/// checked against `2(g + l_v − 1)`.
pub fn p_vector(
    g: &WeightedGraph,
    data: &CycleData,
    rates: &RateAssignment,
) -> Result<Verdict<VertexMap<Int>>, MetricError> {
    let raw = p_vector_rational(g, data, rates);
    let mut violations = Vec::new();
    let mut out = Vec::with_capacity(raw.len());
    for (v, p) in raw.iter().enumerate() {
        match as_integer(p) {
            Some(n) if n.is_negative() => {
                violations.push(LneViolation {
                    rule: LneRule::NegativePVector,
                    vertex: Some(g.vertex_id(v).into()),
                    detail: format!("p = {n}"),
                });
                out.push(n);
            }
            Some(n) => out.push(n),
            None => {
                violations.push(LneViolation {
                    rule: LneRule::NonIntegralPVector,
                    vertex: Some(g.vertex_id(v).into()),
                    detail: format!("p = {}", format_rational(p)),
                });
                out.push(Int::zero());
            }
        }
    }
    if let Some(cert) = NotLneCertificate::new(violations) {
        return Ok(Verdict::NotLne(cert));
    }
    for &v in data.l_nodes() {
        if g.incident(v).all(|(_, w)| rates.is_tight(v, w)) {
            let shortcut = l_node_shortcut(g, data, v);
            if shortcut != out[v] {
                return Err(MetricError::ShortcutMismatch {
                    vertex: v,
                    formula: out[v].clone(),
                    shortcut,
                });
            }
        }
    }
    Ok(Verdict::Accepted(VertexMap::from_vec(out)))
}

/// `2(g(v) + l_v − 1)`.
pub fn l_node_shortcut(g: &WeightedGraph, data: &CycleData, v: usize) -> Int {
    (Int::from(g.vertex(v).genus) + &data.l_vector()[v] - 1) * 2
}

/// The vectors of the Laplacian identity `I·A = K + L − P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianVectors {
    pub a: VertexMap<Rational>,
    pub k: VertexMap<Int>,
    pub l: VertexMap<Int>,
    pub p: VertexMap<Int>,
}

impl LaplacianVectors {
    pub fn assemble(
        g: &WeightedGraph,
        data: &CycleData,
        rates: &RateAssignment,
        p: &VertexMap<Int>,
    ) -> Self {
        LaplacianVectors {
            a: VertexMap::from_fn(g.vertex_count(), |v| {
                to_rational(rates.multiplicity(v)) * rates.rate(v)
            }),
            k: VertexMap::from_fn(g.vertex_count(), |v| {
                Int::from(g.valency(v) as i64 + 2 * g.vertex(v).genus - 2)
            }),
            l: data.l_vector().clone(),
            p: p.clone(),
        }
    }
}

/// `I·A − (K + L − P)`.
pub fn laplacian_residual(g: &WeightedGraph, vectors: &LaplacianVectors) -> VertexMap<Rational> {
    let lhs = IncidenceMatrix::of(g).apply_rational(&vectors.a);
    VertexMap::from_fn(g.vertex_count(), |v| {
        let rhs = &vectors.k[v] + &vectors.l[v] - &vectors.p[v];
        &lhs[v] - to_rational(&rhs)
    })
}

pub fn is_zero_residual(residual: &VertexMap<Rational>) -> bool {
    residual.iter().all(Zero::is_zero)
}
