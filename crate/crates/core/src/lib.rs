//! Combinatorial invariants of Lipschitz normally embedded (LNE) normal
//! surface singularities, computed from the weighted dual graph of the
//! minimal good resolution.
//!
//! The pipeline runs in stages, each a pure function of the previous one:
//!
//! 1. [`graph`]: weighted dual graphs, the intersection pairing, Sylvester's
//!    criterion and the double-point blowup.
//! 2. [`cycles`]: the fundamental cycle (Laufer's algorithm), multiplicities
//!    and the ℒ-vector.
//! 3. [`metric`]: the `1/lcm` edge metric, inner rates and the 𝒫-vector,
//!    with the Laplacian identity `I·A = K + L − P` as a cross-check.
//! 4. [`nash`]: refinement of the graph by double-point blowups until it
//!    factors through the Nash transform, 𝒫-nodes and local degrees.
//! 5. [`discriminant`]: principal part, the rate-level equivalence relation,
//!    its quotient tree and the Eggers–Wall tree of the generic discriminant
//!    curve.
//!
//! [`pipeline`] chains the stages and stops at the first [`NotLneCertificate`].
//!
//! All arithmetic is exact (`BigInt` / `BigRational`). The crate is `no_std`
//! and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod arith;
pub mod certificate;
pub mod cycles;
pub mod discriminant;
pub mod graph;
pub mod metric;
pub mod nash;
pub mod pipeline;

pub use arith::{Int, Rational};
pub use certificate::{LneRule, LneViolation, NotLneCertificate, Verdict};
pub use cycles::CycleData;
pub use discriminant::{EggersWallTree, QuotientGraph};
pub use graph::{Divisor, VertexMap, WeightedGraph};
pub use metric::RateAssignment;
pub use nash::RefinedGraph;
pub use pipeline::{run_pipeline, PipelineOptions, PipelineRun, Stage};
