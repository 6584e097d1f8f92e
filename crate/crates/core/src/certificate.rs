//! Evidence that a weighted graph cannot be the minimal good resolution graph
//! of an LNE germ.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The necessary condition a graph failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LneRule {
    /// A vertex with `l_v > 0` has multiplicity different from one in `Z_min`.
    LNodeMultiplicity,
    /// The closed-form 𝒫-vector has a non-integral entry.
    NonIntegralPVector,
    /// The closed-form 𝒫-vector has a negative entry.
    NegativePVector,
    /// A vertex of positive genus is not a 𝒫-node of the refined graph.
    PositiveGenusNotPNode,
    /// `{p_v > 0}` disagrees with the `l_v > 1` / central-node description.
    PNodeCharacterization,
    /// A principal-part vertex lies on no injective path between two nodes.
    PrincipalPartCoverage,
    /// Two equivalent vertices are joined by an edge.
    CollapsedEdge,
    /// Members of an equivalence class have different multiplicities.
    ClassMultiplicity,
    /// The quotient of the principal part is not a tree.
    QuotientNotTree,
    /// The root class is not exactly the set of ℒ-nodes.
    RootClass,
    /// Inner rates do not increase strictly from the root to a Δ-node class.
    RootPathMonotonicity,
}

impl LneRule {
    pub fn as_str(self) -> &'static str {
        match self {
            LneRule::LNodeMultiplicity => "l-node-multiplicity",
            LneRule::NonIntegralPVector => "non-integral-p-vector",
            LneRule::NegativePVector => "negative-p-vector",
            LneRule::PositiveGenusNotPNode => "positive-genus-not-p-node",
            LneRule::PNodeCharacterization => "p-node-characterization",
            LneRule::PrincipalPartCoverage => "principal-part-coverage",
            LneRule::CollapsedEdge => "collapsed-edge",
            LneRule::ClassMultiplicity => "class-multiplicity",
            LneRule::QuotientNotTree => "quotient-not-tree",
            LneRule::RootClass => "root-class",
            LneRule::RootPathMonotonicity => "root-path-monotonicity",
        }
    }
}

impl fmt::Display for LneRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LneViolation {
    pub rule: LneRule,
    /// Offending vertex (or class representative), when there is one.
    pub vertex: Option<String>,
    pub detail: String,
}

impl fmt::Display for LneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.vertex {
            Some(v) => write!(f, "[{}] {}: {}", self.rule, v, self.detail),
            None => write!(f, "[{}] {}", self.rule, self.detail),
        }
    }
}

/// Non-empty list of violated necessary conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotLneCertificate {
    violations: Vec<LneViolation>,
}

impl NotLneCertificate {
    /// Returns `None` for an empty list.
    pub fn new(violations: Vec<LneViolation>) -> Option<Self> {
        (!violations.is_empty()).then_some(NotLneCertificate { violations })
    }

    pub fn single(rule: LneRule, vertex: Option<String>, detail: String) -> Self {
        NotLneCertificate {
            violations: alloc::vec![LneViolation { rule, vertex, detail }],
        }
    }

    pub fn violations(&self) -> &[LneViolation] {
        &self.violations
    }
}

impl fmt::Display for NotLneCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not LNE:")?;
        for v in &self.violations {
            write!(f, " {v};")?;
        }
        Ok(())
    }
}

/// Result of a stage that may prove the input is not LNE.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Accepted(T),
    NotLne(NotLneCertificate),
}

impl<T> Verdict<T> {
    pub fn accepted(self) -> Option<T> {
        match self {
            Verdict::Accepted(t) => Some(t),
            Verdict::NotLne(_) => None,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Verdict<U> {
        match self {
            Verdict::Accepted(t) => Verdict::Accepted(f(t)),
            Verdict::NotLne(c) => Verdict::NotLne(c),
        }
    }

    /// Panics on `NotLne`; test helper.
    #[track_caller]
    pub fn unwrap(self) -> T {
        match self {
            Verdict::Accepted(t) => t,
            Verdict::NotLne(c) => panic!("unexpected certificate: {c}"),
        }
    }
}
