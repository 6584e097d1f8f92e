//! Validation → cycles → rates → Nash refinement → discriminant, stopping at
//! the first certificate.

use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::arith::Int;
use crate::certificate::{NotLneCertificate, Verdict};
use crate::cycles::{lne_cycle_data, total_multiplicity, CycleData, CycleError};
use crate::discriminant::{discriminant, DiscriminantData, DiscriminantError};
use crate::graph::{validate_graph, ValidationReport, VertexMap, WeightedGraph};
use crate::metric::{
    inner_rates, is_zero_residual, laplacian_residual, LaplacianVectors, MetricError,
    RateAssignment,
};
use crate::nash::{local_degrees, nash_refine, NashError, RefineOptions, RefinedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Validate,
    Cycles,
    Rates,
    Nash,
    Discriminant,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Validate => "validate",
            Stage::Cycles => "cycles",
            Stage::Rates => "rates",
            Stage::Nash => "nash",
            Stage::Discriminant => "discriminant",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub blowup_cap: usize,
    /// Last stage to run.
    pub stop_after: Stage,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            blowup_cap: RefineOptions::default().blowup_cap,
            stop_after: Stage::Discriminant,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineError {
    Cycles(CycleError),
    Metric(MetricError),
    Nash(NashError),
    Discriminant(DiscriminantError),
    /// A cross-check between stages failed.
    Invariant { stage: Stage, detail: String },
}

impl PipelineError {
    pub fn stage(&self) -> Stage {
        match self {
            PipelineError::Cycles(_) => Stage::Cycles,
            PipelineError::Metric(_) => Stage::Rates,
            PipelineError::Nash(_) => Stage::Nash,
            PipelineError::Discriminant(_) => Stage::Discriminant,
            PipelineError::Invariant { stage, .. } => *stage,
        }
    }
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.stage().as_str())?;
        match self {
            PipelineError::Cycles(e) => write!(f, "{e}"),
            PipelineError::Metric(e) => write!(f, "{e}"),
            PipelineError::Nash(e) => write!(f, "{e}"),
            PipelineError::Discriminant(e) => write!(f, "{e}"),
            PipelineError::Invariant { detail, .. } => write!(f, "{detail}"),
        }
    }
}

/// Output of every stage that ran. Later stages are `None` after a
/// validation failure, a certificate, or `stop_after`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineRun {
    pub input: WeightedGraph,
    pub validation: ValidationReport,
    pub cycles: Option<CycleData>,
    pub total_multiplicity: Option<Int>,
    pub rates: Option<RateAssignment>,
    pub refined: Option<RefinedGraph>,
    pub local_degrees: Option<VertexMap<Int>>,
    pub discriminant: Option<DiscriminantData>,
    pub certificate: Option<NotLneCertificate>,
}

impl PipelineRun {
    pub fn is_valid(&self) -> bool {
        self.validation.is_ok()
    }

    pub fn is_lne(&self) -> bool {
        self.is_valid() && self.certificate.is_none()
    }
}

fn accept<T>(run: &mut PipelineRun, verdict: Verdict<T>) -> Option<T> {
    match verdict {
        Verdict::Accepted(t) => Some(t),
        Verdict::NotLne(c) => {
            run.certificate = Some(c);
            None
        }
    }
}

pub fn run_pipeline(g: &WeightedGraph, opts: &PipelineOptions) -> Result<PipelineRun, PipelineError> {
    let mut run = PipelineRun {
        input: g.clone(),
        validation: validate_graph(g),
        cycles: None,
        total_multiplicity: None,
        rates: None,
        refined: None,
        local_degrees: None,
        discriminant: None,
        certificate: None,
    };
    if !run.validation.is_ok() || opts.stop_after == Stage::Validate {
        return Ok(run);
    }

    let verdict = lne_cycle_data(g).map_err(PipelineError::Cycles)?;
    let Some(cycles) = accept(&mut run, verdict) else {
        return Ok(run);
    };
    run.total_multiplicity = Some(total_multiplicity(g, &cycles));
    run.cycles = Some(cycles.clone());
    if opts.stop_after == Stage::Cycles {
        return Ok(run);
    }

    let rates = inner_rates(g, &cycles).map_err(PipelineError::Metric)?;
    run.rates = Some(rates.clone());
    if opts.stop_after == Stage::Rates {
        return Ok(run);
    }

    let refine_opts = RefineOptions {
        blowup_cap: opts.blowup_cap,
    };
    let verdict = nash_refine(g, &cycles, &rates, refine_opts).map_err(PipelineError::Nash)?;
    let Some(refined) = accept(&mut run, verdict) else {
        return Ok(run);
    };
    let vectors = LaplacianVectors::assemble(
        &refined.graph,
        &refined.cycles,
        &refined.rates,
        &refined.p_vector,
    );
    let residual = laplacian_residual(&refined.graph, &vectors);
    if !is_zero_residual(&residual) {
        return Err(PipelineError::Invariant {
            stage: Stage::Nash,
            detail: format!("Laplacian identity fails on the refined graph: {residual:?}"),
        });
    }
    run.local_degrees = Some(local_degrees(&refined));
    run.refined = Some(refined.clone());
    if opts.stop_after == Stage::Nash {
        return Ok(run);
    }

    let verdict = discriminant(&refined).map_err(PipelineError::Discriminant)?;
    run.discriminant = accept(&mut run, verdict);
    Ok(run)
}
