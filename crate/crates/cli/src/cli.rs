//! Argument parsing and subcommand dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lne_core::nash::DEFAULT_BLOWUP_CAP;
use lne_core::pipeline::{run_pipeline, PipelineOptions, PipelineRun, Stage};

use crate::dot::{export_dot, DotError, DotStage};
use crate::graph_file::{read_graph, LoadError};
use crate::report::{render_json, render_text};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const NOT_LNE: u8 = 3;
    pub const INTERNAL: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(
    name = "lne",
    version,
    about = "Invariants of Lipschitz normally embedded surface singularities from resolution graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the graph is connected, loop-free, correctly signed and negative definite.
    Validate(Common),
    /// Fundamental cycle, multiplicities and the l-vector.
    Zmin(Common),
    /// Inner rates.
    Rates(Common),
    /// Refine until the graph factors through the Nash transform; p-vector and local degrees.
    Nash(Common),
    /// Quotient tree and Eggers-Wall tree of the generic discriminant curve.
    Discriminant(Common),
    /// Everything.
    Report(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Graph file.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// DOT stage: input, refined, quotient or eggers_wall.
    #[arg(long)]
    pub stage: Option<String>,
    /// Maximum number of double-point blowups during refinement.
    #[arg(long, env = "LNE_BLOWUP_CAP", default_value_t = DEFAULT_BLOWUP_CAP)]
    pub blowup_cap: usize,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Validate(c)
            | Command::Zmin(c)
            | Command::Rates(c)
            | Command::Nash(c)
            | Command::Discriminant(c)
            | Command::Report(c) => c,
        }
    }

    /// Last pipeline stage this subcommand needs.
    pub fn stage(&self) -> Stage {
        match self {
            Command::Validate(_) => Stage::Validate,
            Command::Zmin(_) => Stage::Cycles,
            Command::Rates(_) => Stage::Rates,
            Command::Nash(_) => Stage::Nash,
            Command::Discriminant(_) | Command::Report(_) => Stage::Discriminant,
        }
    }

    fn default_dot_stage(&self) -> DotStage {
        match self {
            Command::Validate(_) | Command::Zmin(_) | Command::Rates(_) => DotStage::Input,
            Command::Nash(_) => DotStage::Refined,
            Command::Discriminant(_) | Command::Report(_) => DotStage::EggersWall,
        }
    }
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Output {
    fn error(code: u8, msg: impl std::fmt::Display) -> Self {
        Output {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code,
        }
    }
}

fn verdict_code(run: &PipelineRun) -> u8 {
    if !run.is_valid() {
        exit::INVALID
    } else if run.certificate.is_some() {
        exit::NOT_LNE
    } else {
        exit::OK
    }
}

pub fn execute(cli: &Cli) -> Output {
    let common = cli.command.common();
    let graph = match read_graph(&common.input) {
        Ok(g) => g,
        Err(e @ LoadError::Io { .. }) => return Output::error(exit::IO, e),
        Err(e) => return Output::error(exit::INVALID, e),
    };
    let opts = PipelineOptions {
        blowup_cap: common.blowup_cap,
        stop_after: cli.command.stage(),
    };
    let run = match run_pipeline(&graph, &opts) {
        Ok(run) => run,
        Err(e) => return Output::error(exit::INTERNAL, format_args!("internal error in {e}")),
    };
    let code = verdict_code(&run);
    match common.format {
        Format::Json => Output {
            stdout: render_json(&run, opts.stop_after),
            stderr: String::new(),
            code,
        },
        Format::Text => Output {
            stdout: render_text(&run, opts.stop_after),
            stderr: String::new(),
            code,
        },
        Format::Dot => {
            let stage = match &common.stage {
                Some(s) => match s.parse::<DotStage>() {
                    Ok(stage) => stage,
                    Err(e) => return Output::error(exit::INVALID, e),
                },
                None => cli.command.default_dot_stage(),
            };
            match export_dot(&run, stage) {
                Ok(text) => Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                },
                Err(e @ DotError::MissingStage { .. }) if code != exit::OK => Output::error(code, e),
                // asked for a stage this subcommand does not compute
                Err(e) => Output::error(exit::INVALID, e),
            }
        }
    }
}
