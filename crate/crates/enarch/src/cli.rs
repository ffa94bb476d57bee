//! Argument parsing and dispatch.

use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use enarch_core::SplitMode;

use crate::commands::{self, Console, SynthesisSource};
use crate::config::{Overrides, Resolved};
use crate::diag::{Diagnostics, Level};

#[derive(Debug, Parser)]
#[command(name = "enarch", version, about = "Concept maps from explanation corpora, and what lay users still need explained")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SplitArg {
    Lines,
    Sentences,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Run configuration (TOML); paths inside it are relative to its directory.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Minimum total mentions, applied to every role
    #[arg(long)]
    pub min_total: Option<u64>,
    /// Minimum number of distinct sources, applied to every role
    #[arg(long)]
    pub min_sources: Option<u64>,
    /// Longest concept candidate in words
    #[arg(long)]
    pub ngram_max: Option<usize>,
    /// Output directory (overrides the config's `out`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Statement segmentation of corpus files.
    #[arg(long, value_enum)]
    pub split: Option<SplitArg>,
    /// No summary on stdout.
    #[arg(long, short)]
    pub quiet: bool,
}

impl CommonArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            min_total: self.min_total,
            min_sources: self.min_sources,
            ngram_max: self.ngram_max,
            out: self.out.clone(),
            split: self.split.map(|s| match s {
                SplitArg::Lines => SplitMode::Lines,
                SplitArg::Sentences => SplitMode::Sentences,
            }),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract, merge and threshold one corpus into a concept map (out/<role>/).
    Reduce {
        corpus: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Classify an expert and a lay map into areas A-D (out/synthesis/).
    Synthesize {
        /// Expert map JSON.
        #[arg(required_unless_present = "corpus", requires = "lay")]
        expert: Option<PathBuf>,
        /// Lay map JSON.
        lay: Option<PathBuf>,
        /// Mixed expert/lay corpus to reduce and synthesize in one go.
        #[arg(long, conflicts_with_all = ["expert", "lay"])]
        corpus: Option<PathBuf>,
        /// Alignment file (overrides the config's `alignment`).
        #[arg(long)]
        alignment: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write an alignment skeleton with exact label matches (out/bootstrap/).
    BootstrapAlign {
        expert: PathBuf,
        lay: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Per-phase lay maps and their deltas (out/phases/).
    Phases {
        corpus: PathBuf,
        /// Expert map JSON; adds recall probe coverage.
        #[arg(long)]
        expert: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the config and the given corpora or map JSON files.
    Validate {
        paths: Vec<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Reduce { common, .. }
            | Command::Synthesize { common, .. }
            | Command::BootstrapAlign { common, .. }
            | Command::Phases { common, .. }
            | Command::Validate { common, .. } => common,
        }
    }
}

pub fn color_enabled() -> bool {
    std::env::var_os("ENARCH_NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

pub fn execute(cli: &Cli, diag: &mut Diagnostics, color: bool) -> anyhow::Result<()> {
    let common = cli.command.common();
    let console = Console {
        color,
        quiet: common.quiet,
    };
    let res = Resolved::load(common.config.as_deref(), &common.overrides())?;
    match &cli.command {
        Command::Reduce { corpus, .. } => commands::reduce(corpus, &res, diag, console).map(|_| ()),
        Command::Synthesize {
            expert,
            lay,
            corpus,
            alignment,
            ..
        } => {
            let source = match (corpus, expert, lay) {
                (Some(c), _, _) => SynthesisSource::Corpus(c.clone()),
                (None, Some(e), Some(l)) => SynthesisSource::Maps {
                    expert: e.clone(),
                    lay: l.clone(),
                },
                _ => anyhow::bail!("synthesize needs an expert and a lay map, or --corpus"),
            };
            commands::synthesize(&source, alignment.as_deref(), &res, diag, console).map(|_| ())
        }
        Command::BootstrapAlign { expert, lay, .. } => {
            commands::bootstrap_align(expert, lay, &res, diag, console).map(|_| ())
        }
        Command::Phases { corpus, expert, .. } => {
            commands::phases(corpus, expert.as_deref(), &res, diag, console).map(|_| ())
        }
        Command::Validate { paths, .. } => commands::validate(paths, &res, diag, console),
    }
}

/// Exit status 0 exactly when the command completed (and, for every command
/// but `validate`, wrote its manifest).
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut diag = Diagnostics::stderr();
    match execute(&cli, &mut diag, color_enabled()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            diag.emit(Level::Error, "run_failed", format!("{e:#}"), std::iter::empty::<(String, String)>());
            ExitCode::FAILURE
        }
    }
}
