use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mwe_triage::{CorpusConvention, Mode, ReportFormat, TreeVariant};

#[derive(Debug, Parser)]
#[command(name = "mwe-triage", version, about = "Classify verbal MWE candidates with a predicate lexicon")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every candidate of a corpus and print a verdict table.
    Classify(ClassifyArgs),
    /// Compare corpus labels with both trees and list inconsistent clusters.
    Audit(AuditArgs),
    /// Answer the tests the lexicon cannot decide.
    Session(SessionArgs),
    /// Replay an answers log and write the labelled corpus.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeArg {
    Baseline,
    Modified,
}

impl From<TreeArg> for TreeVariant {
    fn from(t: TreeArg) -> Self {
        match t {
            TreeArg::Baseline => TreeVariant::Baseline,
            TreeArg::Modified => TreeVariant::Modified,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    AssumeNo,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::AssumeNo => Mode::AssumeNo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Tsv,
    Pretty,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Tsv => ReportFormat::Tsv,
            FormatArg::Pretty => ReportFormat::Pretty,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// No span means the candidate was not annotated.
    Unannotated,
    /// No span means the candidate was judged not to be an MWE.
    NonMwe,
}

impl From<ConventionArg> for CorpusConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Unannotated => CorpusConvention::Unannotated,
            ConventionArg::NonMwe => CorpusConvention::AbsentMeansNonMwe,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Inputs {
    /// CUPT corpus.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Lexicon file; the built-in seed lexicon when absent.
    #[arg(long, env = "MWE_TRIAGE_LEXICON")]
    pub lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long, value_enum, default_value = "modified")]
    pub tree: TreeArg,
    #[arg(long, value_enum, default_value = "strict")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: FormatArg,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: FormatArg,
    #[arg(long, value_enum, default_value = "unannotated")]
    pub convention: ConventionArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write the corpus relabelled with modified-tree verdicts.
    #[arg(long)]
    pub rewrite: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SessionArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long, value_enum, default_value = "modified")]
    pub tree: TreeArg,
    /// Answers log; replayed on start when it exists, appended to as
    /// answers come in.
    #[arg(long)]
    pub answers: Option<PathBuf>,
    /// Serve the session over HTTP on this address instead of the terminal.
    #[arg(long, conflicts_with = "socket")]
    pub http: Option<String>,
    /// Serve JSON lines on this Unix socket path instead of the terminal.
    #[arg(long)]
    pub socket: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long, value_enum, default_value = "modified")]
    pub tree: TreeArg,
    #[arg(long)]
    pub answers: PathBuf,
    /// Labelled CUPT output; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write the verdict table.
    #[arg(long)]
    pub verdicts: Option<PathBuf>,
}
