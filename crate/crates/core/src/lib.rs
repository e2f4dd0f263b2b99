//! Lexicon-driven triage of verbal multiword-expression candidates.
//!
//! Candidates (a verb with a noun object or a prepositional phrase) are
//! extracted from CUPT corpora and classified as VID, LVC.full, LVC.asp or
//! non-MWE by walking a baseline or a modified decision tree whose tests are
//! answered from a predicate lexicon, or by a human in a [`session`].

pub mod audit;
pub mod cupt;
pub mod engine;
pub mod error;
pub mod lexicon;
pub mod model;
pub mod session;
pub mod tree;

pub use audit::{audit_corpus, report_render, AuditReport, AuditRow, ReportFormat};
pub use cupt::{emit_cupt, extract_candidates, parse_cupt, read_annotations, Corpus, CorpusConvention, CuptError};
pub use engine::{classify, classify_in, classify_with, Mode, Question, Verdict};
pub use error::FormatError;
pub use lexicon::{evaluate_test, load_lexicon, Lexicon, LexiconError};
pub use model::{
    Answer, AspectClass, Candidate, DecisionTrace, EvidenceSource, Label, Number, SentenceRef, TestId, TraceStep,
};
pub use session::{Session, SessionError, SessionHub};
pub use tree::{build_tree, DecisionTree, TreeVariant};
