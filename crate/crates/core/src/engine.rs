//! Classification of a candidate: tree traversal driven by lexicon evidence.

use serde::{Deserialize, Serialize};

use crate::lexicon::{evaluate_test, Lexicon};
use crate::model::{Answer, Candidate, DecisionTrace, EvidenceSource, Label, TestId};
use crate::session::prompt::{prompt_for, question_id};
use crate::tree::{build_tree, DecisionTree, TreeVariant};

/// What to do with a test the lexicon cannot answer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Stop and report the blocking test as a question.
    #[default]
    Strict,
    /// Treat it as NO and flag the verdict as low confidence.
    AssumeNo,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Mode::Strict),
            "assume-no" | "assume_no" => Ok(Mode::AssumeNo),
            _ => Err(format!("unknown mode '{s}'")),
        }
    }
}

/// A pending human judgment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question {
    pub question_id: String,
    pub candidate: Candidate,
    pub test: TestId,
    pub prompt: String,
    pub sentence_text: String,
    pub partial_trace: DecisionTrace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: Label,
    pub trace: DecisionTrace,
    pub pending: Vec<Question>,
    /// Some answer on the path was assumed rather than known.
    pub low_confidence: bool,
}

pub const ASSUMED: &str = "assumed";

/// Classifies with a caller-supplied oracle. `Unknown` answers are handled
/// according to `mode`.
pub fn classify_with<F>(tree: &DecisionTree, candidate: &Candidate, mode: Mode, mut oracle: F) -> Verdict
where
    F: FnMut(TestId) -> (Answer, EvidenceSource),
{
    let mut low_confidence = false;
    let trace = tree.traverse(candidate, |test| {
        let (answer, evidence) = oracle(test);
        match (answer, mode) {
            (Answer::Unknown, Mode::AssumeNo) => {
                low_confidence = true;
                (Answer::No, EvidenceSource::Surface(ASSUMED.to_string()))
            }
            _ => (answer, evidence),
        }
    });
    let pending = match trace.steps.last() {
        Some(last) if trace.leaf == Label::Unresolved => {
            let mut partial = trace.clone();
            partial.steps.pop();
            vec![Question {
                question_id: question_id(candidate, last.test),
                candidate: candidate.clone(),
                test: last.test,
                prompt: prompt_for(last.test, candidate),
                sentence_text: candidate.lemma_phrase(),
                partial_trace: partial,
            }]
        }
        _ => Vec::new(),
    };
    Verdict {
        label: trace.leaf,
        trace,
        pending,
        low_confidence,
    }
}

/// Classifies `candidate` with the lexicon as the only source of answers.
pub fn classify(candidate: &Candidate, lexicon: &Lexicon, variant: TreeVariant, mode: Mode) -> Verdict {
    let tree = build_tree(variant);
    classify_in(&tree, candidate, lexicon, mode)
}

/// Same as [`classify`] with a prebuilt tree.
pub fn classify_in(tree: &DecisionTree, candidate: &Candidate, lexicon: &Lexicon, mode: Mode) -> Verdict {
    classify_with(tree, candidate, mode, |test| evaluate_test(lexicon, candidate, test))
}
