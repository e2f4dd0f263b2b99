//! Shared vocabulary: labels, tests, answers, aspect classes, candidates and
//! decision traces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::FormatError;

/// Category assigned to a candidate.
///
/// `Unannotated` only ever comes from a corpus (no MWE span covers the
/// candidate) and `Unresolved` only ever comes from the engine in strict mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Label {
    Vid,
    LvcFull,
    LvcCause,
    LvcAsp,
    NonMwe,
    Unannotated,
    Unresolved,
}

impl Label {
    /// Parses a category string as written in the MWE column of a corpus.
    ///
    /// The empty string means "no annotation". Anything that is not one of
    /// the four verbal categories handled here is rejected.
    pub fn parse_category(text: &str) -> Result<Label, FormatError> {
        match text {
            "" => Ok(Label::Unannotated),
            "VID" => Ok(Label::Vid),
            "LVC.full" => Ok(Label::LvcFull),
            "LVC.cause" => Ok(Label::LvcCause),
            "LVC.asp" => Ok(Label::LvcAsp),
            other => Err(FormatError::UnknownCategory(other.to_string())),
        }
    }

    /// Category string for the MWE column, `None` for labels that never
    /// produce a span.
    pub fn category(self) -> Option<&'static str> {
        match self {
            Label::Vid => Some("VID"),
            Label::LvcFull => Some("LVC.full"),
            Label::LvcCause => Some("LVC.cause"),
            Label::LvcAsp => Some("LVC.asp"),
            Label::NonMwe | Label::Unannotated | Label::Unresolved => None,
        }
    }

    /// Inverse of [`Label::parse_category`] on the strings it accepts.
    pub fn format_category(self) -> &'static str {
        self.category().unwrap_or("")
    }

    /// Name used in reports and tables.
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Vid => "VID",
            Label::LvcFull => "LVC.full",
            Label::LvcCause => "LVC.cause",
            Label::LvcAsp => "LVC.asp",
            Label::NonMwe => "CP",
            Label::Unannotated => "*",
            Label::Unresolved => "UNRESOLVED",
        }
    }

    /// True for the labels a tree leaf may carry.
    pub fn is_leaf_label(self) -> bool {
        matches!(self, Label::Vid | Label::LvcFull | Label::LvcAsp | Label::NonMwe)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = FormatError;

    /// Accepts report names as well as corpus categories.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "CP" | "NON_MWE" => Ok(Label::NonMwe),
            "*" => Ok(Label::Unannotated),
            "UNRESOLVED" => Ok(Label::Unresolved),
            other => Label::parse_category(other),
        }
    }
}

/// A node test of the decision trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TestId {
    /// Is the noun abstract?
    LVC0,
    /// Is the noun predicative?
    LVC1,
    /// Is the subject of the verb a semantic argument of the noun?
    LVC2,
    /// Does the verb add nothing beyond its inflectional meaning?
    LVC3,
    /// Is the predicative meaning kept in the verbless subphrase?
    LVC4,
    LVC0BIS,
    LVC1BIS,
    LVC2BIS,
    /// Does lexical substitution give unexpected results?
    VID2,
    /// Do inflectional changes give unexpected results?
    VID3,
    /// Does an LVC counterpart with the same predicate exist?
    ASP1,
    /// Is the meaning added by the verb purely aspectual?
    ASP2,
    /// Is the prepositional phrase an idiomatic/predicational unit?
    PPI1,
    /// Does a copular counterpart with the same arguments exist?
    COP1,
}

impl TestId {
    pub const ALL: [TestId; 14] = [
        TestId::LVC0,
        TestId::LVC1,
        TestId::LVC2,
        TestId::LVC3,
        TestId::LVC4,
        TestId::LVC0BIS,
        TestId::LVC1BIS,
        TestId::LVC2BIS,
        TestId::VID2,
        TestId::VID3,
        TestId::ASP1,
        TestId::ASP2,
        TestId::PPI1,
        TestId::COP1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TestId::LVC0 => "LVC0",
            TestId::LVC1 => "LVC1",
            TestId::LVC2 => "LVC2",
            TestId::LVC3 => "LVC3",
            TestId::LVC4 => "LVC4",
            TestId::LVC0BIS => "LVC0BIS",
            TestId::LVC1BIS => "LVC1BIS",
            TestId::LVC2BIS => "LVC2BIS",
            TestId::VID2 => "VID2",
            TestId::VID3 => "VID3",
            TestId::ASP1 => "ASP1",
            TestId::ASP2 => "ASP2",
            TestId::PPI1 => "PPI1",
            TestId::COP1 => "COP1",
        }
    }
}

impl fmt::Display for TestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TestId {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TestId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| FormatError::UnknownTest(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn from_bool(b: bool) -> Answer {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Answer {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "YES" | "Y" => Ok(Answer::Yes),
            "NO" | "N" => Ok(Answer::No),
            "UNKNOWN" => Ok(Answer::Unknown),
            _ => Err(FormatError::UnknownAnswer(s.to_string())),
        }
    }
}

/// The aspectual notion a verb adds to a predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AspectClass {
    /// beginning
    Inchoative,
    /// regaining
    Resumptive,
    /// cessation
    Terminative,
    /// duration
    Durative,
    /// repetition
    Iterative,
}

impl AspectClass {
    pub const ALL: [AspectClass; 5] = [
        AspectClass::Inchoative,
        AspectClass::Resumptive,
        AspectClass::Terminative,
        AspectClass::Durative,
        AspectClass::Iterative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AspectClass::Inchoative => "INCHOATIVE",
            AspectClass::Resumptive => "RESUMPTIVE",
            AspectClass::Terminative => "TERMINATIVE",
            AspectClass::Durative => "DURATIVE",
            AspectClass::Iterative => "ITERATIVE",
        }
    }

    /// Short description shown to annotators.
    pub fn notion(self) -> &'static str {
        match self {
            AspectClass::Inchoative => "beginning",
            AspectClass::Resumptive => "regaining",
            AspectClass::Terminative => "cessation",
            AspectClass::Durative => "duration",
            AspectClass::Iterative => "repetition",
        }
    }
}

impl fmt::Display for AspectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Number {
    Singular,
    Plural,
}

/// Where a candidate's tokens live in the corpus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SentenceRef {
    pub document: String,
    pub sentence: usize,
    /// Token indices (1-based, as in the ID column), strictly increasing.
    pub tokens: Vec<usize>,
}

/// One verb plus a single dependent, either a direct object or a PP.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Candidate {
    pub id: String,
    pub verb_lemma: String,
    /// Present iff the dependent is a prepositional phrase.
    pub prep: Option<String>,
    pub pred_lemma: String,
    pub observed_number: Number,
    /// False when the number was defaulted because FEATS had no Number.
    pub number_observed: bool,
    pub determiner_pattern: String,
    pub has_adj_modifier: bool,
    pub sentence_ref: SentenceRef,
    pub language: String,
}

impl Candidate {
    /// Minimal candidate built from lemmas alone, mostly for tests and the
    /// interactive tools.
    pub fn from_lemmas(verb: &str, prep: Option<&str>, pred: &str) -> Candidate {
        let id = match prep {
            Some(p) => format!("{verb}+{p}+{pred}"),
            None => format!("{verb}+{pred}"),
        };
        let tokens = if prep.is_some() { vec![1, 2, 3] } else { vec![1, 2] };
        Candidate {
            id,
            verb_lemma: verb.to_string(),
            prep: prep.map(str::to_string),
            pred_lemma: pred.to_string(),
            observed_number: Number::Singular,
            number_observed: false,
            determiner_pattern: String::new(),
            has_adj_modifier: false,
            sentence_ref: SentenceRef {
                document: String::new(),
                sentence: 0,
                tokens,
            },
            language: "fr".to_string(),
        }
    }

    pub fn is_prepositional(&self) -> bool {
        self.prep.is_some()
    }

    /// `verb [prep] pred` in lemma form.
    pub fn lemma_phrase(&self) -> String {
        match &self.prep {
            Some(p) => format!("{} {} {}", self.verb_lemma, p, self.pred_lemma),
            None => format!("{} {}", self.verb_lemma, self.pred_lemma),
        }
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        let toks = &self.sentence_ref.tokens;
        if toks.is_empty() {
            return Err(format!("candidate {} has no tokens", self.id));
        }
        if toks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("candidate {} token indices not increasing", self.id));
        }
        Ok(())
    }
}

/// Where the answer to a test came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "source", content = "ref", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EvidenceSource {
    Lexicon(String),
    Human(String),
    Surface(String),
}

impl fmt::Display for EvidenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvidenceSource::Lexicon(id) => write!(f, "lexicon:{id}"),
            EvidenceSource::Human(id) => write!(f, "human:{id}"),
            EvidenceSource::Surface(feat) => write!(f, "surface:{feat}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TraceStep {
    pub test: TestId,
    pub answer: Answer,
    pub evidence: EvidenceSource,
}

/// The ordered path through a tree and the leaf it ended on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecisionTrace {
    pub steps: Vec<TraceStep>,
    pub leaf: Label,
}

impl DecisionTrace {
    pub fn contains(&self, test: TestId) -> bool {
        self.steps.iter().any(|s| s.test == test)
    }

    pub fn answer_of(&self, test: TestId) -> Option<Answer> {
        self.steps.iter().find(|s| s.test == test).map(|s| s.answer)
    }

    /// Compact one-line rendering, `TEST=ANSWER@evidence` joined by `;`.
    pub fn render(&self) -> String {
        self.steps
            .iter()
            .map(|s| format!("{}={}@{}", s.test, s.answer, s.evidence))
            .collect::<Vec<_>>()
            .join(";")
    }
}
