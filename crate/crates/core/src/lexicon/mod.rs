//! Predicate lexicon.
//!
//! The lexicon is a JSON list of [`PredicateEntry`] records (see
//! `data/LEXICON_FORMAT.md`). Homographs are separate entries distinguished
//! by `sense_gloss`. Loading validates every entry and rejects duplicates;
//! the resulting [`Lexicon`] is immutable.

mod alternation;
mod counterpart;
mod evaluate;

use std::collections::HashSet;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{AspectClass, Candidate};

pub use alternation::{AlternationRow, AlternationTable};
pub use counterpart::{
    classify_added_meaning, find_copular_counterpart, find_lvc_counterpart, Counterpart,
    CounterpartKind, MeaningDelta,
};
pub use evaluate::evaluate_test;

/// The seed lexicon shipped with the crate.
pub const SEED_LEXICON: &str = include_str!("../../data/seed_lexicon.fr.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EntryKind {
    NounPred,
    PpIdiom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NumberConstraint {
    #[default]
    Free,
    SingularOnly,
    PluralOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Realization {
    Subject,
    Prep(String),
    Genitive,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgSlot {
    pub role: String,
    pub realization: Realization,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportVerb {
    pub verb: String,
    #[serde(default)]
    pub prep: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AspectVariant {
    pub verb_lemma: String,
    pub aspect: AspectClass,
    #[serde(default)]
    pub prep: Option<String>,
}

/// Lexicon record for a noun predicate or a PP idiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateEntry {
    pub entry_id: String,
    pub kind: EntryKind,
    pub pred_lemma: String,
    #[serde(default)]
    pub idiom_prep: Option<String>,
    pub sense_gloss: String,
    #[serde(rename = "abstract")]
    pub is_abstract: bool,
    pub predicative: bool,
    pub arg_frame: Vec<ArgSlot>,
    /// Verbs passing LVC.3 with this predicate.
    #[serde(default)]
    pub support_verbs: Vec<SupportVerb>,
    /// Usable with the copula as light verb.
    #[serde(default)]
    pub copular_support: bool,
    #[serde(default)]
    pub aspect_variants: Vec<AspectVariant>,
    #[serde(default)]
    pub number_constraint: NumberConstraint,
    #[serde(default)]
    pub substitution_class: Option<String>,
}

impl PredicateEntry {
    pub fn has_subject_slot(&self) -> bool {
        self.arg_frame
            .iter()
            .any(|s| s.realization == Realization::Subject)
    }

    /// Preposition used with the copula, if the entry has copular support.
    ///
    /// For a PP idiom this is the idiom's preposition; a noun predicate
    /// states it by listing the copula among its support verbs.
    pub fn copular_prep(&self, copula: &str) -> Option<&str> {
        if !self.copular_support {
            return None;
        }
        match self.kind {
            EntryKind::PpIdiom => self.idiom_prep.as_deref(),
            EntryKind::NounPred => self
                .support_verbs
                .iter()
                .find(|s| s.verb == copula)
                .and_then(|s| s.prep.as_deref()),
        }
    }

    pub fn variant(&self, verb: &str, prep: Option<&str>) -> Option<&AspectVariant> {
        self.aspect_variants
            .iter()
            .find(|v| v.verb_lemma == verb && v.prep.as_deref() == prep)
    }

    pub(crate) fn is_cessative_variant(&self, verb: &str, prep: Option<&str>) -> bool {
        self.variant(verb, prep)
            .is_some_and(|v| v.aspect == AspectClass::Terminative)
    }

    /// True if `verb` (with `prep`) is a light verb for this entry: a listed
    /// support verb, or the copula when the entry has copular support.
    pub fn is_support(&self, verb: &str, prep: Option<&str>, copula: &str) -> bool {
        self.support_verbs
            .iter()
            .any(|s| s.verb == verb && s.prep.as_deref() == prep)
            || (verb == copula && prep.is_some() && self.copular_prep(copula) == prep)
    }

    fn licenses(&self, verb: &str, prep: Option<&str>, copula: &str) -> bool {
        self.is_support(verb, prep, copula) || self.variant(verb, prep).is_some()
    }

    /// Whether the entry lists any verb at all.
    fn is_verb_free(&self) -> bool {
        self.support_verbs.is_empty() && self.aspect_variants.is_empty()
    }

    /// Whether a candidate of this shape (direct object or PP with its
    /// preposition) can instantiate the entry.
    fn accepts_shape(&self, candidate: &Candidate) -> bool {
        let verb = candidate.verb_lemma.as_str();
        match (candidate.prep.as_deref(), self.kind) {
            (None, EntryKind::NounPred) => true,
            (None, EntryKind::PpIdiom) => false,
            (Some(p), EntryKind::PpIdiom) => {
                self.idiom_prep.as_deref() == Some(p) || self.is_cessative_variant(verb, Some(p))
            }
            (Some(p), EntryKind::NounPred) => {
                self.support_verbs.iter().any(|s| s.prep.as_deref() == Some(p))
                    || self.aspect_variants.iter().any(|v| v.prep.as_deref() == Some(p))
            }
        }
    }

    // Missing prepositions on a PP idiom's verbs default to the idiom's own.
    fn normalize(&mut self) {
        if self.kind == EntryKind::PpIdiom {
            let prep = self.idiom_prep.clone();
            for s in &mut self.support_verbs {
                if s.prep.is_none() {
                    s.prep = prep.clone();
                }
            }
            for v in &mut self.aspect_variants {
                if v.prep.is_none() {
                    v.prep = prep.clone();
                }
            }
        }
    }

    fn validate(&self, copula: &str) -> Result<(), String> {
        if self.entry_id.is_empty() {
            return Err("empty entry_id".into());
        }
        if self.pred_lemma.is_empty() {
            return Err("empty pred_lemma".into());
        }
        match (self.kind, &self.idiom_prep) {
            (EntryKind::PpIdiom, None) => return Err("PP_IDIOM entry needs idiom_prep".into()),
            (EntryKind::NounPred, Some(_)) => {
                return Err("idiom_prep is only allowed on PP_IDIOM entries".into())
            }
            _ => {}
        }
        let mut roles = HashSet::new();
        for slot in &self.arg_frame {
            if !roles.insert(slot.role.as_str()) {
                return Err(format!("duplicate role '{}' in arg_frame", slot.role));
            }
        }
        if self.predicative && !self.has_subject_slot() {
            return Err("predicative entry needs a SUBJECT slot".into());
        }
        if !self.support_verbs.is_empty() && !self.predicative {
            return Err("support_verbs given but predicative is false".into());
        }
        if !self.aspect_variants.is_empty() && !self.predicative {
            return Err("aspect_variants given but predicative is false".into());
        }
        if self.copular_support && !self.predicative {
            return Err("copular_support given but predicative is false".into());
        }
        if self.copular_support && self.copular_prep(copula).is_none() {
            return Err(format!(
                "copular_support needs a support verb '{copula}' with a preposition"
            ));
        }
        let mut pairs = HashSet::new();
        for v in &self.aspect_variants {
            if !pairs.insert((v.verb_lemma.as_str(), v.prep.as_deref())) {
                return Err(format!("duplicate aspect variant '{}'", v.verb_lemma));
            }
            if self.is_support(&v.verb_lemma, v.prep.as_deref(), copula) {
                return Err(format!(
                    "'{}' is both a support verb and an aspect variant",
                    v.verb_lemma
                ));
            }
            if self.kind == EntryKind::PpIdiom
                && v.aspect != AspectClass::Terminative
                && v.prep != self.idiom_prep
            {
                return Err(format!(
                    "non-terminative variant '{}' must use the idiom preposition",
                    v.verb_lemma
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("lexicon parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid lexicon entry '{entry_id}': {message}")]
    Invalid { entry_id: String, message: String },
    #[error("duplicate lexicon entry '{entry_id}' for ({pred_lemma}, {idiom_prep:?}, '{sense_gloss}')")]
    Duplicate {
        entry_id: String,
        pred_lemma: String,
        idiom_prep: Option<String>,
        sense_gloss: String,
    },
    #[error("duplicate entry_id '{0}'")]
    DuplicateId(String),
    #[error("reading lexicon: {0}")]
    Io(#[from] std::io::Error),
}

/// Validated, immutable predicate lexicon.
#[derive(Clone, Debug)]
pub struct Lexicon {
    entries: Vec<PredicateEntry>,
    alternations: AlternationTable,
    copula: String,
}

pub const DEFAULT_COPULA: &str = "être";

impl Lexicon {
    pub fn empty() -> Lexicon {
        Lexicon {
            entries: Vec::new(),
            alternations: AlternationTable::default(),
            copula: DEFAULT_COPULA.to_string(),
        }
    }

    pub fn from_entries(mut entries: Vec<PredicateEntry>) -> Result<Lexicon, LexiconError> {
        let copula = DEFAULT_COPULA;
        let mut ids = HashSet::new();
        let mut keys = HashSet::new();
        for e in &mut entries {
            e.normalize();
            e.validate(copula).map_err(|message| LexiconError::Invalid {
                entry_id: e.entry_id.clone(),
                message,
            })?;
            if !ids.insert(e.entry_id.clone()) {
                return Err(LexiconError::DuplicateId(e.entry_id.clone()));
            }
            let key = (e.pred_lemma.clone(), e.idiom_prep.clone(), e.sense_gloss.clone());
            if !keys.insert(key) {
                return Err(LexiconError::Duplicate {
                    entry_id: e.entry_id.clone(),
                    pred_lemma: e.pred_lemma.clone(),
                    idiom_prep: e.idiom_prep.clone(),
                    sense_gloss: e.sense_gloss.clone(),
                });
            }
        }
        Ok(Lexicon {
            entries,
            alternations: AlternationTable::default(),
            copula: copula.to_string(),
        })
    }

    pub fn parse_str(text: &str) -> Result<Lexicon, LexiconError> {
        if text.trim().is_empty() {
            return Ok(Lexicon::empty());
        }
        let entries: Vec<PredicateEntry> =
            serde_json::from_str(text).map_err(|e| LexiconError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        Lexicon::from_entries(entries)
    }

    /// The lexicon shipped in `data/seed_lexicon.fr.json`.
    pub fn seed() -> Lexicon {
        Lexicon::parse_str(SEED_LEXICON).expect("seed lexicon is valid")
    }

    pub fn with_alternations(mut self, alternations: AlternationTable) -> Lexicon {
        self.alternations = alternations;
        self
    }

    pub fn entries(&self) -> &[PredicateEntry] {
        &self.entries
    }

    pub fn entry(&self, entry_id: &str) -> Option<&PredicateEntry> {
        self.entries.iter().find(|e| e.entry_id == entry_id)
    }

    pub fn alternations(&self) -> &AlternationTable {
        &self.alternations
    }

    pub fn copula(&self) -> &str {
        &self.copula
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All entries (every sense) for a predicate lemma.
    pub fn entries_for<'a>(&'a self, pred_lemma: &'a str) -> impl Iterator<Item = &'a PredicateEntry> + 'a {
        self.entries.iter().filter(move |e| e.pred_lemma == pred_lemma)
    }

    /// Entries relevant to `candidate`.
    ///
    /// Starts from the entries whose shape fits the candidate (falling back
    /// to every entry for the lemma when none fits). If some of them list
    /// the candidate's verb, only those are kept; otherwise the senses that
    /// list no verb at all are preferred. Whatever remains is consulted as a
    /// whole, and tests on which they disagree come out UNKNOWN.
    pub fn senses(&self, candidate: &Candidate) -> Vec<&PredicateEntry> {
        let all: Vec<&PredicateEntry> = self
            .entries
            .iter()
            .filter(|e| e.pred_lemma == candidate.pred_lemma)
            .collect();
        if all.is_empty() {
            return all;
        }
        let fitting: Vec<_> = all.iter().copied().filter(|e| e.accepts_shape(candidate)).collect();
        let pool = if fitting.is_empty() { all } else { fitting };
        let verb = candidate.verb_lemma.as_str();
        let prep = candidate.prep.as_deref();
        let licensing: Vec<_> = pool
            .iter()
            .copied()
            .filter(|e| e.licenses(verb, prep, &self.copula))
            .collect();
        if !licensing.is_empty() {
            return licensing;
        }
        let free: Vec<_> = pool.iter().copied().filter(|e| e.is_verb_free()).collect();
        if !free.is_empty() {
            return free;
        }
        pool
    }

    /// True if `verb` is a support verb or aspectual variant of any entry
    /// for `pred_lemma`.
    pub fn lists_verb(&self, pred_lemma: &str, verb: &str) -> bool {
        self.entries_for(pred_lemma).any(|e| {
            e.support_verbs.iter().any(|s| s.verb == verb)
                || e.aspect_variants.iter().any(|v| v.verb_lemma == verb)
                || (e.copular_support && verb == self.copula)
        })
    }
}

/// Reads and validates a lexicon file.
pub fn load_lexicon<R: Read>(mut source: R) -> Result<Lexicon, LexiconError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    Lexicon::parse_str(&text)
}
