//! Answers decision-tree tests from lexicon evidence.

use super::counterpart::{copular_counterpart_in, delta_in, lvc_counterpart_in, MeaningDelta};
use super::{EntryKind, Lexicon, NumberConstraint, PredicateEntry};
use crate::model::{Answer, Candidate, EvidenceSource, TestId};

/// Evidence id used when no entry covers the candidate.
const NO_ENTRY: &str = "?";

/// Answers `test` for `candidate`.
///
/// Every relevant sense (see [`Lexicon::senses`]) is asked; when they
/// disagree the answer is `Unknown`, and so is every answer for a predicate
/// the lexicon does not know.
pub fn evaluate_test(lexicon: &Lexicon, candidate: &Candidate, test: TestId) -> (Answer, EvidenceSource) {
    let senses = lexicon.senses(candidate);
    let Some(first) = senses.first() else {
        return (Answer::Unknown, EvidenceSource::Lexicon(NO_ENTRY.to_string()));
    };
    let first_answer = answer_for_sense(lexicon, first, candidate, test);
    let agree = senses[1..]
        .iter()
        .all(|e| answer_for_sense(lexicon, e, candidate, test) == first_answer);
    if agree {
        (first_answer, EvidenceSource::Lexicon(first.entry_id.clone()))
    } else {
        let ids: Vec<_> = senses.iter().map(|e| e.entry_id.as_str()).collect();
        (Answer::Unknown, EvidenceSource::Lexicon(ids.join("|")))
    }
}

fn answer_for_sense(lexicon: &Lexicon, entry: &PredicateEntry, c: &Candidate, test: TestId) -> Answer {
    let copula = lexicon.copula();
    let verb = c.verb_lemma.as_str();
    let prep = c.prep.as_deref();
    let counterpart = || {
        lvc_counterpart_in(entry, c, copula).or_else(|| copular_counterpart_in(entry, c, copula))
    };
    let delta = || {
        let cp = counterpart();
        delta_in(lexicon, entry, c, cp.as_ref().map(|cp| cp.base_verb.as_str()))
    };
    let pp_is_predicational = || match (prep, entry.kind) {
        (None, _) => false,
        (Some(p), EntryKind::PpIdiom) => {
            entry.idiom_prep.as_deref() == Some(p) || entry.is_cessative_variant(verb, Some(p))
        }
        (Some(p), EntryKind::NounPred) => {
            entry.copular_prep(copula).is_some()
                && (entry.copular_prep(copula) == Some(p) || entry.is_cessative_variant(verb, Some(p)))
        }
    };
    let subject_slot = || {
        if entry.arg_frame.is_empty() {
            Answer::Unknown
        } else {
            Answer::from_bool(entry.has_subject_slot())
        }
    };

    match test {
        TestId::LVC0 | TestId::LVC0BIS => Answer::from_bool(entry.is_abstract),
        TestId::LVC1 => Answer::from_bool(entry.kind == EntryKind::NounPred && entry.predicative),
        TestId::LVC1BIS => Answer::from_bool(entry.predicative && pp_is_predicational()),
        TestId::LVC2 | TestId::LVC2BIS => subject_slot(),
        TestId::LVC3 => Answer::from_bool(delta() == MeaningDelta::Nothing),
        TestId::LVC4 => Answer::from_bool(
            entry.kind == EntryKind::NounPred && entry.predicative && !entry.arg_frame.is_empty(),
        ),
        TestId::VID2 => {
            let frozen = entry.substitution_class.is_none() && !lexicon.lists_verb(&c.pred_lemma, verb);
            Answer::from_bool(frozen)
        }
        TestId::VID3 => Answer::from_bool(entry.number_constraint != NumberConstraint::Free),
        TestId::ASP1 => Answer::from_bool(counterpart().is_some()),
        TestId::ASP2 => match delta() {
            MeaningDelta::Aspect(_) => Answer::Yes,
            MeaningDelta::Other if counterpart().is_none() => Answer::Unknown,
            _ => Answer::No,
        },
        TestId::PPI1 => Answer::from_bool(pp_is_predicational()),
        TestId::COP1 => Answer::from_bool(copular_counterpart_in(entry, c, copula).is_some()),
    }
}
