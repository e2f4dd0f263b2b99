//! Counterpart lookup and the meaning-added judgment.
//!
//! An aspectual variant is judged against a base construction that shares
//! its predicate and arguments: an LVC proper with a transitive light verb,
//! or the copula with the same PP. The verb's contribution is then read off
//! the entry's own variants, or the global alternation table.

use serde::{Deserialize, Serialize};

use super::{Lexicon, PredicateEntry};
use crate::model::{AspectClass, Candidate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CounterpartKind {
    TransitiveLvc,
    Copular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterpart<'a> {
    pub entry: &'a PredicateEntry,
    pub base_verb: String,
    pub base_prep: Option<String>,
    pub kind: CounterpartKind,
}

/// What the candidate's verb adds relative to the base construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MeaningDelta {
    /// The verb is itself a light verb of the predicate.
    Nothing,
    Aspect(AspectClass),
    Other,
}

impl std::fmt::Display for MeaningDelta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MeaningDelta::Nothing => f.write_str("NONE"),
            MeaningDelta::Aspect(a) => write!(f, "ASPECT({a})"),
            MeaningDelta::Other => f.write_str("OTHER"),
        }
    }
}

pub(super) fn lvc_counterpart_in<'a>(
    entry: &'a PredicateEntry,
    candidate: &Candidate,
    copula: &str,
) -> Option<Counterpart<'a>> {
    if entry.arg_frame.is_empty() {
        return None;
    }
    let prep = candidate.prep.as_deref();
    entry
        .support_verbs
        .iter()
        .find(|s| s.verb != candidate.verb_lemma && s.verb != copula && s.prep.as_deref() == prep)
        .map(|s| Counterpart {
            entry,
            base_verb: s.verb.clone(),
            base_prep: s.prep.clone(),
            kind: CounterpartKind::TransitiveLvc,
        })
}

pub(super) fn copular_counterpart_in<'a>(
    entry: &'a PredicateEntry,
    candidate: &Candidate,
    copula: &str,
) -> Option<Counterpart<'a>> {
    let prep = candidate.prep.as_deref()?;
    let copular_prep = entry.copular_prep(copula)?;
    // The preposition may only differ for a cessative verb.
    if prep == copular_prep || entry.is_cessative_variant(&candidate.verb_lemma, Some(prep)) {
        Some(Counterpart {
            entry,
            base_verb: copula.to_string(),
            base_prep: Some(copular_prep.to_string()),
            kind: CounterpartKind::Copular,
        })
    } else {
        None
    }
}

/// An LVC proper with the candidate's predicate and a different light verb.
pub fn find_lvc_counterpart<'a>(lexicon: &'a Lexicon, candidate: &Candidate) -> Option<Counterpart<'a>> {
    lexicon
        .senses(candidate)
        .into_iter()
        .find_map(|e| lvc_counterpart_in(e, candidate, lexicon.copula()))
}

/// The copular construction with the candidate's PP.
pub fn find_copular_counterpart<'a>(
    lexicon: &'a Lexicon,
    candidate: &Candidate,
) -> Option<Counterpart<'a>> {
    candidate.prep.as_ref()?;
    lexicon
        .senses(candidate)
        .into_iter()
        .find_map(|e| copular_counterpart_in(e, candidate, lexicon.copula()))
}

pub(super) fn delta_in(
    lexicon: &Lexicon,
    entry: &PredicateEntry,
    candidate: &Candidate,
    base_verb: Option<&str>,
) -> MeaningDelta {
    let verb = candidate.verb_lemma.as_str();
    let prep = candidate.prep.as_deref();
    if entry.is_support(verb, prep, lexicon.copula()) {
        return MeaningDelta::Nothing;
    }
    if let Some(v) = entry.variant(verb, prep) {
        return MeaningDelta::Aspect(v.aspect);
    }
    if let Some(aspect) = base_verb.and_then(|b| lexicon.alternations().lookup(b, verb)) {
        return MeaningDelta::Aspect(aspect);
    }
    MeaningDelta::Other
}

/// Classifies the meaning the candidate's verb adds to its predicate.
///
/// With a counterpart, the comparison is against that counterpart's entry
/// and light verb. Without one, only the entry-level variants can classify
/// the verb; senses that disagree give `Other`.
pub fn classify_added_meaning(
    lexicon: &Lexicon,
    candidate: &Candidate,
    counterpart: Option<&Counterpart<'_>>,
) -> MeaningDelta {
    if let Some(cp) = counterpart {
        return delta_in(lexicon, cp.entry, candidate, Some(&cp.base_verb));
    }
    let mut deltas = lexicon
        .senses(candidate)
        .into_iter()
        .map(|e| delta_in(lexicon, e, candidate, None));
    match deltas.next() {
        Some(first) if deltas.all(|d| d == first) => first,
        _ => MeaningDelta::Other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AspectClass::*;

    fn lex() -> Lexicon {
        Lexicon::seed()
    }

    fn cand(v: &str, p: Option<&str>, n: &str) -> Candidate {
        Candidate::from_lemmas(v, p, n)
    }

    #[test]
    fn prendre_position_has_avoir_counterpart() {
        let lex = lex();
        let cp = find_lvc_counterpart(&lex, &cand("prendre", None, "position")).unwrap();
        assert_eq!(cp.base_verb, "avoir");
        assert_eq!(cp.kind, CounterpartKind::TransitiveLvc);
        assert_eq!(cp.entry.pred_lemma, "position");
    }

    #[test]
    fn prendre_conscience_has_avoir_counterpart() {
        let lex = lex();
        let cp = find_lvc_counterpart(&lex, &cand("prendre", None, "conscience")).unwrap();
        assert_eq!(cp.base_verb, "avoir");
    }

    #[test]
    fn prendre_garde_has_no_counterpart() {
        assert!(find_lvc_counterpart(&lex(), &cand("prendre", None, "garde")).is_none());
    }

    #[test]
    fn support_verb_is_not_its_own_counterpart() {
        assert!(find_lvc_counterpart(&lex(), &cand("avoir", None, "conscience")).is_none());
    }

    #[test]
    fn entrer_en_vigueur_copular() {
        let lex = lex();
        let cp = find_copular_counterpart(&lex, &cand("entrer", Some("en"), "vigueur")).unwrap();
        assert_eq!(cp.base_verb, "être");
        assert_eq!(cp.base_prep.as_deref(), Some("en"));
        assert_eq!(cp.kind, CounterpartKind::Copular);
    }

    #[test]
    fn sortir_de_affiche_uses_cessative_exception() {
        let lex = lex();
        let cp = find_copular_counterpart(&lex, &cand("sortir", Some("de"), "affiche")).unwrap();
        assert_eq!(cp.base_verb, "être");
        assert_eq!(cp.base_prep.as_deref(), Some("à"));
        // a non-cessative verb with the wrong preposition gets nothing
        assert!(find_copular_counterpart(&lex, &cand("entrer", Some("de"), "affiche")).is_none());
    }

    #[test]
    fn tomber_en_panne_copular_on_noun_predicate() {
        let lex = lex();
        let cp = find_copular_counterpart(&lex, &cand("tomber", Some("en"), "panne")).unwrap();
        assert_eq!(cp.base_verb, "être");
        assert_eq!(cp.base_prep.as_deref(), Some("en"));
        assert_eq!(cp.entry.pred_lemma, "panne");
    }

    #[test]
    fn direct_candidates_have_no_copular_counterpart() {
        assert!(find_copular_counterpart(&lex(), &cand("prendre", None, "conscience")).is_none());
    }

    #[test]
    fn added_meaning_examples() {
        let lex = lex();
        let c = cand("prendre", None, "conscience");
        let cp = find_lvc_counterpart(&lex, &c);
        assert_eq!(
            classify_added_meaning(&lex, &c, cp.as_ref()),
            MeaningDelta::Aspect(Inchoative)
        );
        let c = cand("avoir", None, "conscience");
        assert_eq!(classify_added_meaning(&lex, &c, None), MeaningDelta::Nothing);
        let c = cand("multiplier", None, "allusion");
        let cp = find_lvc_counterpart(&lex, &c);
        assert_eq!(
            classify_added_meaning(&lex, &c, cp.as_ref()),
            MeaningDelta::Aspect(Iterative)
        );
        let c = cand("retrouver", None, "vitalité");
        let cp = find_lvc_counterpart(&lex, &c);
        assert_eq!(
            classify_added_meaning(&lex, &c, cp.as_ref()),
            MeaningDelta::Aspect(Resumptive)
        );
    }

    #[test]
    fn alternation_table_used_only_with_a_counterpart() {
        let lex = lex();
        let c = cand("tomber", Some("en"), "panne");
        assert_eq!(classify_added_meaning(&lex, &c, None), MeaningDelta::Other);
        let cp = find_copular_counterpart(&lex, &c);
        assert_eq!(
            classify_added_meaning(&lex, &c, cp.as_ref()),
            MeaningDelta::Aspect(Inchoative)
        );
    }

    #[test]
    fn other_when_nothing_classifies_the_verb() {
        let lex = lex();
        let c = cand("lire", None, "conscience");
        let cp = find_lvc_counterpart(&lex, &c);
        assert!(cp.is_some());
        assert_eq!(classify_added_meaning(&lex, &c, cp.as_ref()), MeaningDelta::Other);
    }
}
