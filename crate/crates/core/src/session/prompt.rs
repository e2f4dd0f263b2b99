//! Annotator-facing wording of the tree tests.

use crate::model::{AspectClass, Candidate, TestId};

/// Stable id of the question "`test` for `candidate`".
pub fn question_id(candidate: &Candidate, test: TestId) -> String {
    format!("{}/{}", candidate.id, test)
}

/// Splits a question id back into candidate id and test.
pub fn parse_question_id(qid: &str) -> Option<(&str, TestId)> {
    let (cand, test) = qid.rsplit_once('/')?;
    Some((cand, test.parse().ok()?))
}

fn guideline(test: TestId) -> &'static str {
    match test {
        TestId::LVC0 | TestId::LVC0BIS => {
            "Is the noun abstract, i.e. does it denote an event, state or property rather than a concrete object? \
             Example: 'bain' in 'prendre un bain' is an event noun (yes); 'table' in 'prendre la table' is not."
        }
        TestId::LVC1 => {
            "Is the noun predicative, i.e. does it have semantic arguments of its own? \
             Example: 'décision' in 'prendre une décision' (someone decides something): yes."
        }
        TestId::LVC1BIS => {
            "Does the prepositional phrase as a whole work as a predicate with arguments of its own? \
             Example: 'en panne' describes a state of its subject: yes."
        }
        TestId::LVC2 | TestId::LVC2BIS => {
            "Is the subject of the verb also a semantic argument of the noun? \
             Example: in 'Paul prend une douche', Paul is the one showering: yes."
        }
        TestId::LVC3 => {
            "Does the verb contribute nothing beyond what tense, mood or person could express? \
             Could the sentence be rephrased around the noun alone without losing meaning? \
             Example: 'faire une promenade' ~ 'se promener': yes; 'prendre conscience' adds a beginning: no."
        }
        TestId::LVC4 => {
            "Is the predicate meaning kept in a phrase made of the noun and its arguments without the verb? \
             Example: 'la décision de Paul' after 'Paul prend une décision': yes."
        }
        TestId::VID2 => {
            "Does swapping a component for a near-synonym break the expected meaning or sound odd? \
             Example: 'prendre garde' vs '*saisir garde': yes."
        }
        TestId::VID3 => {
            "Does changing the inflection of the noun (number, determiner) break the expected meaning? \
             Example: 'kick the bucket' vs '*kick the buckets': yes."
        }
        TestId::ASP1 => {
            "Is there a light-verb construction with the same noun and the same arguments but another verb? \
             Example: 'prendre conscience' has 'avoir conscience': yes."
        }
        TestId::ASP2 => "Is the only meaning the verb adds an aspectual one?",
        TestId::PPI1 => {
            "Is the prepositional phrase a fixed predicative unit rather than a free complement? \
             Example: 'en vigueur' in 'entrer en vigueur': yes; 'dans la salle' in 'entrer dans la salle': no."
        }
        TestId::COP1 => {
            "Is there a copular sentence with the same prepositional phrase and the same subject? \
             Example: 'la loi entre en vigueur' / 'la loi est en vigueur': yes."
        }
    }
}

/// Prompt shown for `test` on `candidate`.
pub fn prompt_for(test: TestId, candidate: &Candidate) -> String {
    let mut text = format!("[{}] {}\nExpression: {}", test, guideline(test), candidate.lemma_phrase());
    if test == TestId::ASP2 {
        text.push_str("\nAspectual notions:");
        for a in AspectClass::ALL {
            text.push_str(&format!(" {} ({}),", a.as_str().to_lowercase(), a.notion()));
        }
        text.pop();
        text.push_str("\nExample: 'multiplier les allusions' repeats 'faire une allusion': yes.");
    }
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        let c = Candidate::from_lemmas("prendre", None, "bain");
        let q = question_id(&c, TestId::LVC2BIS);
        assert_eq!(parse_question_id(&q), Some(("prendre+bain", TestId::LVC2BIS)));
        assert_eq!(parse_question_id("nope"), None);
    }

    #[test]
    fn asp2_lists_all_notions() {
        let p = prompt_for(TestId::ASP2, &Candidate::from_lemmas("prendre", None, "départ"));
        for a in AspectClass::ALL {
            assert!(p.contains(a.notion()));
        }
        assert!(p.contains("prendre départ"));
    }

    #[test]
    fn vid3_shows_inflection_example() {
        let p = prompt_for(TestId::VID3, &Candidate::from_lemmas("kick", None, "bucket"));
        assert!(p.contains("*kick the buckets"));
    }
}
