use serde::{Deserialize, Serialize};

use super::{Corpus, Sentence, Token};
use crate::model::{Candidate, Number, SentenceRef};

/// Which dependency relations and parts of speech make up a candidate.
/// Relations are compared without their subtype.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExtractionConfig {
    pub verb_upos: Vec<String>,
    pub noun_upos: Vec<String>,
    pub object_rels: Vec<String>,
    pub oblique_rels: Vec<String>,
    pub case_rels: Vec<String>,
    pub copula_rels: Vec<String>,
    pub det_rels: Vec<String>,
    pub adj_rels: Vec<String>,
    pub language: String,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        ExtractionConfig {
            verb_upos: v(&["VERB"]),
            noun_upos: v(&["NOUN"]),
            object_rels: v(&["obj"]),
            oblique_rels: v(&["obl"]),
            case_rels: v(&["case"]),
            copula_rels: v(&["cop"]),
            det_rels: v(&["det"]),
            adj_rels: v(&["amod"]),
            language: "fr".to_string(),
        }
    }
}

fn has(list: &[String], item: &str) -> bool {
    list.iter().any(|x| x == item)
}

/// Candidates of every sentence with the default configuration.
pub fn extract_candidates(corpus: &Corpus) -> Vec<Candidate> {
    extract_with(corpus, &ExtractionConfig::default())
}

pub fn extract_with(corpus: &Corpus, config: &ExtractionConfig) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (i, s) in corpus.sentences.iter().enumerate() {
        sentence_candidates(&corpus.source_name, i, s, config, &mut out);
    }
    out
}

fn sentence_candidates(doc: &str, pos: usize, s: &Sentence, cfg: &ExtractionConfig, out: &mut Vec<Candidate>) {
    let tokens: Vec<&Token> = s.tokens().collect();
    let children = |head: usize| tokens.iter().copied().filter(move |t| t.head == head && t.index != head);
    let first_child = |head: usize, rels: &[String]| {
        children(head)
            .filter(|t| has(rels, t.base_deprel()))
            .min_by_key(|t| t.index)
    };
    let mut found: Vec<(&Token, Option<&Token>, &Token)> = Vec::new();

    for verb in tokens.iter().filter(|t| has(&cfg.verb_upos, &t.upos)) {
        for dep in children(verb.index).filter(|t| has(&cfg.noun_upos, &t.upos)) {
            let rel = dep.base_deprel();
            if has(&cfg.object_rels, rel) {
                found.push((verb, None, dep));
            } else if has(&cfg.oblique_rels, rel) {
                if let Some(case) = first_child(dep.index, &cfg.case_rels) {
                    found.push((verb, Some(case), dep));
                }
            }
        }
    }
    // Copular clauses: the predicate noun heads both the copula and the
    // preposition.
    for noun in tokens.iter().filter(|t| has(&cfg.noun_upos, &t.upos)) {
        if let (Some(cop), Some(case)) = (
            first_child(noun.index, &cfg.copula_rels),
            first_child(noun.index, &cfg.case_rels),
        ) {
            found.push((cop, Some(case), noun));
        }
    }

    found.sort_by_key(|(v, _, n)| (v.index, n.index));
    for (verb, prep, noun) in found {
        let dets: Vec<&str> = children(noun.index)
            .filter(|t| has(&cfg.det_rels, t.base_deprel()))
            .map(|t| t.lemma.as_str())
            .collect();
        let has_adj = children(noun.index).any(|t| has(&cfg.adj_rels, t.base_deprel()));
        let (observed_number, number_observed) = match noun.feature("Number") {
            Some("Plur") => (Number::Plural, true),
            Some("Sing") => (Number::Singular, true),
            _ => (Number::Singular, false),
        };
        let mut idx = vec![verb.index, noun.index];
        if let Some(p) = prep {
            idx.push(p.index);
        }
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != 2 + usize::from(prep.is_some()) {
            continue;
        }
        out.push(Candidate {
            id: format!("{}#{}-{}", s.sent_id, verb.index, noun.index),
            verb_lemma: verb.lemma.clone(),
            prep: prep.map(|p| p.lemma.clone()),
            pred_lemma: noun.lemma.clone(),
            observed_number,
            number_observed,
            determiner_pattern: dets.join(" "),
            has_adj_modifier: has_adj,
            sentence_ref: SentenceRef {
                document: doc.to_string(),
                sentence: pos,
                tokens: idx,
            },
            language: cfg.language.clone(),
        });
    }
}

/// Verb and predicate token indices of a candidate produced by extraction.
pub(crate) fn head_indices(c: &Candidate) -> Option<(usize, usize)> {
    let (_, tail) = c.id.rsplit_once('#')?;
    let (v, n) = tail.split_once('-')?;
    Some((v.parse().ok()?, n.parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cupt::parse_cupt;

    const TEXT: &str = "# sent_id = s1\n\
1\tIl\til\tPRON\t_\t_\t2\tnsubj\t_\t_\t*\n\
2\tprend\tprendre\tVERB\t_\t_\t0\troot\t_\t_\t*\n\
3\tune\tun\tDET\t_\t_\t5\tdet\t_\t_\t*\n\
4\tgrande\tgrand\tADJ\t_\t_\t5\tamod\t_\t_\t*\n\
5\tdécision\tdécision\tNOUN\t_\tNumber=Sing\t2\tobj\t_\t_\t*\n\n\
# sent_id = s2\n\
1\tLa\tle\tDET\t_\t_\t2\tdet\t_\t_\t*\n\
2\tvoiture\tvoiture\tNOUN\t_\t_\t5\tnsubj\t_\t_\t*\n\
3\test\têtre\tAUX\t_\t_\t5\tcop\t_\t_\t1:LVC.full\n\
4\ten\ten\tADP\t_\t_\t5\tcase\t_\t_\t1\n\
5\tpanne\tpanne\tNOUN\t_\t_\t0\troot\t_\t_\t1\n\n";

    #[test]
    fn direct_object_candidate() {
        let c = parse_cupt(TEXT, "d").unwrap();
        let cands = extract_candidates(&c);
        assert_eq!(cands.len(), 2);
        let a = &cands[0];
        assert_eq!(a.id, "s1#2-5");
        assert_eq!((a.verb_lemma.as_str(), a.pred_lemma.as_str()), ("prendre", "décision"));
        assert_eq!(a.prep, None);
        assert_eq!(a.determiner_pattern, "un");
        assert!(a.has_adj_modifier);
        assert!(a.number_observed);
        assert_eq!(a.sentence_ref.tokens, vec![2, 5]);
        assert_eq!(head_indices(a), Some((2, 5)));
    }

    #[test]
    fn copular_candidate() {
        let c = parse_cupt(TEXT, "d").unwrap();
        let b = &extract_candidates(&c)[1];
        assert_eq!(b.verb_lemma, "être");
        assert_eq!(b.prep.as_deref(), Some("en"));
        assert_eq!(b.pred_lemma, "panne");
        assert!(!b.number_observed);
        assert_eq!(b.observed_number, Number::Singular);
        assert_eq!(b.sentence_ref.tokens, vec![3, 4, 5]);
        assert_eq!(b.sentence_ref.sentence, 1);
    }

    #[test]
    fn relation_sets_are_configurable() {
        let c = parse_cupt(TEXT, "d").unwrap();
        let cfg = ExtractionConfig {
            object_rels: vec![],
            ..ExtractionConfig::default()
        };
        assert_eq!(extract_with(&c, &cfg).len(), 1);
    }
}
