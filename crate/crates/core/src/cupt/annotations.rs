use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::extract::head_indices;
use super::{extract_candidates, Corpus, MweItem, MweTag, Sentence};
use crate::model::{Candidate, Label};

/// How a candidate that no MWE span covers is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusConvention {
    /// As `Unannotated`: the annotators may simply not have looked.
    #[default]
    Unannotated,
    /// As an explicit `NonMwe` judgment.
    AbsentMeansNonMwe,
}

impl std::str::FromStr for CorpusConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unannotated" => Ok(CorpusConvention::Unannotated),
            "non-mwe" | "absent-means-non-mwe" => Ok(CorpusConvention::AbsentMeansNonMwe),
            _ => Err(format!("unknown corpus convention '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnotationError {
    #[error("sentence {sent_id}: MWE {span} has categories '{first}' and '{second}'")]
    ConflictingSpan {
        sent_id: String,
        span: u32,
        first: String,
        second: String,
    },
    #[error("sentence {sent_id}: MWE {span} has no category")]
    MissingCategory { sent_id: String, span: u32 },
    #[error("candidate {candidate}: covered by spans labelled {first} and {second}")]
    ConflictingCandidate {
        candidate: String,
        first: Label,
        second: Label,
    },
    #[error("candidate {0} does not point into the corpus")]
    UnknownCandidate(String),
}

struct Span {
    category: String,
    tokens: BTreeSet<usize>,
}

fn spans(s: &Sentence) -> Result<BTreeMap<u32, Span>, AnnotationError> {
    let mut cats: BTreeMap<u32, Option<String>> = BTreeMap::new();
    let mut toks: BTreeMap<u32, BTreeSet<usize>> = BTreeMap::new();
    for t in s.tokens() {
        for item in t.mwe_tag.items() {
            toks.entry(item.span).or_default().insert(t.index);
            let slot = cats.entry(item.span).or_default();
            if let Some(c) = &item.category {
                match slot {
                    Some(prev) if prev != c => {
                        return Err(AnnotationError::ConflictingSpan {
                            sent_id: s.sent_id.clone(),
                            span: item.span,
                            first: prev.clone(),
                            second: c.clone(),
                        })
                    }
                    _ => *slot = Some(c.clone()),
                }
            }
        }
    }
    cats.into_iter()
        .map(|(span, cat)| {
            let category = cat.ok_or_else(|| AnnotationError::MissingCategory {
                sent_id: s.sent_id.clone(),
                span,
            })?;
            Ok((span, Span { category, tokens: toks.remove(&span).unwrap_or_default() }))
        })
        .collect()
}

/// Corpus labels of extracted candidates, keyed by candidate id.
///
/// A candidate takes the category of an MWE span containing both its verb
/// and its predicate. Spans of categories outside VID and LVC.* are ignored.
pub fn annotations_for(
    corpus: &Corpus,
    candidates: &[Candidate],
    convention: CorpusConvention,
) -> Result<BTreeMap<String, Label>, AnnotationError> {
    let mut cache: BTreeMap<usize, BTreeMap<u32, Span>> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for c in candidates {
        let pos = c.sentence_ref.sentence;
        let sentence = corpus
            .sentences
            .get(pos)
            .ok_or_else(|| AnnotationError::UnknownCandidate(c.id.clone()))?;
        if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(pos) {
            e.insert(spans(sentence)?);
        }
        let (v, n) = head_indices(c).ok_or_else(|| AnnotationError::UnknownCandidate(c.id.clone()))?;
        let mut label: Option<Label> = None;
        for span in cache[&pos].values() {
            if !(span.tokens.contains(&v) && span.tokens.contains(&n)) {
                continue;
            }
            let Some(found) = Label::parse_category(&span.category).ok().filter(|l| l.category().is_some())
            else {
                continue;
            };
            match label {
                Some(prev) if prev != found => {
                    return Err(AnnotationError::ConflictingCandidate {
                        candidate: c.id.clone(),
                        first: prev,
                        second: found,
                    })
                }
                _ => label = Some(found),
            }
        }
        let label = label.unwrap_or(match convention {
            CorpusConvention::Unannotated => Label::Unannotated,
            CorpusConvention::AbsentMeansNonMwe => Label::NonMwe,
        });
        out.insert(c.id.clone(), label);
    }
    Ok(out)
}

/// [`annotations_for`] over the candidates found by default extraction.
pub fn read_annotations(
    corpus: &Corpus,
    convention: CorpusConvention,
) -> Result<BTreeMap<String, Label>, AnnotationError> {
    annotations_for(corpus, &extract_candidates(corpus), convention)
}

/// Rewrites the MWE column so each listed candidate carries its label.
///
/// In-scope spans covering a candidate's verb and predicate are removed
/// first; a label with a category then adds a fresh span over the
/// candidate's tokens. Candidates labelled `Unresolved` are left untouched.
pub fn apply_labels(corpus: &Corpus, labels: &[(Candidate, Label)]) -> Result<Corpus, AnnotationError> {
    let mut out = corpus.clone();
    for (c, label) in labels {
        if *label == Label::Unresolved {
            continue;
        }
        let (v, n) = head_indices(c).ok_or_else(|| AnnotationError::UnknownCandidate(c.id.clone()))?;
        let sentence = out
            .sentences
            .get_mut(c.sentence_ref.sentence)
            .ok_or_else(|| AnnotationError::UnknownCandidate(c.id.clone()))?;
        let existing = spans(sentence)?;
        let stale: BTreeSet<u32> = existing
            .iter()
            .filter(|(_, s)| {
                s.tokens.contains(&v)
                    && s.tokens.contains(&n)
                    && Label::parse_category(&s.category).is_ok_and(|l| l.category().is_some())
            })
            .map(|(id, _)| *id)
            .collect();
        for t in sentence.tokens_mut() {
            if let MweTag::Items(items) = &mut t.mwe_tag {
                items.retain(|i| !stale.contains(&i.span));
            }
        }
        let Some(cat) = label.category() else { continue };
        let next = sentence
            .tokens()
            .flat_map(|t| t.mwe_tag.items().iter().map(|i| i.span))
            .max()
            .map_or(1, |m| m + 1);
        let mut first = true;
        for t in sentence.tokens_mut() {
            if !c.sentence_ref.tokens.contains(&t.index) {
                continue;
            }
            let item = MweItem {
                span: next,
                category: first.then(|| cat.to_string()),
            };
            first = false;
            match &mut t.mwe_tag {
                MweTag::Items(items) => items.push(item),
                tag @ MweTag::Underspecified => *tag = MweTag::Items(vec![item]),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cupt::{emit_cupt, parse_cupt};

    const TEXT: &str = "# sent_id = a\n\
1\tIl\til\tPRON\t_\t_\t2\tnsubj\t_\t_\t*\n\
2\tprend\tprendre\tVERB\t_\t_\t0\troot\t_\t_\t1:LVC.full\n\
3\tun\tun\tDET\t_\t_\t4\tdet\t_\t_\t*\n\
4\tbain\tbain\tNOUN\t_\t_\t2\tobj\t_\t_\t1\n\n\
# sent_id = b\n\
1\tIl\til\tPRON\t_\t_\t2\tnsubj\t_\t_\t*\n\
2\tprend\tprendre\tVERB\t_\t_\t0\troot\t_\t_\t*\n\
3\tconscience\tconscience\tNOUN\t_\t_\t2\tobj\t_\t_\t*\n\n";

    #[test]
    fn reads_spans_and_absences() {
        let c = parse_cupt(TEXT, "t").unwrap();
        let m = read_annotations(&c, CorpusConvention::Unannotated).unwrap();
        assert_eq!(m["a#2-4"], Label::LvcFull);
        assert_eq!(m["b#2-3"], Label::Unannotated);
        let m = read_annotations(&c, CorpusConvention::AbsentMeansNonMwe).unwrap();
        assert_eq!(m["b#2-3"], Label::NonMwe);
    }

    #[test]
    fn conflicting_span_categories() {
        let bad = TEXT.replace("\t_\t_\t1\n\n", "\t_\t_\t1:VID\n\n");
        let c = parse_cupt(&bad, "t").unwrap();
        assert!(matches!(
            read_annotations(&c, CorpusConvention::Unannotated),
            Err(AnnotationError::ConflictingSpan { span: 1, .. })
        ));
    }

    #[test]
    fn other_categories_are_ignored() {
        let irv = TEXT.replace("1:LVC.full", "1:IRV");
        let c = parse_cupt(&irv, "t").unwrap();
        let m = read_annotations(&c, CorpusConvention::Unannotated).unwrap();
        assert_eq!(m["a#2-4"], Label::Unannotated);
    }

    #[test]
    fn apply_then_read_back() {
        let c = parse_cupt(TEXT, "t").unwrap();
        let cands = extract_candidates(&c);
        let labelled = vec![(cands[0].clone(), Label::NonMwe), (cands[1].clone(), Label::LvcAsp)];
        let out = apply_labels(&c, &labelled).unwrap();
        let m = read_annotations(&out, CorpusConvention::Unannotated).unwrap();
        assert_eq!(m["a#2-4"], Label::Unannotated);
        assert_eq!(m["b#2-3"], Label::LvcAsp);
        let text = emit_cupt(&out);
        assert!(text.contains("prendre\tVERB\t_\t_\t0\troot\t_\t_\t1:LVC.asp\n"));
        // untouched when nothing changes
        assert_eq!(emit_cupt(&apply_labels(&c, &[]).unwrap()), TEXT);
    }
}
