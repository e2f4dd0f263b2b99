//! Corpus audit: engine verdicts under both trees against corpus labels,
//! grouped by the lexicon's analysis of each candidate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

use crate::cupt::{annotations_for, apply_labels, extract_candidates, AnnotationError, CorpusConvention, Corpus};
use crate::engine::{classify_in, Mode};
use crate::lexicon::{
    classify_added_meaning, find_copular_counterpart, find_lvc_counterpart, EntryKind, Lexicon, MeaningDelta,
};
use crate::model::{Answer, Candidate, DecisionTrace, Label, TestId};
use crate::tree::{build_tree, TreeVariant};

/// Analysis signature shared by candidates the lexicon treats alike.
///
/// Aspectual readings are keyed by entry kind, the base verb they vary and
/// the aspect; light-verb readings by entry kind alone; anything else by
/// the entries involved, so unrelated expressions never share a cluster.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClusterKey {
    pub kind: String,
    pub base: String,
    pub delta: String,
}

impl fmt::Display for ClusterKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}|{}", self.kind, self.base, self.delta)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub candidate: Candidate,
    pub corpus_label: Label,
    pub baseline_label: Label,
    pub modified_label: Label,
    pub baseline_agrees: bool,
    /// Some answer on either path was assumed.
    pub low_confidence: bool,
    pub meaning_delta: Option<MeaningDelta>,
    pub cluster_key: ClusterKey,
    pub baseline_trace: DecisionTrace,
    pub modified_trace: DecisionTrace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub key: ClusterKey,
    /// Indices into [`AuditReport::rows`].
    pub rows: Vec<usize>,
    pub corpus_labels: BTreeSet<Label>,
}

impl Cluster {
    pub fn is_inconsistent(&self) -> bool {
        self.corpus_labels.len() >= 2
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub clusters: Vec<Cluster>,
    /// Indices into `clusters`.
    pub inconsistent_clusters: Vec<usize>,
}

impl AuditReport {
    pub fn inconsistent(&self) -> impl Iterator<Item = &Cluster> {
        self.inconsistent_clusters.iter().map(|&i| &self.clusters[i])
    }

    pub fn has_inconsistencies(&self) -> bool {
        !self.inconsistent_clusters.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Tsv,
    Pretty,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(ReportFormat::Tsv),
            "pretty" => Ok(ReportFormat::Pretty),
            _ => Err(format!("unknown report format '{s}'")),
        }
    }
}

fn cluster_key(lexicon: &Lexicon, c: &Candidate) -> (ClusterKey, Option<MeaningDelta>) {
    let senses = lexicon.senses(c);
    let Some(first) = senses.first() else {
        let key = ClusterKey {
            kind: "UNKNOWN".into(),
            base: c.lemma_phrase(),
            delta: "-".into(),
        };
        return (key, None);
    };
    let kind = match first.kind {
        EntryKind::NounPred => "NOUN_PRED",
        EntryKind::PpIdiom => "PP_IDIOM",
    };
    let counterpart = if c.is_prepositional() {
        find_copular_counterpart(lexicon, c).or_else(|| find_lvc_counterpart(lexicon, c))
    } else {
        find_lvc_counterpart(lexicon, c)
    };
    let delta = classify_added_meaning(lexicon, c, counterpart.as_ref());
    let base = match delta {
        MeaningDelta::Aspect(_) => counterpart.map_or_else(|| "-".to_string(), |cp| cp.base_verb),
        MeaningDelta::Nothing => "-".to_string(),
        MeaningDelta::Other => senses.iter().map(|e| e.entry_id.as_str()).collect::<Vec<_>>().join("|"),
    };
    let key = ClusterKey {
        kind: kind.into(),
        base,
        delta: delta.to_string(),
    };
    (key, Some(delta))
}

fn agrees(corpus: Label, baseline: Label) -> bool {
    corpus == baseline || (corpus == Label::Unannotated && baseline == Label::NonMwe)
}

/// Classifies every candidate under both trees, assuming NO where the
/// lexicon has no evidence, and clusters the rows.
pub fn audit_corpus(
    corpus: &Corpus,
    lexicon: &Lexicon,
    convention: CorpusConvention,
) -> Result<AuditReport, AnnotationError> {
    let mut candidates = extract_candidates(corpus);
    candidates.sort_by(|a, b| {
        let ka = (&a.sentence_ref.document, a.sentence_ref.sentence, &a.sentence_ref.tokens);
        let kb = (&b.sentence_ref.document, b.sentence_ref.sentence, &b.sentence_ref.tokens);
        ka.cmp(&kb)
    });
    audit_candidates(corpus, candidates, lexicon, convention)
}

pub fn audit_candidates(
    corpus: &Corpus,
    candidates: Vec<Candidate>,
    lexicon: &Lexicon,
    convention: CorpusConvention,
) -> Result<AuditReport, AnnotationError> {
    let labels = annotations_for(corpus, &candidates, convention)?;
    let baseline = build_tree(TreeVariant::Baseline);
    let modified = build_tree(TreeVariant::Modified);
    let mut rows = Vec::with_capacity(candidates.len());
    for c in candidates {
        let b = classify_in(&baseline, &c, lexicon, Mode::AssumeNo);
        let m = classify_in(&modified, &c, lexicon, Mode::AssumeNo);
        let corpus_label = labels.get(&c.id).copied().unwrap_or(Label::Unannotated);
        let (cluster_key, meaning_delta) = cluster_key(lexicon, &c);
        rows.push(AuditRow {
            corpus_label,
            baseline_label: b.label,
            modified_label: m.label,
            baseline_agrees: agrees(corpus_label, b.label),
            low_confidence: b.low_confidence || m.low_confidence,
            meaning_delta,
            cluster_key,
            baseline_trace: b.trace,
            modified_trace: m.trace,
            candidate: c,
        });
    }
    let mut by_key: BTreeMap<ClusterKey, Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        by_key.entry(r.cluster_key.clone()).or_default().push(i);
    }
    let clusters: Vec<Cluster> = by_key
        .into_iter()
        .map(|(key, idx)| Cluster {
            corpus_labels: idx.iter().map(|&i| rows[i].corpus_label).collect(),
            key,
            rows: idx,
        })
        .collect();
    let inconsistent_clusters = clusters
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_inconsistent())
        .map(|(i, _)| i)
        .collect();
    Ok(AuditReport {
        rows,
        clusters,
        inconsistent_clusters,
    })
}

/// True when the row respects the aspect zone property: a modified
/// LVC.asp verdict comes from a baseline path that failed LVC3 or entered
/// through an idiomatic PP.
pub fn row_in_aspect_zone(row: &AuditRow) -> bool {
    row.modified_label != Label::LvcAsp
        || row.baseline_trace.answer_of(TestId::LVC3) == Some(Answer::No)
        || row.baseline_trace.answer_of(TestId::PPI1) == Some(Answer::Yes)
}

/// The corpus with every candidate relabelled by its modified-tree verdict.
pub fn rewrite_with_modified(corpus: &Corpus, report: &AuditReport) -> Result<Corpus, AnnotationError> {
    let labels: Vec<(Candidate, Label)> = report
        .rows
        .iter()
        .map(|r| (r.candidate.clone(), r.modified_label))
        .collect();
    apply_labels(corpus, &labels)
}

pub const TSV_HEADER: &str = "candidate_id\tdocument\tsentence\ttokens\tverb\tprep\tpred\tcorpus_label\t\
baseline_label\tmodified_label\tbaseline_agrees\tlow_confidence\tcluster\tbaseline_trace\tmodified_trace";

pub const NO_INCONSISTENCIES: &str = "no inconsistencies";

pub fn report_render(report: &AuditReport, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Tsv => {
            out.push_str(TSV_HEADER);
            out.push('\n');
            for r in &report.rows {
                let c = &r.candidate;
                let tokens: Vec<String> = c.sentence_ref.tokens.iter().map(|t| t.to_string()).collect();
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    c.id,
                    c.sentence_ref.document,
                    c.sentence_ref.sentence,
                    tokens.join(","),
                    c.verb_lemma,
                    c.prep.as_deref().unwrap_or("-"),
                    c.pred_lemma,
                    r.corpus_label,
                    r.baseline_label,
                    r.modified_label,
                    r.baseline_agrees,
                    r.low_confidence,
                    r.cluster_key,
                    r.baseline_trace.render(),
                    r.modified_trace.render(),
                );
            }
        }
        ReportFormat::Pretty => {
            let _ = writeln!(
                out,
                "{} candidates, {} clusters, {} inconsistent",
                report.rows.len(),
                report.clusters.len(),
                report.inconsistent_clusters.len()
            );
            if !report.has_inconsistencies() {
                let _ = writeln!(out, "{NO_INCONSISTENCIES}");
            }
            for cl in report.inconsistent() {
                let labels: Vec<&str> = cl.corpus_labels.iter().map(|l| l.as_str()).collect();
                let _ = writeln!(out, "\ncluster {}  corpus labels: {}", cl.key, labels.join(", "));
                for &i in &cl.rows {
                    let r = &report.rows[i];
                    let _ = writeln!(
                        out,
                        "  {:<32} {:<16} corpus={:<10} baseline={:<10} modified={}{}",
                        r.candidate.lemma_phrase(),
                        r.candidate.id,
                        r.corpus_label.as_str(),
                        r.baseline_label.as_str(),
                        r.modified_label.as_str(),
                        if r.low_confidence { "  (assumed answers)" } else { "" }
                    );
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cupt::parse_cupt;

    const BAIN: &str = "# sent_id = a\n\
1\tIl\til\tPRON\t_\t_\t2\tnsubj\t_\t_\t*\n\
2\tprend\tprendre\tVERB\t_\t_\t0\troot\t_\t_\t1:LVC.full\n\
3\tun\tun\tDET\t_\t_\t4\tdet\t_\t_\t*\n\
4\tbain\tbain\tNOUN\t_\t_\t2\tobj\t_\t_\t1\n\n";

    #[test]
    fn empty_corpus_empty_report() {
        let r = audit_corpus(&Corpus::default(), &Lexicon::seed(), CorpusConvention::Unannotated).unwrap();
        assert!(r.rows.is_empty() && r.clusters.is_empty());
        assert!(report_render(&r, ReportFormat::Pretty).contains(NO_INCONSISTENCIES));
    }

    #[test]
    fn single_consistent_row() {
        let c = parse_cupt(BAIN, "t").unwrap();
        let r = audit_corpus(&c, &Lexicon::seed(), CorpusConvention::Unannotated).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(r.rows[0].baseline_agrees);
        assert!(!r.has_inconsistencies());
        let tsv = report_render(&r, ReportFormat::Tsv);
        assert_eq!(tsv.lines().count(), 2);
        assert!(tsv.starts_with(TSV_HEADER));
    }

    #[test]
    fn rewrite_uses_modified_labels() {
        let c = parse_cupt(BAIN, "t").unwrap();
        let r = audit_corpus(&c, &Lexicon::seed(), CorpusConvention::Unannotated).unwrap();
        assert_eq!(rewrite_with_modified(&c, &r).unwrap(), c);
    }
}
