use std::fs;
use std::path::PathBuf;

use mwe_triage::audit::{audit_corpus, report_render, row_in_aspect_zone, ReportFormat};
use mwe_triage::cupt::{emit_cupt, extract_candidates, parse_cupt, read_annotations, Corpus, CorpusConvention};
use mwe_triage::lexicon::{classify_added_meaning, find_copular_counterpart, find_lvc_counterpart, Lexicon, MeaningDelta};
use mwe_triage::model::{AspectClass, Candidate, Label};
use mwe_triage::{classify, Mode, TreeVariant};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures")
}

fn gold_corpus() -> Corpus {
    let text = fs::read_to_string(fixtures().join("gold_examples.cupt")).unwrap();
    parse_cupt(&text, "gold_examples").unwrap()
}

fn find<'a>(cands: &'a [Candidate], verb: &str, prep: Option<&str>, pred: &str) -> Vec<&'a Candidate> {
    cands
        .iter()
        .filter(|c| c.verb_lemma == verb && c.prep.as_deref() == prep && c.pred_lemma == pred)
        .collect()
}

#[test]
fn every_fixture_round_trips() {
    for name in ["gold_examples.cupt", "bain_only.cupt"] {
        let text = fs::read_to_string(fixtures().join(name)).unwrap();
        assert_eq!(emit_cupt(&parse_cupt(&text, name).unwrap()), text, "{name}");
    }
}

#[test]
fn malformed_fixtures_report_their_line() {
    let expected = fs::read_to_string(fixtures().join("malformed/expected.tsv")).unwrap();
    let mut seen = 0;
    for line in expected.lines().filter(|l| !l.starts_with('#')) {
        let cols: Vec<&str> = line.split('\t').collect();
        let text = fs::read_to_string(fixtures().join("malformed").join(cols[0])).unwrap();
        let err = parse_cupt(&text, cols[0]).unwrap_err();
        assert_eq!(err.line.to_string(), cols[1], "{}: {err}", cols[0]);
        assert_eq!(err.sent_id, cols[2]);
        seen += 1;
    }
    assert_eq!(seen, 5);
}

#[test]
fn extraction_examples() {
    let corpus = gold_corpus();
    let cands = extract_candidates(&corpus);
    // Osburn prend position dans Thulin: the locative PP hangs off the noun
    let osburn: Vec<_> = cands.iter().filter(|c| c.id.starts_with("fr-ex17#")).collect();
    assert_eq!(osburn.len(), 1);
    assert_eq!(osburn[0].pred_lemma, "position");
    assert_eq!(find(&cands, "être", Some("en"), "vigueur").len(), 1);
    let punct = parse_cupt("1\t.\t.\tPUNCT\t_\t_\t0\troot\t_\t_\t*\n\n", "p").unwrap();
    assert!(extract_candidates(&punct).is_empty());
}

#[test]
fn annotation_examples() {
    let corpus = gold_corpus();
    let cands = extract_candidates(&corpus);
    let m = read_annotations(&corpus, CorpusConvention::Unannotated).unwrap();
    assert_eq!(m[&find(&cands, "prendre", None, "garde")[0].id], Label::Vid);
    let disc = &find(&cands, "entrer", Some("en"), "discussion")[0].id;
    assert_eq!(m[disc], Label::Unannotated);
    let m2 = read_annotations(&corpus, CorpusConvention::AbsentMeansNonMwe).unwrap();
    assert_eq!(m2[disc], Label::NonMwe);

    let verb_only = "# sent_id = v\n\
1\tIl\til\tPRON\t_\t_\t2\tnsubj\t_\t_\t*\n\
2\tprend\tprendre\tVERB\t_\t_\t0\troot\t_\t_\t1:VID\n\
3\tgarde\tgarde\tNOUN\t_\t_\t2\tobj\t_\t_\t*\n\n";
    let c = parse_cupt(verb_only, "v").unwrap();
    assert_eq!(read_annotations(&c, CorpusConvention::Unannotated).unwrap()["v#2-3"], Label::Unannotated);
}

#[test]
fn aspect_classes_of_gold_rows() {
    let lex = Lexicon::seed();
    let delta = |v: &str, p: Option<&str>, n: &str| {
        let c = Candidate::from_lemmas(v, p, n);
        let cp = if p.is_some() {
            find_copular_counterpart(&lex, &c)
        } else {
            find_lvc_counterpart(&lex, &c)
        };
        classify_added_meaning(&lex, &c, cp.as_ref())
    };
    assert_eq!(delta("multiplier", None, "allusion"), MeaningDelta::Aspect(AspectClass::Iterative));
    assert_eq!(delta("sortir", Some("de"), "affiche"), MeaningDelta::Aspect(AspectClass::Terminative));
    assert_eq!(delta("tomber", Some("en"), "panne"), MeaningDelta::Aspect(AspectClass::Inchoative));
}

#[test]
fn fixture_candidates_classify_like_the_corpus_evidence_suggests() {
    let lex = Lexicon::seed();
    let cands = extract_candidates(&gold_corpus());
    let modified = |v, p, n| classify(find(&cands, v, p, n)[0], &lex, TreeVariant::Modified, Mode::Strict).label;
    assert_eq!(modified("avoir", None, "conscience"), Label::LvcFull);
    assert_eq!(modified("garder", None, "silence"), Label::LvcAsp);
    assert_eq!(modified("prendre", Some("en"), "compte"), Label::Vid);
    assert_eq!(modified("prendre", None, "train"), Label::Unresolved);
}

#[test]
fn audit_properties_on_fixtures() {
    let corpus = gold_corpus();
    let lex = Lexicon::seed();
    let a = audit_corpus(&corpus, &lex, CorpusConvention::Unannotated).unwrap();
    let b = audit_corpus(&corpus, &lex, CorpusConvention::Unannotated).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.rows.len(), extract_candidates(&corpus).len());
    // clusters partition the rows
    let mut covered: Vec<usize> = a.clusters.iter().flat_map(|c| c.rows.iter().copied()).collect();
    covered.sort_unstable();
    assert_eq!(covered, (0..a.rows.len()).collect::<Vec<_>>());
    for row in &a.rows {
        assert!(row_in_aspect_zone(row), "{}", row.candidate.id);
        let agrees = row.corpus_label == row.baseline_label
            || (row.corpus_label == Label::Unannotated && row.baseline_label == Label::NonMwe);
        assert_eq!(row.baseline_agrees, agrees);
    }
    for cl in &a.clusters {
        let kinds: std::collections::BTreeSet<_> = cl.rows.iter().map(|&i| &a.rows[i].cluster_key.kind).collect();
        assert_eq!(kinds.len(), 1);
    }
    let pretty = report_render(&a, ReportFormat::Pretty);
    assert!(pretty.matches("\ncluster ").count() >= 2);
    assert_eq!(
        report_render(&a, ReportFormat::Tsv).lines().count(),
        a.rows.len() + 1
    );
}
