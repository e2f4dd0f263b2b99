use criterion::{criterion_group, criterion_main, Criterion};
use mwe_triage::{audit_corpus, build_tree, classify_in, extract_candidates, CorpusConvention, Lexicon, Mode, TreeVariant};
use mwe_triage_bench::{synthetic_corpus, synthetic_cupt};

fn engine(c: &mut Criterion) {
    let lexicon = Lexicon::seed();
    let corpus = synthetic_corpus(1000);
    let candidates = extract_candidates(&corpus);
    let tree = build_tree(TreeVariant::Modified);
    c.bench_function("classify_1000_modified", |b| {
        b.iter(|| {
            for cand in &candidates {
                std::hint::black_box(classify_in(&tree, cand, &lexicon, Mode::AssumeNo));
            }
        })
    });
    let text = synthetic_cupt(1000);
    c.bench_function("parse_1000_sentences", |b| {
        b.iter(|| mwe_triage::parse_cupt(std::hint::black_box(&text), "bench").unwrap())
    });
    c.bench_function("audit_1000_sentences", |b| {
        b.iter(|| audit_corpus(&corpus, &lexicon, CorpusConvention::Unannotated).unwrap())
    });
    c.bench_function("enumerate_paths_both", |b| {
        b.iter(|| {
            for v in TreeVariant::ALL {
                std::hint::black_box(build_tree(v).enumerate_paths());
            }
        })
    });
}

criterion_group!(benches, engine);
criterion_main!(benches);
