//! Synthetic inputs for the benchmarks.

use mwe_triage::cupt::{parse_cupt, Corpus};

const SENTENCES: &[(&str, &str, Option<&str>, &str, &str)] = &[
    ("prend", "prendre", None, "bain", "Sing"),
    ("prend", "prendre", None, "conscience", "Sing"),
    ("tombe", "tomber", Some("en"), "panne", "Sing"),
    ("entre", "entrer", Some("en"), "discussion", "Sing"),
    ("prend", "prendre", None, "pouvoir", "Sing"),
    ("multiplie", "multiplier", None, "allusion", "Plur"),
    ("entre", "entrer", Some("en"), "vigueur", "Sing"),
    ("prend", "prendre", None, "inconnu", "Sing"),
];

/// CUPT text with `n` sentences cycling through a few known and unknown
/// expressions.
pub fn synthetic_cupt(n: usize) -> String {
    let mut out = String::new();
    for i in 0..n {
        let (form, verb, prep, noun, number) = SENTENCES[i % SENTENCES.len()];
        out.push_str(&format!("# sent_id = syn-{i}\n"));
        out.push_str(&format!("1\tIl\til\tPRON\t_\t_\t2\tnsubj\t_\t_\t*\n2\t{form}\t{verb}\tVERB\t_\t_\t0\troot\t_\t_\t*\n"));
        match prep {
            Some(p) => {
                out.push_str(&format!("3\t{p}\t{p}\tADP\t_\t_\t4\tcase\t_\t_\t*\n"));
                out.push_str(&format!("4\t{noun}\t{noun}\tNOUN\t_\tNumber={number}\t2\tobl:arg\t_\t_\t*\n"));
            }
            None => {
                out.push_str("3\tle\tle\tDET\t_\t_\t4\tdet\t_\t_\t*\n");
                out.push_str(&format!("4\t{noun}\t{noun}\tNOUN\t_\tNumber={number}\t2\tobj\t_\t_\t*\n"));
            }
        }
        out.push('\n');
    }
    out
}

pub fn synthetic_corpus(n: usize) -> Corpus {
    parse_cupt(&synthetic_cupt(n), "synthetic").expect("synthetic corpus parses")
}
