//! CUPT corpora: CoNLL-U with an extra PARSEME:MWE column.
//!
//! Parsing is lossless for well-formed input (every sentence, including the
//! last, terminated by a blank line, `\n` line endings): comment lines,
//! multiword-token ranges and empty nodes are carried through unchanged, so
//! [`emit_cupt`] reproduces the input byte for byte.

mod annotations;
mod extract;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use annotations::{
    annotations_for, apply_labels, read_annotations, AnnotationError, CorpusConvention,
};
pub use extract::{extract_candidates, extract_with, ExtractionConfig};
pub use parse::parse_cupt;

pub const COLUMN_COUNT: usize = 11;

/// One item of an MWE tag: the span number and, on the span's first token,
/// its category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MweItem {
    pub span: u32,
    pub category: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MweTag {
    /// `_`: no MWE information for this token.
    Underspecified,
    /// `*` when empty, otherwise `;`-separated items.
    Items(Vec<MweItem>),
}

impl MweTag {
    pub fn none() -> MweTag {
        MweTag::Items(Vec::new())
    }

    pub fn items(&self) -> &[MweItem] {
        match self {
            MweTag::Underspecified => &[],
            MweTag::Items(items) => items,
        }
    }

    pub fn parse(text: &str) -> Option<MweTag> {
        match text {
            "_" => return Some(MweTag::Underspecified),
            "*" => return Some(MweTag::none()),
            "" => return None,
            _ => {}
        }
        let mut items = Vec::new();
        for part in text.split(';') {
            let (num, cat) = match part.split_once(':') {
                Some((n, c)) => (n, Some(c)),
                None => (part, None),
            };
            if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) || num.starts_with('0') {
                return None;
            }
            let span = num.parse().ok()?;
            if let Some(c) = cat {
                if c.is_empty() || c.contains(|ch: char| ch.is_whitespace() || ch == ':') {
                    return None;
                }
            }
            items.push(MweItem {
                span,
                category: cat.map(str::to_string),
            });
        }
        Some(MweTag::Items(items))
    }
}

impl fmt::Display for MweTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MweTag::Underspecified => f.write_str("_"),
            MweTag::Items(items) if items.is_empty() => f.write_str("*"),
            MweTag::Items(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{}", item.span)?;
                    if let Some(c) = &item.category {
                        write!(f, ":{c}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// A basic (integer-id) token line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub index: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub xpos: String,
    pub feats: String,
    pub head: usize,
    pub deprel: String,
    pub deps: String,
    pub misc: String,
    pub mwe_tag: MweTag,
}

impl Token {
    /// Value of a morphological feature, e.g. `feature("Number")`.
    pub fn feature(&self, name: &str) -> Option<&str> {
        if self.feats == "_" {
            return None;
        }
        self.feats
            .split('|')
            .filter_map(|kv| kv.split_once('='))
            .find(|(k, _)| *k == name)
            .map(|(_, v)| v)
    }

    /// Dependency relation without its subtype (`obl:arg` -> `obl`).
    pub fn base_deprel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or("")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(clippy::large_enum_variant)]
pub enum Row {
    Token(Token),
    /// Multiword-token range or empty node, kept verbatim.
    Opaque(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub sent_id: String,
    /// Raw comment lines, `#` included.
    pub comments: Vec<String>,
    pub rows: Vec<Row>,
}

impl Sentence {
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.rows.iter().filter_map(|r| match r {
            Row::Token(t) => Some(t),
            Row::Opaque(_) => None,
        })
    }

    pub fn tokens_mut(&mut self) -> impl Iterator<Item = &mut Token> {
        self.rows.iter_mut().filter_map(|r| match r {
            Row::Token(t) => Some(t),
            Row::Opaque(_) => None,
        })
    }

    pub fn token(&self, index: usize) -> Option<&Token> {
        self.tokens().find(|t| t.index == index)
    }

    /// `key = value` pairs from the comment lines.
    pub fn metadata(&self) -> Vec<(String, String)> {
        self.comments
            .iter()
            .filter_map(|c| {
                let body = c.trim_start_matches('#').trim();
                body.split_once('=')
                    .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
            })
            .collect()
    }

    /// Surface text with the given token indices wrapped in brackets.
    pub fn highlighted(&self, indices: &[usize]) -> String {
        self.tokens()
            .map(|t| {
                if indices.contains(&t.index) {
                    format!("[{}]", t.form)
                } else {
                    t.form.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub source_name: String,
    pub sentences: Vec<Sentence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CuptErrorKind {
    #[error("expected {COLUMN_COUNT} tab-separated columns, found {0}")]
    ColumnCount(usize),
    #[error("malformed token id '{0}'")]
    BadId(String),
    #[error("token index {found} out of sequence (expected {expected})")]
    NonContiguous { expected: usize, found: usize },
    #[error("malformed head '{0}'")]
    BadHead(String),
    #[error("head {head} outside 0..={len}")]
    HeadOutOfRange { head: usize, len: usize },
    #[error("malformed MWE tag '{0}'")]
    BadMweTag(String),
    #[error("duplicate sent_id '{0}'")]
    DuplicateSentId(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{source_name}:{line}: sentence {sent_id}: {kind}")]
pub struct CuptError {
    pub source_name: String,
    pub line: usize,
    pub sent_id: String,
    pub kind: CuptErrorKind,
}

fn write_token(out: &mut String, t: &Token) {
    use std::fmt::Write;
    let _ = writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        t.index, t.form, t.lemma, t.upos, t.xpos, t.feats, t.head, t.deprel, t.deps, t.misc, t.mwe_tag
    );
}

/// Writes a corpus back out in CUPT format.
pub fn emit_cupt(corpus: &Corpus) -> String {
    let mut out = String::new();
    for s in &corpus.sentences {
        for c in &s.comments {
            out.push_str(c);
            out.push('\n');
        }
        for row in &s.rows {
            match row {
                Row::Token(t) => write_token(&mut out, t),
                Row::Opaque(line) => {
                    out.push_str(line);
                    out.push('\n');
                }
            }
        }
        out.push('\n');
    }
    out
}
