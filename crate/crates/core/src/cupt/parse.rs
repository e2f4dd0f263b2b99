use std::collections::HashSet;

use super::{Corpus, CuptError, CuptErrorKind, MweTag, Row, Sentence, Token, COLUMN_COUNT};

struct Pending {
    first_line: usize,
    comments: Vec<String>,
    rows: Vec<Row>,
    // (line, head) of each basic token, checked once the sentence is complete
    heads: Vec<(usize, usize)>,
}

impl Pending {
    fn new(line: usize) -> Self {
        Pending {
            first_line: line,
            comments: Vec::new(),
            rows: Vec::new(),
            heads: Vec::new(),
        }
    }

    fn sent_id(&self, fallback: &str) -> String {
        self.comments
            .iter()
            .filter_map(|c| c.trim_start_matches('#').trim().strip_prefix("sent_id"))
            .filter_map(|rest| rest.trim_start().strip_prefix('='))
            .map(|v| v.trim().to_string())
            .next()
            .unwrap_or_else(|| fallback.to_string())
    }

    fn basic_count(&self) -> usize {
        self.rows.iter().filter(|r| matches!(r, Row::Token(_))).count()
    }
}

/// Parses CUPT text.
///
/// Sentences without a `sent_id` comment get `<source_name>-<n>` (1-based)
/// as their id.
pub fn parse_cupt(text: &str, source_name: &str) -> Result<Corpus, CuptError> {
    let mut sentences = Vec::new();
    let mut ids = HashSet::new();
    let mut pending: Option<Pending> = None;
    let err = |line: usize, sent_id: String, kind: CuptErrorKind| CuptError {
        source_name: source_name.to_string(),
        line,
        sent_id,
        kind,
    };

    let mut finish = |p: Pending, sentences: &mut Vec<Sentence>| -> Result<(), CuptError> {
        let fallback = format!("{source_name}-{}", sentences.len() + 1);
        let sent_id = p.sent_id(&fallback);
        let len = p.basic_count();
        for &(line, head) in &p.heads {
            if head > len {
                return Err(err(line, sent_id, CuptErrorKind::HeadOutOfRange { head, len }));
            }
        }
        if !ids.insert(sent_id.clone()) {
            return Err(err(p.first_line, sent_id.clone(), CuptErrorKind::DuplicateSentId(sent_id)));
        }
        sentences.push(Sentence {
            sent_id,
            comments: p.comments,
            rows: p.rows,
        });
        Ok(())
    };

    for (i, line) in text.split('\n').enumerate() {
        let lineno = i + 1;
        if line.is_empty() {
            if let Some(p) = pending.take() {
                finish(p, &mut sentences)?;
            }
            continue;
        }
        let p = pending.get_or_insert_with(|| Pending::new(lineno));
        if line.starts_with('#') && p.rows.is_empty() {
            p.comments.push(line.to_string());
            continue;
        }
        let sid = || p.sent_id(&format!("{source_name}-{}", sentences.len() + 1));
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != COLUMN_COUNT {
            return Err(err(lineno, sid(), CuptErrorKind::ColumnCount(cols.len())));
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            let ok = id
                .split(['-', '.'])
                .all(|part| !part.is_empty() && part.bytes().all(|b| b.is_ascii_digit()));
            if !ok {
                return Err(err(lineno, sid(), CuptErrorKind::BadId(id.to_string())));
            }
            p.rows.push(Row::Opaque(line.to_string()));
            continue;
        }
        let index: usize = id
            .parse()
            .map_err(|_| err(lineno, sid(), CuptErrorKind::BadId(id.to_string())))?;
        let expected = p.basic_count() + 1;
        if index != expected {
            return Err(err(lineno, sid(), CuptErrorKind::NonContiguous { expected, found: index }));
        }
        let head: usize = cols[6]
            .parse()
            .map_err(|_| err(lineno, sid(), CuptErrorKind::BadHead(cols[6].to_string())))?;
        let mwe_tag = MweTag::parse(cols[10])
            .ok_or_else(|| err(lineno, sid(), CuptErrorKind::BadMweTag(cols[10].to_string())))?;
        p.heads.push((lineno, head));
        p.rows.push(Row::Token(Token {
            index,
            form: cols[1].to_string(),
            lemma: cols[2].to_string(),
            upos: cols[3].to_string(),
            xpos: cols[4].to_string(),
            feats: cols[5].to_string(),
            head,
            deprel: cols[7].to_string(),
            deps: cols[8].to_string(),
            misc: cols[9].to_string(),
            mwe_tag,
        }));
    }
    if let Some(p) = pending.take() {
        finish(p, &mut sentences)?;
    }
    Ok(Corpus {
        source_name: source_name.to_string(),
        sentences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cupt::emit_cupt;

    const OSBURN: &str = "# sent_id = ex6\n\
# text = Osburn prend position dans Thulin\n\
1\tOsburn\tOsburn\tPROPN\t_\t_\t2\tnsubj\t_\t_\t*\n\
2\tprend\tprendre\tVERB\t_\t_\t0\troot\t_\t_\t2:LVC.full\n\
3\tposition\tposition\tNOUN\t_\tNumber=Sing\t2\tobj\t_\t_\t2\n\
4\tdans\tdans\tADP\t_\t_\t5\tcase\t_\t_\t*\n\
5\tThulin\tThulin\tPROPN\t_\t_\t3\tnmod\t_\t_\t*\n\n";

    #[test]
    fn parses_and_round_trips() {
        let c = parse_cupt(OSBURN, "t").unwrap();
        assert_eq!(c.sentences.len(), 1);
        assert_eq!(c.sentences[0].sent_id, "ex6");
        assert_eq!(c.sentences[0].tokens().count(), 5);
        assert_eq!(emit_cupt(&c), OSBURN);
    }

    #[test]
    fn empty_input() {
        let c = parse_cupt("", "t").unwrap();
        assert!(c.sentences.is_empty());
        assert_eq!(emit_cupt(&c), "");
    }

    #[test]
    fn ten_columns_is_an_error_on_that_line() {
        let bad = OSBURN.replace("case\t_\t_\t*\n", "case\t_\t_\n");
        let e = parse_cupt(&bad, "t").unwrap_err();
        assert_eq!(e.line, 6);
        assert_eq!(e.kind, CuptErrorKind::ColumnCount(10));
        assert_eq!(e.sent_id, "ex6");
    }

    #[test]
    fn missing_sent_id_is_synthesized() {
        let text = OSBURN.replace("# sent_id = ex6\n", "");
        let c = parse_cupt(&text, "doc").unwrap();
        assert_eq!(c.sentences[0].sent_id, "doc-1");
        assert_eq!(emit_cupt(&c), text);
    }

    #[test]
    fn head_range_checked_after_sentence() {
        let bad = OSBURN.replace("\t3\tnmod", "\t9\tnmod");
        let e = parse_cupt(&bad, "t").unwrap_err();
        assert_eq!(e.line, 7);
        assert!(matches!(e.kind, CuptErrorKind::HeadOutOfRange { head: 9, len: 5 }));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let twice = format!("{OSBURN}{OSBURN}");
        let e = parse_cupt(&twice, "t").unwrap_err();
        assert!(matches!(e.kind, CuptErrorKind::DuplicateSentId(_)));
        assert_eq!(e.line, 9);
    }

    #[test]
    fn ranges_kept_verbatim() {
        let text = "# sent_id = r\n\
1\tIl\til\tPRON\t_\t_\t2\tnsubj\t_\t_\t*\n\
2\ttombe\ttomber\tVERB\t_\t_\t0\troot\t_\t_\t1:VID\n\
3-4\taux\t_\t_\t_\t_\t_\t_\t_\t_\t_\n\
3\tà\tà\tADP\t_\t_\t5\tcase\t_\t_\t1\n\
4\tles\tle\tDET\t_\t_\t5\tdet\t_\t_\t*\n\
5\tmains\tmain\tNOUN\t_\tNumber=Plur\t2\tobl:arg\t_\t_\t1\n\n";
        let c = parse_cupt(text, "t").unwrap();
        assert_eq!(c.sentences[0].rows.len(), 6);
        assert_eq!(c.sentences[0].tokens().count(), 5);
        assert_eq!(emit_cupt(&c), text);
    }
}
