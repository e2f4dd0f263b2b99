//! Line-oriented interactive session.

use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use anyhow::{Context, Result};
use mwe_triage::model::Answer;
use mwe_triage::session::Session;

const HELP: &str = "answer with y or n, optionally followed by a note; q stops (answers so far are kept)";

/// Asks the pending questions one at a time until none remain, the input
/// ends, or the user types `q`. The answers log at `persist`, if any, is
/// rewritten after every accepted answer.
pub fn run_terminal(
    session: &mut Session,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    persist: Option<&Path>,
) -> Result<()> {
    writeln!(out, "session {} ({} tree), {}", session.id(), session.variant(), HELP)?;
    while let Some(q) = session.next_question().cloned() {
        writeln!(out, "\n[{} pending] {}", session.pending_len(), q.sentence_text)?;
        if !q.partial_trace.steps.is_empty() {
            writeln!(out, "so far: {}", q.partial_trace.render())?;
        }
        write!(out, "{}\n> ", q.prompt)?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            break;
        }
        let line = line.trim();
        let (word, note) = line.split_once(' ').unwrap_or((line, ""));
        if word.eq_ignore_ascii_case("q") {
            break;
        }
        let answer = match word.parse::<Answer>() {
            Ok(a @ (Answer::Yes | Answer::No)) => a,
            _ => {
                writeln!(out, "{HELP}")?;
                continue;
            }
        };
        match session.answer(&q.question_id, answer, note.trim()) {
            Ok(outcome) => {
                if let Some(v) = outcome.verdict {
                    writeln!(out, "=> {} {}", outcome.candidate_id, v.label)?;
                }
                if let Some(p) = persist {
                    fs::write(p, session.export_log()).with_context(|| format!("cannot write {}", p.display()))?;
                }
            }
            Err(e) => writeln!(out, "{e}")?,
        }
    }
    if session.is_finished() {
        writeln!(out, "\nall candidates resolved")?;
    } else {
        writeln!(out, "\n{} candidates still pending", session.pending_len())?;
    }
    write!(out, "{}", session.verdict_table())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use mwe_triage::cupt::parse_cupt;
    use mwe_triage::{Lexicon, Label, TreeVariant};
    use std::sync::Arc;

    const DEPART: &str = "# sent_id = b\n\
1\tIl\til\tPRON\t_\t_\t2\tnsubj\t_\t_\t*\n\
2\tprend\tprendre\tVERB\t_\t_\t0\troot\t_\t_\t*\n\
3\tson\tson\tDET\t_\t_\t4\tdet\t_\t_\t*\n\
4\tdépart\tdépart\tNOUN\t_\t_\t2\tobj\t_\t_\t*\n\n";

    #[test]
    fn answers_from_input() {
        let corpus = Arc::new(parse_cupt(DEPART, "t").unwrap());
        let mut s = Session::start("t1", corpus, Arc::new(Lexicon::seed()), TreeVariant::Modified);
        let mut input = "maybe\ny it starts\n".as_bytes();
        let mut out = Vec::new();
        run_terminal(&mut s, &mut input, &mut out, None).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("[1 pending] Il [prend] son [départ]"));
        assert!(text.contains(HELP));
        assert!(text.contains("all candidates resolved"));
        assert_eq!(s.verdicts()["b#2-4"].label, Label::LvcAsp);
        assert_eq!(s.answers()[0].note, "it starts");
    }

    #[test]
    fn quit_keeps_pending() {
        let corpus = Arc::new(parse_cupt(DEPART, "t").unwrap());
        let mut s = Session::start("t1", corpus, Arc::new(Lexicon::seed()), TreeVariant::Modified);
        let mut out = Vec::new();
        run_terminal(&mut s, &mut "q\n".as_bytes(), &mut out, None).unwrap();
        assert!(String::from_utf8(out).unwrap().contains("1 candidates still pending"));
    }
}
