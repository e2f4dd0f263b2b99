use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use mwe_triage::audit::{audit_corpus, report_render, rewrite_with_modified};
use mwe_triage::cupt::{emit_cupt, extract_candidates, parse_cupt, Corpus};
use mwe_triage::lexicon::{load_lexicon, Lexicon};
use mwe_triage::session::{read_log, Session, SessionHub};
use mwe_triage::{build_tree, classify_in, Mode, ReportFormat, TreeVariant};

use crate::args::{AuditArgs, ClassifyArgs, Cli, Command, ExportArgs, Inputs, SessionArgs};

pub fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Classify(a) => classify(a, out),
        Command::Audit(a) => audit(a, out),
        Command::Session(a) => session(a, out),
        Command::Export(a) => export(a, out),
    }
}

pub fn load_corpus(path: &Path) -> Result<Corpus> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read corpus {}", path.display()))?;
    Ok(parse_cupt(&text, &path.display().to_string())?)
}

pub fn load_lexicon_arg(path: Option<&Path>) -> Result<Lexicon> {
    match path {
        None => Ok(Lexicon::seed()),
        Some(p) => {
            let file = fs::File::open(p).with_context(|| format!("cannot open lexicon {}", p.display()))?;
            load_lexicon(file).with_context(|| format!("invalid lexicon {}", p.display()))
        }
    }
}

fn load(inputs: &Inputs) -> Result<(Corpus, Lexicon)> {
    let lexicon = load_lexicon_arg(inputs.lexicon.as_deref())?;
    let corpus = load_corpus(&inputs.corpus)?;
    Ok((corpus, lexicon))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

pub const CLASSIFY_HEADER: &str = "candidate_id\tverb\tprep\tpred\tnumber\tdeterminers\tlabel\tlow_confidence\ttrace";

fn classify(a: ClassifyArgs, out: &mut dyn Write) -> Result<i32> {
    let (corpus, lexicon) = load(&a.inputs)?;
    let tree = build_tree(a.tree.into());
    let mode: Mode = a.mode.into();
    let mut text = String::new();
    let pretty = matches!(ReportFormat::from(a.format), ReportFormat::Pretty);
    if !pretty {
        text.push_str(CLASSIFY_HEADER);
        text.push('\n');
    }
    for c in extract_candidates(&corpus) {
        let v = classify_in(&tree, &c, &lexicon, mode);
        if pretty {
            text.push_str(&format!(
                "{:<16} {:<34} {:<10}{}\n    {}\n",
                c.id,
                c.lemma_phrase(),
                v.label.as_str(),
                if v.low_confidence { " (assumed answers)" } else { "" },
                v.trace.render()
            ));
        } else {
            text.push_str(&format!(
                "{}\t{}\t{}\t{}\t{:?}\t{}\t{}\t{}\t{}\n",
                c.id,
                c.verb_lemma,
                c.prep.as_deref().unwrap_or("-"),
                c.pred_lemma,
                c.observed_number,
                if c.determiner_pattern.is_empty() { "-" } else { &c.determiner_pattern },
                v.label,
                v.low_confidence,
                v.trace.render()
            ));
        }
    }
    emit(&text, a.output.as_deref(), out)?;
    Ok(0)
}

fn audit(a: AuditArgs, out: &mut dyn Write) -> Result<i32> {
    let (corpus, lexicon) = load(&a.inputs)?;
    let report = audit_corpus(&corpus, &lexicon, a.convention.into())
        .with_context(|| format!("inconsistent annotations in {}", a.inputs.corpus.display()))?;
    emit(&report_render(&report, a.format.into()), a.output.as_deref(), out)?;
    if let Some(p) = &a.rewrite {
        let rewritten = rewrite_with_modified(&corpus, &report)?;
        fs::write(p, emit_cupt(&rewritten)).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(if report.has_inconsistencies() { 1 } else { 0 })
}

/// Keeps an answers log file in step with one session.
#[derive(Clone, Debug)]
pub struct Persist {
    pub session_id: String,
    pub path: PathBuf,
}

impl Persist {
    pub fn save(&self, hub: &SessionHub) -> std::io::Result<()> {
        if let Some(s) = hub.session(&self.session_id) {
            let log = s.lock().expect("session poisoned").export_log();
            fs::write(&self.path, log)?;
        }
        Ok(())
    }
}

fn new_session_id() -> String {
    uuid::Uuid::new_v4().to_string()
}

/// Starts a session, replaying `answers` first when that file exists.
pub fn open_session(
    corpus: Arc<Corpus>,
    lexicon: Arc<Lexicon>,
    variant: TreeVariant,
    answers: Option<&Path>,
) -> Result<Session> {
    let log = match answers {
        Some(p) if p.exists() => {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            read_log(&text).with_context(|| format!("invalid answers log {}", p.display()))?
        }
        _ => Vec::new(),
    };
    Session::replay(&new_session_id(), corpus, lexicon, variant, &log).context("answers log does not replay")
}

fn session(a: SessionArgs, out: &mut dyn Write) -> Result<i32> {
    let (corpus, lexicon) = load(&a.inputs)?;
    let (corpus, lexicon) = (Arc::new(corpus), Arc::new(lexicon));
    let variant: TreeVariant = a.tree.into();
    let session = open_session(corpus.clone(), lexicon.clone(), variant, a.answers.as_deref())?;
    if a.http.is_none() && a.socket.is_none() {
        let mut session = session;
        let stdin = std::io::stdin();
        crate::terminal::run_terminal(&mut session, &mut stdin.lock(), out, a.answers.as_deref())?;
        return Ok(0);
    }
    let hub = Arc::new(SessionHub::new(corpus, lexicon, variant).with_id_generator(new_session_id));
    let id = hub.insert(session);
    let persist = a.answers.map(|path| Persist {
        session_id: id.clone(),
        path,
    });
    writeln!(out, "session {id}")?;
    out.flush()?;
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        if let Some(addr) = a.http {
            let listener = tokio::net::TcpListener::bind(&addr)
                .await
                .with_context(|| format!("cannot listen on {addr}"))?;
            let app = crate::http::router(hub, persist);
            axum::serve(listener, app).await?;
        } else if let Some(path) = a.socket {
            let listener = tokio::net::UnixListener::bind(&path)
                .with_context(|| format!("cannot listen on {}", path.display()))?;
            crate::socket::serve(listener, hub, persist).await?;
        }
        anyhow::Ok(())
    })?;
    Ok(0)
}

fn export(a: ExportArgs, out: &mut dyn Write) -> Result<i32> {
    let (corpus, lexicon) = load(&a.inputs)?;
    if !a.answers.exists() {
        anyhow::bail!("answers log {} does not exist", a.answers.display());
    }
    let s = open_session(Arc::new(corpus), Arc::new(lexicon), a.tree.into(), Some(&a.answers))?;
    emit(&s.export_cupt()?, a.output.as_deref(), out)?;
    if let Some(p) = &a.verdicts {
        fs::write(p, s.verdict_table()).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(0)
}
