//! Transport-independent session protocol: one request in, one response
//! out, both plain serde values. The CLI carries them as JSON lines over a
//! socket and as JSON bodies over HTTP.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::state::{Session, SessionError};
use crate::cupt::Corpus;
use crate::engine::{Question, Verdict};
use crate::lexicon::Lexicon;
use crate::model::Answer;
use crate::tree::{build_tree, TreeVariant, TreeView};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Request {
    Start {
        #[serde(default)]
        variant: Option<TreeVariant>,
    },
    NextQuestion {
        session_id: String,
    },
    Answer {
        session_id: String,
        question_id: String,
        answer: Answer,
        #[serde(default)]
        note: String,
    },
    Verdicts {
        session_id: String,
    },
    Tree {
        variant: TreeVariant,
    },
    Export {
        session_id: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRow {
    pub candidate_id: String,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    NotFound,
    Conflict,
    BadRequest,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Response {
    Started {
        session_id: String,
        pending: usize,
    },
    /// `question` is absent once the session is exhausted.
    Question {
        session_id: String,
        question: Option<Question>,
        pending: usize,
    },
    Answered {
        candidate_id: String,
        verdict: Option<Verdict>,
        next: Option<Question>,
        repeated: bool,
    },
    Verdicts {
        session_id: String,
        verdicts: Vec<VerdictRow>,
        pending: usize,
    },
    Tree {
        tree: TreeView,
    },
    Exported {
        answers_log: String,
        cupt: String,
    },
    Error {
        code: ErrorCode,
        message: String,
    },
}

impl Response {
    fn error(code: ErrorCode, message: impl Into<String>) -> Response {
        Response::Error {
            code,
            message: message.into(),
        }
    }
}

impl From<SessionError> for Response {
    fn from(e: SessionError) -> Self {
        let code = match e {
            SessionError::UnknownQuestion(_) => ErrorCode::NotFound,
            SessionError::AlreadyResolved(_) | SessionError::ConflictingAnswer { .. } => ErrorCode::Conflict,
            SessionError::InvalidAnswer | SessionError::BadLog { .. } | SessionError::MixedSessions(..) => {
                ErrorCode::BadRequest
            }
            SessionError::Export(_) => ErrorCode::Internal,
        };
        Response::error(code, e.to_string())
    }
}

/// Sessions over one corpus and lexicon, each behind its own lock.
pub struct SessionHub {
    corpus: Arc<Corpus>,
    lexicon: Arc<Lexicon>,
    default_variant: TreeVariant,
    sessions: Mutex<BTreeMap<String, Arc<Mutex<Session>>>>,
    next_id: Box<dyn Fn() -> String + Send + Sync>,
}

impl SessionHub {
    pub fn new(corpus: Arc<Corpus>, lexicon: Arc<Lexicon>, default_variant: TreeVariant) -> SessionHub {
        let counter = std::sync::atomic::AtomicU64::new(1);
        SessionHub {
            corpus,
            lexicon,
            default_variant,
            sessions: Mutex::new(BTreeMap::new()),
            next_id: Box::new(move || {
                format!("s{}", counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed))
            }),
        }
    }

    /// Replaces the session id generator.
    pub fn with_id_generator(mut self, f: impl Fn() -> String + Send + Sync + 'static) -> SessionHub {
        self.next_id = Box::new(f);
        self
    }

    /// Registers an existing session, e.g. one rebuilt by replay.
    pub fn insert(&self, session: Session) -> String {
        let id = session.id().to_string();
        self.sessions
            .lock()
            .expect("session table poisoned")
            .insert(id.clone(), Arc::new(Mutex::new(session)));
        id
    }

    pub fn session(&self, id: &str) -> Option<Arc<Mutex<Session>>> {
        self.sessions.lock().expect("session table poisoned").get(id).cloned()
    }

    pub fn handle(&self, request: Request) -> Response {
        match request {
            Request::Start { variant } => {
                let variant = variant.unwrap_or(self.default_variant);
                let s = Session::start((self.next_id)(), self.corpus.clone(), self.lexicon.clone(), variant);
                let pending = s.pending_len();
                let session_id = self.insert(s);
                Response::Started { session_id, pending }
            }
            Request::Tree { variant } => Response::Tree {
                tree: build_tree(variant).to_view(),
            },
            Request::NextQuestion { session_id } => self.with(&session_id, |s| Response::Question {
                session_id: s.id().to_string(),
                question: s.next_question().cloned(),
                pending: s.pending_len(),
            }),
            Request::Answer {
                session_id,
                question_id,
                answer,
                note,
            } => self.with(&session_id, |s| match s.answer(&question_id, answer, &note) {
                Ok(o) => Response::Answered {
                    candidate_id: o.candidate_id,
                    verdict: o.verdict,
                    next: o.next,
                    repeated: o.repeated,
                },
                Err(e) => e.into(),
            }),
            Request::Verdicts { session_id } => self.with(&session_id, |s| Response::Verdicts {
                session_id: s.id().to_string(),
                verdicts: s
                    .verdicts()
                    .iter()
                    .map(|(id, v)| VerdictRow {
                        candidate_id: id.clone(),
                        verdict: v.clone(),
                    })
                    .collect(),
                pending: s.pending_len(),
            }),
            Request::Export { session_id } => self.with(&session_id, |s| match s.export_cupt() {
                Ok(cupt) => Response::Exported {
                    answers_log: s.export_log(),
                    cupt,
                },
                Err(e) => e.into(),
            }),
        }
    }

    /// Parses one JSON request line and returns one JSON response line
    /// (without the trailing newline).
    pub fn handle_line(&self, line: &str) -> String {
        let response = match serde_json::from_str::<Request>(line) {
            Ok(req) => self.handle(req),
            Err(e) => Response::error(ErrorCode::BadRequest, e.to_string()),
        };
        serde_json::to_string(&response).expect("responses serialize")
    }

    fn with(&self, id: &str, f: impl FnOnce(&mut Session) -> Response) -> Response {
        match self.session(id) {
            Some(s) => f(&mut s.lock().expect("session poisoned")),
            None => Response::error(ErrorCode::NotFound, format!("unknown session '{id}'")),
        }
    }
}
