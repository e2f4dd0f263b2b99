//! Interactive annotation sessions.

pub mod prompt;
pub mod protocol;
mod state;

pub use prompt::{parse_question_id, prompt_for, question_id};
pub use protocol::{ErrorCode, Request, Response, SessionHub, VerdictRow};
pub use state::{read_log, write_log, AnswerConflict, AnswerOutcome, AnswerRecord, Session, SessionError};
