//! HTTP transport of the session protocol.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response as HttpResponse};
use axum::routing::{get, post};
use axum::{Json, Router};
use mwe_triage::model::Answer;
use mwe_triage::session::{ErrorCode, Request, Response, SessionHub};
use mwe_triage::TreeVariant;
use serde::Deserialize;

use crate::commands::Persist;

#[derive(Clone)]
struct AppState {
    hub: Arc<SessionHub>,
    persist: Option<Arc<Persist>>,
}

#[derive(Debug, Deserialize)]
pub struct AnswerBody {
    pub question_id: String,
    /// `YES`/`NO`, case-insensitive, `y`/`n` accepted.
    pub answer: String,
    #[serde(default)]
    pub note: String,
}

#[derive(Debug, Default, Deserialize)]
struct StartBody {
    #[serde(default)]
    variant: Option<TreeVariant>,
}

fn status(resp: &Response) -> StatusCode {
    match resp {
        Response::Error { code, .. } => match code {
            ErrorCode::NotFound => StatusCode::NOT_FOUND,
            ErrorCode::Conflict => StatusCode::CONFLICT,
            ErrorCode::BadRequest => StatusCode::BAD_REQUEST,
            ErrorCode::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        },
        Response::Started { .. } => StatusCode::CREATED,
        _ => StatusCode::OK,
    }
}

fn reply(resp: Response) -> HttpResponse {
    (status(&resp), Json(resp)).into_response()
}

fn bad_request(message: String) -> HttpResponse {
    reply(Response::Error {
        code: ErrorCode::BadRequest,
        message,
    })
}

/// Routes:
/// `POST /session`, `GET /session/{id}/next-question`,
/// `POST /session/{id}/answer`, `GET /session/{id}/verdicts`,
/// `GET /session/{id}/export`, `GET /tree/{variant}`.
pub fn router(hub: Arc<SessionHub>, persist: Option<Persist>) -> Router {
    let state = AppState {
        hub,
        persist: persist.map(Arc::new),
    };
    Router::new()
        .route("/session", post(start))
        .route("/session/{id}/next-question", get(next_question))
        .route("/session/{id}/answer", post(answer))
        .route("/session/{id}/verdicts", get(verdicts))
        .route("/session/{id}/export", get(export))
        .route("/tree/{variant}", get(tree))
        .with_state(state)
}

async fn start(State(st): State<AppState>, body: Bytes) -> HttpResponse {
    let req: StartBody = if body.is_empty() {
        StartBody::default()
    } else {
        match serde_json::from_slice(&body) {
            Ok(b) => b,
            Err(e) => return bad_request(e.to_string()),
        }
    };
    reply(st.hub.handle(Request::Start { variant: req.variant }))
}

async fn next_question(State(st): State<AppState>, Path(id): Path<String>) -> HttpResponse {
    reply(st.hub.handle(Request::NextQuestion { session_id: id }))
}

async fn answer(State(st): State<AppState>, Path(id): Path<String>, Json(body): Json<AnswerBody>) -> HttpResponse {
    let answer: Answer = match body.answer.parse() {
        Ok(a) => a,
        Err(e) => return bad_request(format!("{e}")),
    };
    let resp = st.hub.handle(Request::Answer {
        session_id: id.clone(),
        question_id: body.question_id,
        answer,
        note: body.note,
    });
    if let (Response::Answered { repeated: false, .. }, Some(p)) = (&resp, &st.persist) {
        if p.session_id == id {
            if let Err(e) = p.save(&st.hub) {
                return reply(Response::Error {
                    code: ErrorCode::Internal,
                    message: format!("answer recorded but log not saved: {e}"),
                });
            }
        }
    }
    reply(resp)
}

async fn verdicts(State(st): State<AppState>, Path(id): Path<String>) -> HttpResponse {
    reply(st.hub.handle(Request::Verdicts { session_id: id }))
}

async fn export(State(st): State<AppState>, Path(id): Path<String>) -> HttpResponse {
    reply(st.hub.handle(Request::Export { session_id: id }))
}

async fn tree(State(st): State<AppState>, Path(variant): Path<String>) -> HttpResponse {
    match variant.parse::<TreeVariant>() {
        Ok(v) => reply(st.hub.handle(Request::Tree { variant: v })),
        Err(e) => bad_request(e.to_string()),
    }
}
