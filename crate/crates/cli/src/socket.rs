//! JSON-lines transport of the session protocol over a Unix socket: one
//! request object per line in, one response object per line out.

use std::sync::Arc;

use mwe_triage::session::{Response, SessionHub};
use tokio::io::{AsyncBufReadExt, AsyncWriteExt, BufReader};
use tokio::net::{UnixListener, UnixStream};

use crate::commands::Persist;

pub async fn serve(listener: UnixListener, hub: Arc<SessionHub>, persist: Option<Persist>) -> std::io::Result<()> {
    let persist = persist.map(Arc::new);
    loop {
        let (stream, _) = listener.accept().await?;
        let hub = hub.clone();
        let persist = persist.clone();
        tokio::spawn(async move {
            let _ = handle_connection(stream, hub, persist).await;
        });
    }
}

pub async fn handle_connection(
    stream: UnixStream,
    hub: Arc<SessionHub>,
    persist: Option<Arc<Persist>>,
) -> std::io::Result<()> {
    let (read, mut write) = stream.into_split();
    let mut lines = BufReader::new(read).lines();
    while let Some(line) = lines.next_line().await? {
        if line.trim().is_empty() {
            continue;
        }
        let mut reply = hub.handle_line(&line);
        if let Some(p) = &persist {
            let answered = serde_json::from_str::<Response>(&reply)
                .is_ok_and(|r| matches!(r, Response::Answered { repeated: false, .. }));
            if answered {
                if let Err(e) = p.save(&hub) {
                    reply = serde_json::to_string(&Response::Error {
                        code: mwe_triage::session::ErrorCode::Internal,
                        message: format!("answer recorded but log not saved: {e}"),
                    })
                    .expect("responses serialize");
                }
            }
        }
        reply.push('\n');
        write.write_all(reply.as_bytes()).await?;
        write.flush().await?;
    }
    Ok(())
}
