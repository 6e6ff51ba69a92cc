//! HTTP sessions over the incremental diagram engine.
//!
//! Each session holds one [`DiagramState`]. Mutations on a session are
//! serialized by a per-session writer lock and versioned through
//! `ETag`/`If-Match`; readers take a snapshot of the current state and are
//! only held up for the pointer swap at the end of a mutation.
//!
//! | route | effect |
//! |---|---|
//! | `POST /contexts` | new session from CXT text or diagram JSON |
//! | `GET /contexts/{id}/diagram` | current document |
//! | `POST /contexts/{id}/attributes` | insert a column `{name, extent, seed?}` |
//! | `DELETE /contexts/{id}/attributes/{name}` | remove a column |
//! | `PUT /contexts/{id}/seeds/{name}` | replace a seed, body `[x, y]` |

mod error;

use std::collections::HashMap;
use std::future::Future;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use axum::extract::{Path as UrlPath, State};
use axum::http::header::{CONTENT_TYPE, ETAG, IF_MATCH, LOCATION};
use axum::http::{HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, post, put};
use axum::{Json, Router};
use latfox_core::{parse_cxt, AttributeColumn, ChangeSet, DiagramDocument, DiagramState, Vec2};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tokio::sync::Mutex;

pub use error::ApiError;

struct Session {
    writer: Mutex<()>,
    current: RwLock<Arc<DiagramState>>,
}

impl Session {
    fn new(state: DiagramState) -> Self {
        Self {
            writer: Mutex::new(()),
            current: RwLock::new(Arc::new(state)),
        }
    }

    fn snapshot(&self) -> Arc<DiagramState> {
        self.current.read().expect("session lock poisoned").clone()
    }

    fn replace(&self, state: DiagramState) {
        *self.current.write().expect("session lock poisoned") = Arc::new(state);
    }
}

/// Shared service state: the session table.
#[derive(Clone, Default)]
pub struct App {
    sessions: Arc<RwLock<HashMap<String, Arc<Session>>>>,
}

impl App {
    pub fn new() -> Self {
        Self::default()
    }

    fn open(&self, state: DiagramState) -> String {
        let id = uuid::Uuid::new_v4().simple().to_string();
        self.sessions
            .write()
            .expect("session table poisoned")
            .insert(id.clone(), Arc::new(Session::new(state)));
        id
    }

    fn session(&self, id: &str) -> Result<Arc<Session>, ApiError> {
        self.sessions
            .read()
            .expect("session table poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::session_not_found(id))
    }

    pub fn session_count(&self) -> usize {
        self.sessions.read().expect("session table poisoned").len()
    }

    /// Writes every session's current document to `dir/{id}.json` and
    /// returns the number of files written.
    pub fn snapshot_to(&self, dir: &Path) -> io::Result<usize> {
        std::fs::create_dir_all(dir)?;
        let sessions: Vec<(String, Arc<Session>)> = self
            .sessions
            .read()
            .expect("session table poisoned")
            .iter()
            .map(|(id, s)| (id.clone(), s.clone()))
            .collect();
        for (id, session) in &sessions {
            let document = DiagramDocument::from_state(&session.snapshot());
            std::fs::write(dir.join(format!("{id}.json")), document.to_json())?;
        }
        Ok(sessions.len())
    }
}

pub fn router(app: App) -> Router {
    Router::new()
        .route("/contexts", post(create_session))
        .route("/contexts/{id}/diagram", get(get_diagram))
        .route("/contexts/{id}/attributes", post(insert_attribute))
        .route("/contexts/{id}/attributes/{name}", delete(remove_attribute))
        .route("/contexts/{id}/seeds/{name}", put(set_seed))
        .with_state(app)
}

#[derive(Debug, Clone, Default)]
pub struct ServeOptions {
    /// Directory that receives one diagram JSON per session on shutdown.
    pub snapshot_dir: Option<PathBuf>,
}

/// Serves until `shutdown` resolves, then optionally snapshots all sessions.
pub async fn serve(
    listener: TcpListener,
    options: ServeOptions,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> io::Result<()> {
    let app = App::new();
    axum::serve(listener, router(app.clone()))
        .with_graceful_shutdown(shutdown)
        .await?;
    if let Some(dir) = &options.snapshot_dir {
        app.snapshot_to(dir)?;
    }
    Ok(())
}

fn etag(version: u64) -> HeaderValue {
    HeaderValue::from_str(&format!("\"{version}\"")).expect("digits are a valid header value")
}

/// `Ok` when there is no `If-Match` header, it is `*`, or one of its tags
/// names `version`.
fn check_if_match(headers: &HeaderMap, version: u64) -> Result<(), ApiError> {
    let Some(value) = headers.get(IF_MATCH) else {
        return Ok(());
    };
    let raw = value
        .to_str()
        .map_err(|_| ApiError::new(StatusCode::BAD_REQUEST, "If-Match is not valid text"))?;
    let matches = raw.split(',').map(str::trim).any(|tag| {
        let tag = tag.strip_prefix("W/").unwrap_or(tag);
        tag == "*" || tag.trim_matches('"') == version.to_string()
    });
    if matches {
        Ok(())
    } else {
        Err(ApiError::stale(raw, version))
    }
}

#[derive(Serialize)]
struct Created {
    id: String,
    version: u64,
    document: DiagramDocument,
}

#[derive(Serialize)]
struct Mutated {
    #[serde(skip_serializing_if = "Option::is_none")]
    changeset: Option<ChangeSet>,
    document: DiagramDocument,
    version: u64,
}

#[derive(Deserialize)]
struct InsertRequest {
    name: String,
    extent: Vec<String>,
    #[serde(default)]
    seed: Option<Vec2>,
}

fn versioned(status: StatusCode, version: u64, body: impl Serialize) -> Response {
    let mut response = (status, Json(body)).into_response();
    response.headers_mut().insert(ETAG, etag(version));
    response
}

async fn create_session(State(app): State<App>, headers: HeaderMap, body: String) -> Result<Response, ApiError> {
    let is_json = headers
        .get(CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v.contains("json"))
        || body.trim_start().starts_with('{');
    let state = if is_json {
        DiagramDocument::from_json(&body)?.to_state()?
    } else {
        DiagramState::build(parse_cxt(&body)?)
    };
    let version = state.version();
    let document = DiagramDocument::from_state(&state);
    let id = app.open(state);
    let location = HeaderValue::from_str(&format!("/contexts/{id}/diagram")).expect("ids are hex");
    let mut response = versioned(StatusCode::CREATED, version, Created { id, version, document });
    response.headers_mut().insert(LOCATION, location);
    Ok(response)
}

async fn get_diagram(State(app): State<App>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    let state = app.session(&id)?.snapshot();
    Ok(versioned(
        StatusCode::OK,
        state.version(),
        DiagramDocument::from_state(&state),
    ))
}

/// Runs one mutation under the session's writer lock.
async fn mutate(
    app: &App,
    id: &str,
    headers: &HeaderMap,
    edit: impl FnOnce(&DiagramState) -> Result<(DiagramState, Option<ChangeSet>), ApiError>,
) -> Result<Response, ApiError> {
    let session = app.session(id)?;
    let _writer = session.writer.lock().await;
    let current = session.snapshot();
    check_if_match(headers, current.version())?;
    let (next, changeset) = edit(&current)?;
    let version = next.version();
    let document = DiagramDocument::from_state(&next);
    session.replace(next);
    Ok(versioned(
        StatusCode::OK,
        version,
        Mutated {
            changeset,
            document,
            version,
        },
    ))
}

async fn insert_attribute(
    State(app): State<App>,
    UrlPath(id): UrlPath<String>,
    headers: HeaderMap,
    Json(request): Json<InsertRequest>,
) -> Result<Response, ApiError> {
    mutate(&app, &id, &headers, |state| {
        let extent = state.context().object_set(&request.extent)?;
        let column = AttributeColumn::new(request.name, extent);
        let (next, changeset) = state.insert_column_seeded(column, request.seed)?;
        Ok((next, Some(changeset)))
    })
    .await
}

async fn remove_attribute(
    State(app): State<App>,
    UrlPath((id, name)): UrlPath<(String, String)>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    mutate(&app, &id, &headers, |state| {
        let (next, changeset) = state.remove_column(&name).map_err(ApiError::addressing)?;
        Ok((next, Some(changeset)))
    })
    .await
}

async fn set_seed(
    State(app): State<App>,
    UrlPath((id, name)): UrlPath<(String, String)>,
    headers: HeaderMap,
    Json(seed): Json<Vec2>,
) -> Result<Response, ApiError> {
    mutate(&app, &id, &headers, |state| {
        let next = state.set_seed(&name, seed).map_err(ApiError::addressing)?;
        Ok((next, None))
    })
    .await
}
