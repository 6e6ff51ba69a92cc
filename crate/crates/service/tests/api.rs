use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use latfox_core::{fixtures, write_cxt, DiagramDocument};
use latfox_service::{router, App};
use serde_json::{json, Value};
use tower::ServiceExt;

struct Reply {
    status: StatusCode,
    etag: Option<String>,
    body: Value,
}

async fn send(app: &Router, method: Method, uri: &str, if_match: Option<&str>, body: Option<Value>) -> Reply {
    let mut request = Request::builder().method(method).uri(uri);
    if let Some(tag) = if_match {
        request = request.header(header::IF_MATCH, tag);
    }
    let request = match body {
        Some(body) => request
            .header(header::CONTENT_TYPE, "application/json")
            .body(Body::from(body.to_string())),
        None => request.body(Body::empty()),
    }
    .unwrap();
    reply(app.clone().oneshot(request).await.unwrap()).await
}

async fn reply(response: axum::response::Response) -> Reply {
    let status = response.status();
    let etag = response
        .headers()
        .get(header::ETAG)
        .map(|v| v.to_str().unwrap().to_owned());
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    let body = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()))
    };
    Reply { status, etag, body }
}

async fn create_cxt(app: &Router, text: String) -> Reply {
    let request = Request::post("/contexts")
        .header(header::CONTENT_TYPE, "text/plain")
        .body(Body::from(text))
        .unwrap();
    reply(app.clone().oneshot(request).await.unwrap()).await
}

async fn k2_session(app: &Router) -> String {
    let created = create_cxt(app, write_cxt(&fixtures::k2())).await;
    assert_eq!(created.status, StatusCode::CREATED);
    created.body["id"].as_str().unwrap().to_owned()
}

fn document(value: &Value) -> DiagramDocument {
    serde_json::from_value(value.clone()).unwrap()
}

#[tokio::test]
async fn create_and_read() {
    let app = router(App::new());
    let created = create_cxt(&app, write_cxt(&fixtures::k2())).await;
    assert_eq!(created.status, StatusCode::CREATED);
    assert_eq!(created.etag.as_deref(), Some("\"0\""));
    assert_eq!(created.body["document"]["nodes"].as_array().unwrap().len(), 2);
    let id = created.body["id"].as_str().unwrap();

    let read = send(&app, Method::GET, &format!("/contexts/{id}/diagram"), None, None).await;
    assert_eq!(read.status, StatusCode::OK);
    assert_eq!(read.body, created.body["document"]);

    let missing = send(&app, Method::GET, "/contexts/nope/diagram", None, None).await;
    assert_eq!(missing.status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn create_rejects_bad_input_and_accepts_empty_context() {
    let app = router(App::new());
    let bad = create_cxt(&app, "B\n\n1\n1\n\ng\nm\nX?\n".into()).await;
    assert_eq!(bad.status, StatusCode::BAD_REQUEST);
    assert!(bad.body["line"].is_number());

    let empty = create_cxt(&app, "B\n\n0\n0\n\n".into()).await;
    assert_eq!(empty.status, StatusCode::CREATED);
    assert_eq!(empty.body["document"]["nodes"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn create_from_diagram_json() {
    let app = router(App::new());
    let state = latfox_core::DiagramState::build(fixtures::k2d());
    let doc = DiagramDocument::from_state(&state);
    let request = Request::post("/contexts")
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from(doc.to_json()))
        .unwrap();
    let created = reply(app.clone().oneshot(request).await.unwrap()).await;
    assert_eq!(created.status, StatusCode::CREATED);
    assert_eq!(document(&created.body["document"]), doc);
}

#[tokio::test]
async fn insert_remove_round_trip() {
    let app = router(App::new());
    let id = k2_session(&app).await;
    let before = send(&app, Method::GET, &format!("/contexts/{id}/diagram"), None, None).await;

    let inserted = send(
        &app,
        Method::POST,
        &format!("/contexts/{id}/attributes"),
        Some("\"0\""),
        Some(json!({"name": "d", "extent": ["g2"]})),
    )
    .await;
    assert_eq!(inserted.status, StatusCode::OK, "{:?}", inserted.body);
    assert_eq!(inserted.etag.as_deref(), Some("\"1\""));
    assert_eq!(inserted.body["version"], 1);
    assert_eq!(inserted.body["changeset"]["created"].as_array().unwrap().len(), 2);
    assert_eq!(inserted.body["document"]["nodes"].as_array().unwrap().len(), 4);

    // the change set replays onto the previous document
    let changeset = serde_json::from_value(inserted.body["changeset"].clone()).unwrap();
    let replayed = document(&before.body).apply(&changeset).unwrap();
    assert_eq!(replayed, document(&inserted.body["document"]));

    let removed = send(
        &app,
        Method::DELETE,
        &format!("/contexts/{id}/attributes/d"),
        Some("\"1\""),
        None,
    )
    .await;
    assert_eq!(removed.status, StatusCode::OK);
    assert_eq!(removed.body["version"], 2);
    let mut restored = document(&removed.body["document"]);
    let original = document(&before.body);
    assert_eq!(restored.nodes.len(), original.nodes.len());
    assert_eq!(restored.next_id, 4);
    restored.version = original.version;
    restored.next_id = original.next_id;
    for node in &mut restored.nodes {
        node.change_class = None;
    }
    assert_eq!(restored, original);
}

#[tokio::test]
async fn redundant_insert() {
    let app = router(App::new());
    let id = k2_session(&app).await;
    let inserted = send(
        &app,
        Method::POST,
        &format!("/contexts/{id}/attributes"),
        None,
        Some(json!({"name": "c", "extent": ["g1"]})),
    )
    .await;
    assert_eq!(inserted.status, StatusCode::OK);
    assert_eq!(inserted.body["changeset"]["redundant"], true);
    assert!(inserted.body["changeset"]["created"].as_array().unwrap().is_empty());
}

#[tokio::test]
async fn insert_errors() {
    let app = router(App::new());
    let id = k2_session(&app).await;
    let uri = format!("/contexts/{id}/attributes");
    let stale = send(
        &app,
        Method::POST,
        &uri,
        Some("\"7\""),
        Some(json!({"name": "d", "extent": ["g2"]})),
    )
    .await;
    assert_eq!(stale.status, StatusCode::CONFLICT);
    let clash = send(&app, Method::POST, &uri, None, Some(json!({"name": "a", "extent": []}))).await;
    assert_eq!(clash.status, StatusCode::CONFLICT);
    let unknown = send(
        &app,
        Method::POST,
        &uri,
        None,
        Some(json!({"name": "d", "extent": ["g9"]})),
    )
    .await;
    assert_eq!(unknown.status, StatusCode::BAD_REQUEST);
    let read = send(&app, Method::GET, &format!("/contexts/{id}/diagram"), None, None).await;
    assert_eq!(read.body["version"], 0);
}

#[tokio::test]
async fn remove_errors() {
    let app = router(App::new());
    let id = k2_session(&app).await;
    let unknown = send(
        &app,
        Method::DELETE,
        &format!("/contexts/{id}/attributes/zz"),
        None,
        None,
    )
    .await;
    assert_eq!(unknown.status, StatusCode::NOT_FOUND);
    let stale = send(
        &app,
        Method::DELETE,
        &format!("/contexts/{id}/attributes/a"),
        Some("\"3\""),
        None,
    )
    .await;
    assert_eq!(stale.status, StatusCode::CONFLICT);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn concurrent_removes_with_same_version() {
    let app = router(App::new());
    let id = k2_session(&app).await;
    let uri = format!("/contexts/{id}/attributes/a");
    let tasks = [uri.clone(), uri].map(|uri| {
        let app = app.clone();
        tokio::spawn(async move { send(&app, Method::DELETE, &uri, Some("\"0\""), None).await })
    });
    let [first, second] = tasks;
    let (first, second) = (first.await.unwrap(), second.await.unwrap());
    let mut statuses = [first.status, second.status];
    statuses.sort();
    assert_eq!(statuses, [StatusCode::OK, StatusCode::CONFLICT]);
    let read = send(&app, Method::GET, &format!("/contexts/{id}/diagram"), None, None).await;
    assert_eq!(read.body["version"], 1);
}

#[tokio::test]
async fn seeds() {
    let app = router(App::new());
    let state = latfox_core::DiagramState::build(fixtures::k2d());
    let request = Request::post("/contexts")
        .body(Body::from(DiagramDocument::from_state(&state).to_json()))
        .unwrap();
    let created = reply(app.clone().oneshot(request).await.unwrap()).await;
    let id = created.body["id"].as_str().unwrap().to_owned();
    let before = document(&created.body["document"]);

    let moved = send(
        &app,
        Method::PUT,
        &format!("/contexts/{id}/seeds/a"),
        Some("\"0\""),
        Some(json!([0.5, -1.0])),
    )
    .await;
    assert_eq!(moved.status, StatusCode::OK);
    assert!(moved.body.get("changeset").is_none());
    let after = document(&moved.body["document"]);
    assert_eq!(after.seeds["a"], latfox_core::Vec2::new(0.5, -1.0));
    for (old, new) in before.nodes.iter().zip(&after.nodes) {
        let shift = if old.intent.iter().any(|m| m == "a") { 1.0 } else { 0.0 };
        assert_eq!(new.pos.x - old.pos.x, shift);
        assert_eq!(new.pos.y, old.pos.y);
    }
    let read = send(&app, Method::GET, &format!("/contexts/{id}/diagram"), None, None).await;
    assert_eq!(read.body["seeds"]["a"], json!([0.5, -1.0]));

    let reducible = send(
        &app,
        Method::PUT,
        &format!("/contexts/{id}/seeds/b"),
        None,
        Some(json!([0.0, -1.0])),
    )
    .await;
    assert_eq!(reducible.status, StatusCode::BAD_REQUEST);
    let unknown = send(
        &app,
        Method::PUT,
        &format!("/contexts/{id}/seeds/q"),
        None,
        Some(json!([0.0, -1.0])),
    )
    .await;
    assert_eq!(unknown.status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn snapshot_writes_one_file_per_session() {
    let app = App::new();
    let routes = router(app.clone());
    k2_session(&routes).await;
    k2_session(&routes).await;
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(app.snapshot_to(dir.path()).unwrap(), 2);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 2);
    let text = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    assert!(DiagramDocument::from_json(&text).unwrap().to_state().is_ok());
}
