//! HTTP API over the session registry.
//!
//! | method | path                          | body                      |
//! |--------|-------------------------------|---------------------------|
//! | POST   | `/sessions`                   | conversion inputs         |
//! | GET    | `/sessions/{id}/stages/{k}`   |                           |
//! | POST   | `/sessions/{id}/step`         | `{"direction": "forward"}`|
//! | POST   | `/sessions/{id}/reset`        |                           |
//! | GET    | `/presets`                    |                           |
//!
//! Every session response carries the current stage cursor as `stage`.

use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use pcmbench_core::session::{Direction, SessionId, Stage, StagePayload};
use pcmbench_core::{Error, HarmonicSpec64, Preset, Session64, SessionRegistry64};
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

use crate::inputs::ConversionInputs;

#[derive(Debug, Clone, Default)]
pub struct AppState {
    pub registry: Arc<SessionRegistry64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub error: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<&'static str>,
    pub message: String,
}

impl ApiError {
    fn unknown_session(raw: &str) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            error: "unknown-session",
            field: None,
            message: format!("no session with id `{raw}`"),
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InternalInconsistency(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError {
            status,
            error: e.code(),
            field: e.field(),
            message: e.to_string(),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            error: "invalid-body",
            field: None,
            message: r.body_text(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

#[derive(Debug, Serialize)]
pub struct SessionView<'a> {
    pub id: SessionId,
    /// Current stage cursor.
    pub stage: Stage,
    /// Stage the payload belongs to.
    pub view: Stage,
    pub payload: StagePayload<'a, f64>,
}

fn view(session: &Session64, stage: Stage) -> Response {
    Json(SessionView {
        id: session.id(),
        stage: session.stage(),
        view: stage,
        payload: session.stage_payload(stage),
    })
    .into_response()
}

fn parse_id(raw: &str) -> Result<SessionId, ApiError> {
    raw.parse().map_err(|_| ApiError::unknown_session(raw))
}

async fn create_session(
    State(state): State<AppState>,
    body: Result<Json<ConversionInputs>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(inputs) = body?;
    let conv = inputs.validate()?;
    if conv.range.is_some() {
        return Err(Error::InvalidArgument {
            field: "range",
            reason: "sessions always use the default quantizer range".into(),
        }
        .into());
    }
    let session = state.registry.create(conv.spec, conv.samples, conv.bits)?;
    let mut resp = view(&session, session.stage());
    *resp.status_mut() = StatusCode::CREATED;
    Ok(resp)
}

async fn get_stage(
    State(state): State<AppState>,
    Path((id, stage)): Path<(String, String)>,
) -> Result<Response, ApiError> {
    let sid = parse_id(&id)?;
    let session = state
        .registry
        .get(sid)
        .ok_or_else(|| ApiError::unknown_session(&id))?;
    let stage = stage
        .parse::<u8>()
        .ok()
        .and_then(Stage::from_index)
        .ok_or_else(|| {
            ApiError::from(Error::InvalidArgument {
                field: "stage",
                reason: format!("stage must be 0, 1, 2 or 3, got `{stage}`"),
            })
        })?;
    Ok(view(&session, stage))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRequest {
    pub direction: String,
}

async fn step(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<StepRequest>, JsonRejection>,
) -> Result<Response, ApiError> {
    let sid = parse_id(&id)?;
    if state.registry.get(sid).is_none() {
        return Err(ApiError::unknown_session(&id));
    }
    let Json(req) = body?;
    let direction: Direction = req.direction.parse()?;
    let session = state
        .registry
        .step(sid, direction)
        .ok_or_else(|| ApiError::unknown_session(&id))?;
    Ok(view(&session, session.stage()))
}

async fn reset(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let sid = parse_id(&id)?;
    let session = state
        .registry
        .reset(sid)
        .ok_or_else(|| ApiError::unknown_session(&id))?;
    Ok(view(&session, session.stage()))
}

#[derive(Debug, Serialize)]
struct PresetEntry {
    name: &'static str,
    spec: HarmonicSpec64,
}

async fn presets() -> Json<Vec<PresetEntry>> {
    Json(
        Preset::ALL
            .into_iter()
            .map(|p| PresetEntry {
                name: p.name(),
                spec: p.spec(),
            })
            .collect(),
    )
}

/// Which origins may call the API from a browser.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum Cors {
    #[default]
    Open,
    Only(Vec<String>),
}

impl Cors {
    fn layer(&self) -> CorsLayer {
        let origin = match self {
            Cors::Open => AllowOrigin::from(Any),
            Cors::Only(list) => AllowOrigin::list(
                list.iter()
                    .filter_map(|o| HeaderValue::from_str(o).ok())
                    .collect::<Vec<_>>(),
            ),
        };
        CorsLayer::new()
            .allow_origin(origin)
            .allow_methods(Any)
            .allow_headers(Any)
    }
}

pub fn router(state: AppState, cors: &Cors) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/stages/{stage}", get(get_stage))
        .route("/sessions/{id}/step", post(step))
        .route("/sessions/{id}/reset", post(reset))
        .route("/presets", get(presets))
        .layer(cors.layer())
        .with_state(state)
}

pub async fn serve(addr: &str, cors: Cors) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::default(), &cors))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
