//! HTTP API for the editor: `POST /lint` and `GET /rules`.

use std::collections::BTreeMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use claro_core::rules::{catalog, default_rules, RuleInfo, Thresholds};
use claro_core::{lint, LexiconSet, LintReport, Profile, RuleConfig, RuleId, TextParser};
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, CorsLayer};

pub const DEFAULT_MAX_BODY_BYTES: usize = 1024 * 1024;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub max_body_bytes: usize,
    /// Origin allowed to call the API from a browser; `*` allows any.
    pub cors_origin: Option<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self { max_body_bytes: DEFAULT_MAX_BODY_BYTES, cors_origin: None }
    }
}

#[derive(Clone)]
struct AppState {
    lexicons: Arc<LexiconSet>,
    parser: Arc<TextParser>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LintRequest {
    pub text: Option<String>,
    pub html: Option<String>,
    pub profile: String,
    #[serde(default)]
    pub overrides: BTreeMap<String, usize>,
    pub rules: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
}

fn bad_request(message: impl Into<String>) -> Response {
    (StatusCode::BAD_REQUEST, Json(ErrorBody { error: message.into() })).into_response()
}

enum Input {
    Text(String),
    Html(String),
}

impl LintRequest {
    fn into_parts(self) -> Result<(Input, RuleConfig), String> {
        let input = match (self.text, self.html) {
            (Some(text), None) => Input::Text(text),
            (None, Some(html)) => Input::Html(html),
            (Some(_), Some(_)) => return Err("give either \"text\" or \"html\", not both".into()),
            (None, None) => return Err("one of \"text\" or \"html\" is required".into()),
        };
        let profile: Profile = self.profile.parse().map_err(|e: claro_core::ConfigError| e.to_string())?;
        let mut config = RuleConfig::for_profile(profile);
        if let Some(rules) = self.rules {
            config = config.only(rules).map_err(|e| e.to_string())?;
        }
        for (name, value) in &self.overrides {
            config.thresholds.set(name, *value).map_err(|e| e.to_string())?;
        }
        config.validate().map_err(|e| e.to_string())?;
        Ok((input, config))
    }
}

async fn lint_handler(State(state): State<AppState>, body: Bytes) -> Response {
    let request: LintRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return bad_request(format!("malformed request: {e}")),
    };
    let (input, config) = match request.into_parts() {
        Ok(parts) => parts,
        Err(message) => return bad_request(message),
    };
    let work = tokio::task::spawn_blocking(move || {
        let doc = match input {
            Input::Text(text) => state.parser.parse_plain(&text),
            Input::Html(html) => state.parser.parse_html(html.as_bytes()).expect("a String is valid UTF-8"),
        };
        let mut report = LintReport::new(config.profile);
        report.extend(None, lint(&doc, &config, &state.lexicons));
        report
    });
    match work.await {
        Ok(report) => Json(report).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, Json(ErrorBody { error: e.to_string() })).into_response(),
    }
}

#[derive(Serialize)]
struct RulesResponse {
    rules: Vec<RuleInfo>,
    defaults: BTreeMap<Profile, Vec<RuleId>>,
    thresholds: Thresholds,
}

async fn rules_handler() -> Json<RulesResponse> {
    Json(RulesResponse {
        rules: catalog(),
        defaults: Profile::ALL.into_iter().map(|p| (p, default_rules(p).to_vec())).collect(),
        thresholds: Thresholds::default(),
    })
}

fn cors(origin: &str) -> Result<CorsLayer, String> {
    let allow = if origin == "*" {
        AllowOrigin::any()
    } else {
        AllowOrigin::exact(HeaderValue::from_str(origin).map_err(|_| format!("invalid origin {origin:?}"))?)
    };
    Ok(CorsLayer::new()
        .allow_origin(allow)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]))
}

pub fn router(lexicons: LexiconSet, config: &ServiceConfig) -> Result<Router, String> {
    let state = AppState { parser: Arc::new(lexicons.text_parser()), lexicons: Arc::new(lexicons) };
    let mut app = Router::new()
        .route("/lint", post(lint_handler))
        .route("/rules", get(rules_handler))
        .layer(DefaultBodyLimit::max(config.max_body_bytes))
        .with_state(state);
    if let Some(origin) = &config.cors_origin {
        app = app.layer(cors(origin)?);
    }
    Ok(app)
}
