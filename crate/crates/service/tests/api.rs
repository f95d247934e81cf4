mod common;

use axum::http::{Method, StatusCode};
use common::{app, send, send_json};
use pcmbench_core::session::{Direction, SessionId, Stage};
use pcmbench_core::{Preset, Session64};

const SINUSOID: &str = r#"{"preset": "sinusoid", "samples": 20, "bits": 3}"#;

#[tokio::test]
async fn create_returns_analog_stage() {
    let app = app();
    let (status, v) = send_json(&app, Method::POST, "/sessions", Some(SINUSOID)).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(v["stage"], 0);
    assert_eq!(v["payload"]["kind"], "analog");
    assert_eq!(v["payload"]["curve"]["t"].as_array().unwrap().len(), 512);
}

#[tokio::test]
async fn stepping_and_reset() {
    let app = app();
    let (_, v) = send_json(&app, Method::POST, "/sessions", Some(SINUSOID)).await;
    let id = v["id"].as_u64().unwrap();
    let step = format!("/sessions/{id}/step");
    let fwd = Some(r#"{"direction": "forward"}"#);
    let mut seen = vec![];
    for _ in 0..5 {
        let (status, v) = send_json(&app, Method::POST, &step, fwd).await;
        assert_eq!(status, StatusCode::OK);
        seen.push(v["stage"].as_u64().unwrap());
    }
    assert_eq!(seen, vec![1, 2, 3, 3, 3]);
    let (_, v) = send_json(&app, Method::POST, &step, Some(r#"{"direction": "back"}"#)).await;
    assert_eq!(v["stage"], 2);
    assert_eq!(v["payload"]["kind"], "quantized");

    let (_, v) = send_json(&app, Method::POST, &format!("/sessions/{id}/reset"), None).await;
    assert_eq!(v["stage"], 0);
    let (_, v) = send_json(&app, Method::POST, &step, Some(r#"{"direction": "back"}"#)).await;
    assert_eq!(v["stage"], 0);
}

#[tokio::test]
async fn stage_fetch_reports_cursor_and_levels() {
    let app = app();
    let body = r#"{"preset": "sinusoid", "samples": 20, "bits": 4}"#;
    let (_, v) = send_json(&app, Method::POST, "/sessions", Some(body)).await;
    let id = v["id"].as_u64().unwrap();
    let (status, v) = send_json(&app, Method::GET, &format!("/sessions/{id}/stages/2"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["stage"], 0);
    assert_eq!(v["view"], 2);
    assert_eq!(v["payload"]["level_count"], 16);
    assert_eq!(v["payload"]["grid"].as_array().unwrap().len(), 16);

    let (_, v) = send_json(&app, Method::GET, &format!("/sessions/{id}/stages/1"), None).await;
    assert_eq!(v["payload"]["instants"].as_array().unwrap().len(), 20);

    let (_, v) = send_json(&app, Method::GET, &format!("/sessions/{id}/stages/3"), None).await;
    let words = v["payload"]["codewords"].as_array().unwrap();
    assert_eq!(words.len(), 20);
    assert!(words.iter().all(|w| w.as_str().unwrap().len() == 4));
}

#[tokio::test]
async fn telephony_rate_over_the_wire() {
    // 16 samples over the 2 ms sinusoid window is 8 kHz
    let app = app();
    let body = r#"{"preset": "sinusoid", "samples": 16, "bits": 8}"#;
    let (_, v) = send_json(&app, Method::POST, "/sessions", Some(body)).await;
    let id = v["id"].as_u64().unwrap();
    let (_, v) = send_json(&app, Method::GET, &format!("/sessions/{id}/stages/3"), None).await;
    assert_eq!(v["payload"]["bit_rate"], 64000.0);
    assert_eq!(v["payload"]["metrics"]["payload_bytes_per_second"], 8000.0);
}

#[tokio::test]
async fn wire_values_equal_engine_values() {
    let app = app();
    let body = r#"{"preset": "one-period", "samples": 37, "bits": 7}"#;
    let (_, v) = send_json(&app, Method::POST, "/sessions", Some(body)).await;
    let id = v["id"].as_u64().unwrap();
    let engine = Session64::create(SessionId::new(id), Preset::OnePeriod.spec(), 37, 7).unwrap();
    let a = engine.artifacts();
    let floats = |v: &serde_json::Value| -> Vec<f64> {
        v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
    };
    let (_, s) = send_json(&app, Method::GET, &format!("/sessions/{id}/stages/1"), None).await;
    assert_eq!(floats(&s["payload"]["values"]), a.sampled.values);
    assert_eq!(floats(&s["payload"]["instants"]), a.sampled.instants);
    assert_eq!(floats(&s["payload"]["curve"]["v"]), a.curve.v);
    let (_, q) = send_json(&app, Method::GET, &format!("/sessions/{id}/stages/2"), None).await;
    assert_eq!(floats(&q["payload"]["errors"]), a.quantized.errors);
    assert_eq!(floats(&q["payload"]["values"]), a.quantized.values);
    assert_eq!(q["payload"]["step"].as_f64().unwrap(), a.quantizer.step);
    let (_, e) = send_json(&app, Method::GET, &format!("/sessions/{id}/stages/3"), None).await;
    let sqnr = a.metrics.sqnr_db.db().unwrap();
    assert_eq!(e["payload"]["metrics"]["sqnr_db"].as_f64().unwrap(), sqnr);
    let words: Vec<String> = a.coded.codewords.iter().map(|w| w.to_string()).collect();
    let wire: Vec<String> = e["payload"]["codewords"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_str().unwrap().to_owned())
        .collect();
    assert_eq!(wire, words);
    // the engine's own navigation agrees with the served cursor
    let mut local = engine.clone();
    local.step(Direction::Forward);
    assert_eq!(local.stage(), Stage::Sampled);
}

#[tokio::test]
async fn errors() {
    let app = app();
    let (status, v) = send_json(&app, Method::GET, "/sessions/999/stages/0", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["error"], "unknown-session");
    let (status, _) = send_json(&app, Method::GET, "/sessions/abc/stages/0", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = send_json(&app, Method::POST, "/sessions/7/reset", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = send_json(&app, Method::POST, "/sessions/7/step", Some(r#"{"direction":"back"}"#)).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let bad = [
        (r#"{"preset": "sinusoid", "samples": 1, "bits": 3}"#, "invalid-argument", "samples"),
        (r#"{"preset": "sinusoid", "samples": 20, "bits": 17}"#, "invalid-argument", "bits"),
        (r#"{"preset": "square", "samples": 20, "bits": 3}"#, "unknown-preset", "preset"),
        (r#"{"preset": "sinusoid", "dc": 1.0}"#, "invalid-argument", "preset"),
        (r#"{"a": [1,0,0,0,0,0], "periods": 0}"#, "invalid-argument", "periods"),
        (r#"{"a": [1,0,0,0,0,0], "f1_mantissa": -2}"#, "invalid-argument", "f1_mantissa"),
    ];
    for (body, code, field) in bad {
        let (status, v) = send_json(&app, Method::POST, "/sessions", Some(body)).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
        assert_eq!(v["error"], code, "{body}");
        assert_eq!(v["field"], field, "{body}");
    }

    let (status, v) = send_json(&app, Method::POST, "/sessions", Some("{not json")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"], "invalid-body");
    let (status, v) = send_json(&app, Method::POST, "/sessions", Some(r#"{"samplez": 3}"#)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"], "invalid-body");

    let (_, v) = send_json(&app, Method::POST, "/sessions", Some(SINUSOID)).await;
    let id = v["id"].as_u64().unwrap();
    let (status, v) = send_json(&app, Method::GET, &format!("/sessions/{id}/stages/4"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["field"], "stage");
    let (status, v) =
        send_json(&app, Method::POST, &format!("/sessions/{id}/step"), Some(r#"{"direction":"up"}"#)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["field"], "direction");
}

#[tokio::test]
async fn presets_listing() {
    let app = app();
    let (status, v) = send_json(&app, Method::GET, "/presets", None).await;
    assert_eq!(status, StatusCode::OK);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert_eq!(names, vec!["sinusoid", "triangular", "rectangular", "one-period"]);
    assert_eq!(v[2]["spec"]["periods"], 4);
    assert_eq!(v[0]["spec"]["f1_hz"], 1000.0);
}

#[tokio::test]
async fn cors_headers_present() {
    let app = app();
    let req = axum::http::Request::builder()
        .uri("/presets")
        .header("origin", "http://localhost:5173")
        .body(axum::body::Body::empty())
        .unwrap();
    let resp = tower::ServiceExt::oneshot(app.clone(), req).await.unwrap();
    assert_eq!(resp.headers()["access-control-allow-origin"], "*");
    let (_, bytes) = send(&app, Method::GET, "/presets", None).await;
    assert!(!bytes.is_empty());
}

#[tokio::test]
async fn concurrent_sessions() {
    let app = app();
    let mut handles = vec![];
    for _ in 0..16 {
        let app = app.clone();
        handles.push(tokio::spawn(async move {
            let (_, v) = send_json(&app, Method::POST, "/sessions", Some(SINUSOID)).await;
            let id = v["id"].as_u64().unwrap();
            for _ in 0..3 {
                send(&app, Method::POST, &format!("/sessions/{id}/step"), Some(r#"{"direction":"forward"}"#)).await;
            }
            let (_, v) = send_json(&app, Method::GET, &format!("/sessions/{id}/stages/0"), None).await;
            (id, v["stage"].as_u64().unwrap())
        }));
    }
    let mut ids = vec![];
    for h in handles {
        let (id, stage) = h.await.unwrap();
        assert_eq!(stage, 3);
        ids.push(id);
    }
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), 16);
}
