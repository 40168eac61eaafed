//! Route handlers, the shared device state, and the simulation ticker.

use std::convert::Infallible;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, patch, post};
use axum::{Json, Router};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tokio::net::TcpListener;
use tokio::sync::{broadcast, watch};
use tokio::task::JoinHandle;

use ghost::wire::{PatchSettings, SystemInfo, INFO_PATH, RESTART_PATH, SHARES_PATH, SYSTEM_PATH};
use substrate::{OperatingPoint, ShareEvent, Substrate};

use crate::{MockConfig, MockError, MOCK_ASIC_MODEL};

struct Inner {
    dev: Substrate,
    /// PATCHed but not yet applied; takes effect on restart.
    pending: Option<OperatingPoint>,
    /// Telemetry blackout deadline while "rebooting".
    blackout_until: Option<Instant>,
    /// Drives the adversarial reordering, independent of device randomness.
    shuffle_rng: ChaCha8Rng,
}

impl Inner {
    fn rebooting(&self) -> bool {
        self.blackout_until.is_some_and(|until| Instant::now() < until)
    }
}

struct Shared {
    cfg: MockConfig,
    inner: Mutex<Inner>,
    shares_tx: broadcast::Sender<String>,
}

impl Shared {
    fn lock(&self) -> MutexGuard<'_, Inner> {
        self.inner.lock().expect("mock state lock poisoned")
    }
}

/// Running mock: address, base URL, and shutdown control.
pub struct MockHandle {
    pub addr: SocketAddr,
    pub base_url: String,
    shutdown_tx: watch::Sender<bool>,
    server: JoinHandle<std::io::Result<()>>,
    sim: JoinHandle<()>,
}

impl MockHandle {
    /// Stops the simulation task and the HTTP server, waiting for both.
    pub async fn shutdown(self) {
        let _ = self.shutdown_tx.send(true);
        let _ = self.sim.await;
        let _ = self.server.await;
    }
}

/// Binds the HTTP API and starts the simulation ticker. Resolves once the
/// port is bound, so callers can connect immediately.
pub async fn serve_mock(cfg: MockConfig) -> Result<MockHandle, MockError> {
    cfg.validate()?;
    let dev = Substrate::new(cfg.substrate.clone())
        .map_err(|e| MockError::BadConfig(e.to_string()))?;
    let listener = TcpListener::bind(("127.0.0.1", cfg.port)).await?;
    let addr = listener.local_addr()?;

    let (shares_tx, _) = broadcast::channel(16_384);
    let shuffle_rng = ChaCha8Rng::seed_from_u64(cfg.substrate.seed ^ 0x5c4a_3b2e);
    let shared = Arc::new(Shared {
        cfg: cfg.clone(),
        inner: Mutex::new(Inner { dev, pending: None, blackout_until: None, shuffle_rng }),
        shares_tx,
    });

    let (shutdown_tx, shutdown_rx) = watch::channel(false);
    let sim = tokio::spawn(run_sim(shared.clone(), shutdown_rx.clone()));

    let app = Router::new()
        .route(INFO_PATH, get(system_info))
        .route(SYSTEM_PATH, patch(patch_system))
        .route(RESTART_PATH, post(restart))
        .route(SHARES_PATH, get(stream_shares))
        .with_state(shared);

    let mut server_shutdown = shutdown_rx;
    let server = tokio::spawn(async move {
        axum::serve(listener, app)
            .with_graceful_shutdown(async move {
                let _ = server_shutdown.changed().await;
            })
            .await
    });

    Ok(MockHandle { addr, base_url: format!("http://{addr}"), shutdown_tx, server, sim })
}

/// Advances simulated time by tick_s * time_scale per wall tick and
/// broadcasts the resulting share lines. A rebooting device neither mines
/// nor advances.
async fn run_sim(shared: Arc<Shared>, mut shutdown: watch::Receiver<bool>) {
    let mut ticker = tokio::time::interval(Duration::from_secs_f64(shared.cfg.tick_s));
    ticker.set_missed_tick_behavior(tokio::time::MissedTickBehavior::Delay);
    loop {
        tokio::select! {
            _ = shutdown.changed() => return,
            _ = ticker.tick() => {}
        }
        let lines = {
            let mut inner = shared.lock();
            if inner.rebooting() {
                continue;
            }
            let horizon = shared.cfg.tick_s * shared.cfg.time_scale;
            let mut events = inner.dev.sample_shares(horizon);
            if shared.cfg.reorder_window >= 2 {
                shuffle_within_windows(&mut events, shared.cfg.reorder_window, &mut inner.shuffle_rng);
            }
            render_lines(&events, shared.cfg.batch_size)
        };
        for line in lines {
            // Send errors just mean no subscriber is listening right now.
            let _ = shared.shares_tx.send(line);
        }
    }
}

fn shuffle_within_windows(events: &mut [ShareEvent], window: usize, rng: &mut ChaCha8Rng) {
    for chunk in events.chunks_mut(window) {
        for i in (1..chunk.len()).rev() {
            let j = rng.random_range(0..=i);
            chunk.swap(i, j);
        }
    }
}

fn render_lines(events: &[ShareEvent], batch_size: usize) -> Vec<String> {
    let mut out = Vec::new();
    for batch in events.chunks(batch_size.max(1)) {
        let mut buf = String::new();
        for ev in batch {
            buf.push_str(&serde_json::to_string(ev).expect("share events always serialize"));
            buf.push('\n');
        }
        out.push(buf);
    }
    out
}

fn snapshot(inner: &Inner) -> SystemInfo {
    let state = inner.dev.state();
    SystemInfo {
        asic_model: MOCK_ASIC_MODEL.to_string(),
        uptime_seconds: inner.dev.clock_s(),
        frequency: state.clock_mhz as u32,
        core_voltage: state.core_mv as u32,
        core_voltage_actual: state.core_mv,
        temp: state.temp_c,
        power: inner.dev.power_w(),
        hash_rate: inner.dev.hashrate_ghs(),
    }
}

fn rebooting_response() -> Response {
    (StatusCode::SERVICE_UNAVAILABLE, "device is restarting").into_response()
}

async fn system_info(State(shared): State<Arc<Shared>>) -> Response {
    let inner = shared.lock();
    if inner.rebooting() {
        return rebooting_response();
    }
    Json(snapshot(&inner)).into_response()
}

async fn patch_system(
    State(shared): State<Arc<Shared>>,
    Json(body): Json<PatchSettings>,
) -> Response {
    let mut inner = shared.lock();
    if inner.rebooting() {
        return rebooting_response();
    }
    let op = OperatingPoint::new(body.frequency, body.volts);
    if let Err(e) = op.validate() {
        return (StatusCode::BAD_REQUEST, e.to_string()).into_response();
    }
    inner.pending = Some(op);
    (StatusCode::OK, Json(serde_json::json!({ "status": "pending restart" }))).into_response()
}

async fn restart(State(shared): State<Arc<Shared>>) -> Response {
    let mut inner = shared.lock();
    if inner.rebooting() {
        return rebooting_response();
    }
    if let Some(op) = inner.pending.take() {
        inner.dev.set_operating_point(op);
    }
    // Power cycle: synchronization collapses and reforms from scratch.
    inner.dev.reset_order_parameter();
    inner.blackout_until =
        Some(Instant::now() + Duration::from_secs_f64(shared.cfg.restart_blackout_s));
    (StatusCode::OK, Json(serde_json::json!({ "status": "restarting" }))).into_response()
}

async fn stream_shares(State(shared): State<Arc<Shared>>) -> Response {
    let rx = shared.shares_tx.subscribe();
    let stream = futures_util::stream::unfold(rx, |mut rx| async move {
        loop {
            match rx.recv().await {
                Ok(line) => return Some((Ok::<_, Infallible>(line), rx)),
                // A lagged subscriber skips what it missed; the client's
                // ordering filter sees only a clean gap.
                Err(broadcast::error::RecvError::Lagged(_)) => continue,
                Err(broadcast::error::RecvError::Closed) => return None,
            }
        }
    });
    (
        StatusCode::OK,
        [(header::CONTENT_TYPE, "application/x-ndjson")],
        Body::from_stream(stream),
    )
        .into_response()
}
