//! Async HTTP client for one device: telemetry polling, verified
//! operating-point changes, and the share-event stream with per-source
//! monotonicity enforcement.

use std::collections::HashMap;
use std::pin::Pin;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use futures_util::{Stream, StreamExt};
use substrate::{OperatingPoint, ShareEvent, Telemetry};

use crate::wire::{PatchSettings, SystemInfo, INFO_PATH, RESTART_PATH, SHARES_PATH, SYSTEM_PATH};
use crate::GhostError;

/// Connection settings for one device.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceEndpoint {
    pub base_url: String,
    /// Telemetry cadence, seconds.
    pub poll_interval_s: f64,
    /// Per-request timeout for unary calls, seconds.
    pub request_timeout_s: f64,
    /// Cadence of post-restart verification polls, seconds.
    pub verify_poll_s: f64,
    /// Bound on the post-restart verification wait, seconds.
    pub verify_timeout_s: f64,
}

impl DeviceEndpoint {
    pub fn new(base_url: impl Into<String>) -> Self {
        DeviceEndpoint {
            base_url: base_url.into(),
            poll_interval_s: 3.0,
            request_timeout_s: 10.0,
            verify_poll_s: 0.25,
            verify_timeout_s: 30.0,
        }
    }

    pub fn validate(&self) -> Result<(), GhostError> {
        if !(self.base_url.starts_with("http://") || self.base_url.starts_with("https://")) {
            return Err(GhostError::BadEndpoint(format!(
                "base_url must be http(s), got {:?}",
                self.base_url
            )));
        }
        for (name, v) in [
            ("poll_interval_s", self.poll_interval_s),
            ("request_timeout_s", self.request_timeout_s),
            ("verify_poll_s", self.verify_poll_s),
            ("verify_timeout_s", self.verify_timeout_s),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(GhostError::BadEndpoint(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

fn unix_now_s() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

/// HTTP client bound to one endpoint. Unary calls share a timeout-bearing
/// connection pool; the share stream uses a separate pool with no overall
/// deadline, since it is expected to stay open indefinitely.
pub struct DeviceClient {
    endpoint: DeviceEndpoint,
    http: reqwest::Client,
    stream_http: reqwest::Client,
}

impl DeviceClient {
    pub fn new(endpoint: DeviceEndpoint) -> Result<Self, GhostError> {
        endpoint.validate()?;
        let timeout = Duration::from_secs_f64(endpoint.request_timeout_s);
        let http = reqwest::Client::builder()
            .timeout(timeout)
            .connect_timeout(timeout)
            .build()
            .map_err(|e| GhostError::Transport(e.to_string()))?;
        let stream_http = reqwest::Client::builder()
            .connect_timeout(timeout)
            .build()
            .map_err(|e| GhostError::Transport(e.to_string()))?;
        Ok(DeviceClient { endpoint, http, stream_http })
    }

    pub fn endpoint(&self) -> &DeviceEndpoint {
        &self.endpoint
    }

    fn url(&self, path: &str) -> String {
        format!("{}{}", self.endpoint.base_url.trim_end_matches('/'), path)
    }

    /// GET the device snapshot in wire form.
    pub async fn fetch_info(&self) -> Result<SystemInfo, GhostError> {
        let resp = self
            .http
            .get(self.url(INFO_PATH))
            .send()
            .await
            .map_err(|e| GhostError::Transport(e.to_string()))?;
        let status = resp.status();
        let body = resp.text().await.map_err(|e| GhostError::Transport(e.to_string()))?;
        if !status.is_success() {
            return Err(GhostError::Protocol { status: status.as_u16(), body });
        }
        let info: SystemInfo = serde_json::from_str(&body)
            .map_err(|e| GhostError::MalformedBody { detail: e.to_string(), raw: body.clone() })?;
        info.validate()
            .map_err(|detail| GhostError::MalformedBody { detail, raw: body })?;
        Ok(info)
    }

    /// One telemetry snapshot, stamped with the local receipt time.
    pub async fn poll_telemetry(&self) -> Result<Telemetry, GhostError> {
        let info = self.fetch_info().await?;
        Ok(info.to_telemetry(unix_now_s()))
    }

    /// Asks the device to apply staged settings and power-cycle.
    pub async fn restart(&self) -> Result<(), GhostError> {
        let resp = self
            .http
            .post(self.url(RESTART_PATH))
            .send()
            .await
            .map_err(|e| GhostError::Transport(e.to_string()))?;
        let status = resp.status();
        if !status.is_success() {
            let body = resp.text().await.unwrap_or_default();
            return Err(GhostError::Protocol { status: status.as_u16(), body });
        }
        Ok(())
    }

    /// Validated, verified operating-point change: local invariant check,
    /// PATCH, restart, then polling until the device reports the new point or
    /// the bounded wait expires. Re-sending the current point is a no-op.
    pub async fn set_operating_point(&self, op: OperatingPoint) -> Result<(), GhostError> {
        op.validate()?;
        if let Ok(info) = self.fetch_info().await {
            if info.frequency == op.frequency_mhz && info.core_voltage == op.core_mv {
                return Ok(());
            }
        }

        let body = PatchSettings { frequency: op.frequency_mhz, volts: op.core_mv };
        let resp = self
            .http
            .patch(self.url(SYSTEM_PATH))
            .json(&body)
            .send()
            .await
            .map_err(|e| GhostError::Transport(e.to_string()))?;
        let status = resp.status();
        if !status.is_success() {
            let text = resp.text().await.unwrap_or_default();
            return Err(GhostError::Protocol { status: status.as_u16(), body: text });
        }
        self.restart().await?;

        let started = Instant::now();
        loop {
            tokio::time::sleep(Duration::from_secs_f64(self.endpoint.verify_poll_s)).await;
            match self.fetch_info().await {
                Ok(info)
                    if info.frequency == op.frequency_mhz && info.core_voltage == op.core_mv =>
                {
                    return Ok(());
                }
                // Restart blackout (5xx) and transient transport failures are
                // expected here; anything else is a real protocol fault.
                Ok(_) | Err(GhostError::Transport(_)) => {}
                Err(GhostError::Protocol { status, .. }) if status >= 500 => {}
                Err(other) => return Err(other),
            }
            let waited = started.elapsed().as_secs_f64();
            if waited > self.endpoint.verify_timeout_s {
                return Err(GhostError::VerifyTimeout { waited_s: waited });
            }
        }
    }

    /// Opens the share stream. Events arrive in device-timestamp order per
    /// source; violations are dropped and counted on the returned handle.
    pub async fn subscribe_shares(&self) -> Result<ShareStream, GhostError> {
        let resp = self
            .stream_http
            .get(self.url(SHARES_PATH))
            .send()
            .await
            .map_err(|e| GhostError::Transport(e.to_string()))?;
        let status = resp.status();
        if !status.is_success() {
            let body = resp.text().await.unwrap_or_default();
            return Err(GhostError::Protocol { status: status.as_u16(), body });
        }
        Ok(ShareStream::new(resp.bytes_stream()))
    }
}

/// One share event plus the local receipt stamp, seconds since the stream
/// opened, at the platform monotonic clock's resolution (sub-microsecond).
#[derive(Debug, Clone, PartialEq)]
pub struct ReceivedShare {
    pub event: ShareEvent,
    pub received_t_s: f64,
}

/// Per-source strictly-increasing timestamp gate. Violations are dropped,
/// never reordered, and the drop count is exposed.
#[derive(Debug, Default)]
pub struct MonotonicFilter {
    last_t: HashMap<String, f64>,
    dropped: u64,
}

impl MonotonicFilter {
    pub fn new() -> Self {
        Self::default()
    }

    /// True if the event advances its source's clock; false (and counted)
    /// otherwise.
    pub fn admit(&mut self, ev: &ShareEvent) -> bool {
        match self.last_t.get_mut(&ev.source) {
            Some(last) if ev.t <= *last => {
                self.dropped += 1;
                false
            }
            Some(last) => {
                *last = ev.t;
                true
            }
            None => {
                self.last_t.insert(ev.source.clone(), ev.t);
                true
            }
        }
    }

    pub fn dropped(&self) -> u64 {
        self.dropped
    }
}

type ByteStream = Pin<Box<dyn Stream<Item = reqwest::Result<bytes::Bytes>> + Send>>;

/// Line-buffered NDJSON share subscription with monotonicity enforcement.
pub struct ShareStream {
    inner: ByteStream,
    buf: Vec<u8>,
    filter: MonotonicFilter,
    opened: Instant,
    ended: bool,
}

impl ShareStream {
    fn new(stream: impl Stream<Item = reqwest::Result<bytes::Bytes>> + Send + 'static) -> Self {
        ShareStream {
            inner: Box::pin(stream),
            buf: Vec::new(),
            filter: MonotonicFilter::new(),
            opened: Instant::now(),
            ended: false,
        }
    }

    /// Next admitted share; None when the stream has ended cleanly. Transport
    /// errors are yielded once and end the stream (resubscribe to resume; the
    /// drop counter and last-seen clocks tell the consumer what was missed).
    pub async fn next(&mut self) -> Option<Result<ReceivedShare, GhostError>> {
        loop {
            if let Some(pos) = self.buf.iter().position(|b| *b == b'\n') {
                let line: Vec<u8> = self.buf.drain(..=pos).collect();
                let line = &line[..line.len() - 1];
                if line.is_empty() {
                    continue;
                }
                match serde_json::from_slice::<ShareEvent>(line) {
                    Ok(ev) => {
                        if self.filter.admit(&ev) {
                            return Some(Ok(ReceivedShare {
                                event: ev,
                                received_t_s: self.opened.elapsed().as_secs_f64(),
                            }));
                        }
                        continue;
                    }
                    Err(e) => {
                        return Some(Err(GhostError::MalformedBody {
                            detail: e.to_string(),
                            raw: String::from_utf8_lossy(line).into_owned(),
                        }));
                    }
                }
            }
            if self.ended {
                return None;
            }
            match self.inner.next().await {
                Some(Ok(chunk)) => self.buf.extend_from_slice(&chunk),
                Some(Err(e)) => {
                    self.ended = true;
                    return Some(Err(GhostError::Transport(e.to_string())));
                }
                None => self.ended = true,
            }
        }
    }

    /// Events dropped by the per-source monotonicity gate so far.
    pub fn dropped(&self) -> u64 {
        self.filter.dropped()
    }
}
