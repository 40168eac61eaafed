use serde::{Deserialize, Serialize};

/// Gains for the thermal loop, tuned against the default thermal plant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PidGains {
    pub kp: f64,
    pub ki: f64,
    pub kd: f64,
}

impl Default for PidGains {
    fn default() -> Self {
        PidGains { kp: 2.0, ki: 0.1, kd: 0.5 }
    }
}

/// Default actuator authority: a signed power adjustment in watts.
pub const DEFAULT_OUTPUT_LIMITS_W: (f64, f64) = (-20.0, 20.0);

/// Positional-form PID with conditional integration: the integral freezes
/// whenever the output saturates, and is additionally clamped outright.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PidController {
    gains: PidGains,
    output_limits: (f64, f64),
    integral_limit: f64,
    integral: f64,
    prev_error: Option<f64>,
}

impl Default for PidController {
    fn default() -> Self {
        PidController::new(PidGains::default(), DEFAULT_OUTPUT_LIMITS_W)
    }
}

impl PidController {
    /// The integral clamp is sized so the I term alone can just reach either
    /// output limit, and no further.
    pub fn new(gains: PidGains, output_limits: (f64, f64)) -> Self {
        assert!(output_limits.0 < output_limits.1, "output limits must be ordered");
        let span = output_limits.0.abs().max(output_limits.1.abs());
        let integral_limit = if gains.ki > 0.0 { span / gains.ki } else { f64::MAX };
        PidController { gains, output_limits, integral_limit, integral: 0.0, prev_error: None }
    }

    pub fn gains(&self) -> PidGains {
        self.gains
    }

    pub fn output_limits(&self) -> (f64, f64) {
        self.output_limits
    }

    pub fn integral(&self) -> f64 {
        self.integral
    }

    /// Forget accumulated state, keeping the configuration.
    pub fn reset(&mut self) {
        self.integral = 0.0;
        self.prev_error = None;
    }

    /// One control update; `dt` must be positive. Returns the clamped output.
    pub fn update(&mut self, setpoint: f64, measured: f64, dt: f64) -> f64 {
        assert!(dt > 0.0, "dt must be positive, got {dt}");
        let error = setpoint - measured;
        let derivative = match self.prev_error {
            Some(prev) => (error - prev) / dt,
            None => 0.0,
        };
        let tentative =
            (self.integral + error * dt).clamp(-self.integral_limit, self.integral_limit);
        let unclamped =
            self.gains.kp * error + self.gains.ki * tentative + self.gains.kd * derivative;
        let output = unclamped.clamp(self.output_limits.0, self.output_limits.1);
        if unclamped > self.output_limits.0 && unclamped < self.output_limits.1 {
            self.integral = tentative;
        }
        self.prev_error = Some(error);
        output
    }
}
