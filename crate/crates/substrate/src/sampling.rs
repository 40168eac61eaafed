use rand::Rng;

/// Standard normal draw via Box-Muller. One uniform pair per sample.
pub fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // 1 - U keeps the argument of ln in (0, 1].
    let u1 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Exponential draw with the given rate, strictly positive.
pub fn exponential<R: Rng + ?Sized>(rng: &mut R, rate: f64) -> f64 {
    assert!(rate > 0.0, "exponential rate must be positive, got {rate}");
    // Reject the measure-zero endpoints so event times strictly increase.
    loop {
        let u: f64 = rng.random();
        if u > 0.0 && u < 1.0 {
            return -u.ln() / rate;
        }
    }
}
