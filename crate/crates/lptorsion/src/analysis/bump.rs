//! The fixed smooth plateau bump χ used by all test-function constructions:
//! even, supported on [−1, 1], identically 1 on [−1/2, 1/2], built from the
//! standard exp(−1/t) smooth step.

/// g(t) = exp(−1/t) for t > 0, extended by 0.
fn g(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// g′(t) = exp(−1/t)/t².
fn g_prime(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp() / (t * t)
    } else {
        0.0
    }
}

/// The smooth step s(t) = g(t)/(g(t) + g(1−t)): 0 for t ≤ 0, 1 for t ≥ 1.
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = g(t);
        a / (a + g(1.0 - t))
    }
}

/// s′(t), zero outside (0, 1).
pub fn smoothstep_prime(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        0.0
    } else {
        let a = g(t);
        let b = g(1.0 - t);
        (g_prime(t) * b + a * g_prime(1.0 - t)) / ((a + b) * (a + b))
    }
}

/// The plateau bump χ(x) = s(2(1 − |x|)): 1 on [−1/2, 1/2], 0 off [−1, 1].
pub fn chi(x: f64) -> f64 {
    smoothstep(2.0 * (1.0 - x.abs()))
}

/// χ′(x) (odd; supported on 1/2 < |x| < 1).
pub fn chi_prime(x: f64) -> f64 {
    let sign = if x >= 0.0 { 1.0 } else { -1.0 };
    -2.0 * sign * smoothstep_prime(2.0 * (1.0 - x.abs()))
}
