//! Quadrature on uniform grids.

/// Composite trapezoid rule for samples spaced by `dt`.
pub fn trapezoid(samples: &[f64], dt: f64) -> f64 {
    match samples.len() {
        0 | 1 => 0.0,
        n => {
            let interior: f64 = samples[1..n - 1].iter().sum();
            dt * (interior + 0.5 * (samples[0] + samples[n - 1]))
        }
    }
}

/// Trapezoid rule applied to `f(x_i)` without materializing the samples.
pub fn trapezoid_by<F: FnMut(usize) -> f64>(n: usize, dt: f64, mut f: F) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut acc = 0.5 * (f(0) + f(n - 1));
    for i in 1..n - 1 {
        acc += f(i);
    }
    acc * dt
}
