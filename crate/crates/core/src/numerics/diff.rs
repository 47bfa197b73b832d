//! Central finite differences.

/// Second-order central difference `(f(x+h) - f(x-h)) / 2h`.
pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central-difference gradient of an array-valued function of a point in R³.
///
/// Returns `out[l][k] = ∂f_k/∂x_l`.
pub fn gradient<const N: usize, F>(f: F, x: [f64; 3], h: f64) -> [[f64; N]; 3]
where
    F: Fn([f64; 3]) -> [f64; N],
{
    let mut out = [[0.0; N]; 3];
    for (l, row) in out.iter_mut().enumerate() {
        let mut xp = x;
        let mut xm = x;
        xp[l] += h;
        xm[l] -= h;
        let fp = f(xp);
        let fm = f(xm);
        for k in 0..N {
            row[k] = (fp[k] - fm[k]) / (2.0 * h);
        }
    }
    out
}
