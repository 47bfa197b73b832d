//! Small dense linear algebra for the fitter and the ODE propagator.

use alloc::vec::Vec;

/// Solves `A x = b` in place by Gaussian elimination with partial pivoting.
///
/// `a` is row-major `n × n`. On success `b` holds the solution and the
/// returned value is the ratio of the largest to the smallest pivot
/// magnitude, a cheap condition estimate. `None` signals a zero pivot.
pub(crate) fn solve_in_place(a: &mut [f64], b: &mut [f64], n: usize) -> Option<f64> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    let mut max_pivot: f64 = 0.0;
    let mut min_pivot = f64::INFINITY;
    for col in 0..n {
        let mut pivot_row = col;
        let mut best = libm::fabs(a[col * n + col]);
        for row in col + 1..n {
            let v = libm::fabs(a[row * n + col]);
            if v > best {
                best = v;
                pivot_row = row;
            }
        }
        if best == 0.0 || !best.is_finite() {
            return None;
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        max_pivot = max_pivot.max(best);
        min_pivot = min_pivot.min(best);
        let p = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / p;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = b[col];
        for k in col + 1..n {
            s -= a[col * n + k] * b[k];
        }
        b[col] = s / a[col * n + col];
    }
    Some(max_pivot / min_pivot)
}

/// Inverse of a 4 × 4 matrix, column by column.
pub(crate) fn invert4(m: &[[f64; 4]; 4]) -> Option<[[f64; 4]; 4]> {
    let mut inv = [[0.0; 4]; 4];
    for col in 0..4 {
        let mut a: Vec<f64> = m.iter().flat_map(|r| r.iter().copied()).collect();
        let mut b = [0.0; 4];
        b[col] = 1.0;
        solve_in_place(&mut a, &mut b, 4)?;
        for row in 0..4 {
            inv[row][col] = b[row];
        }
    }
    Some(inv)
}

pub(crate) fn matmul4(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub(crate) fn matvec4(a: &[[f64; 4]; 4], v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2] + a[i][3] * v[3];
    }
    out
}
