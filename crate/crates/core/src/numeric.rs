//! Small scalar root finding and extrapolation helpers.

use crate::{Error, Result};

const MAX_BISECTIONS: usize = 400;

/// Finds a sign change of `f` on `[lo, hi]` by bisection.
///
/// Stops when the bracket is narrower than `rel_tol` times its magnitude
/// (or `rel_tol` itself near zero), or when `f` vanishes exactly.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, rel_tol: f64, what: &'static str) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoBracket { what, lo: a, hi: b });
    }
    for _ in 0..MAX_BISECTIONS {
        let m = 0.5 * (a + b);
        if b - a <= rel_tol * a.abs().max(b.abs()).max(1.0) || m <= a || m >= b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Err(Error::NotConverged {
        what,
        iterations: MAX_BISECTIONS,
        residual: b - a,
    })
}

/// Evaluates at `x0` the interpolating polynomial through `(xs, ys)`.
pub fn neville(xs: &[f64], ys: &[f64], x0: f64) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty());
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = ((x0 - xs[i + m]) * p[i] + (xs[i] - x0) * p[i + 1]) / (xs[i] - xs[i + m]);
        }
    }
    p[0]
}

/// Two-level Richardson table for samples at steps `h, h/2, h/4` whose error
/// expands in integer powers of `h`.
///
/// Returns the second-order extrapolant and its distance to the finest
/// first-order one.
pub fn richardson_halving(v: [f64; 3]) -> (f64, f64) {
    let r1_coarse = 2.0 * v[1] - v[0];
    let r1_fine = 2.0 * v[2] - v[1];
    let r2 = (4.0 * r1_fine - r1_coarse) / 3.0;
    (r2, (r2 - r1_fine).abs())
}
