//! Scalar root finding: stable quadratics and safeguarded bracketing.

use crate::error::{Error, Result};

/// Real roots of `a x² + b x + c = 0`, ascending, computed without
/// cancellation. Returns `None` for a negative discriminant or `a == 0`.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Option<[f64; 2]> {
    if a == 0.0 {
        return None;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        // b == 0 and c == 0
        return Some([0.0, 0.0]);
    }
    let (r1, r2) = (q / a, c / q);
    Some(if r1 <= r2 { [r1, r2] } else { [r2, r1] })
}

/// The positive root of a quadratic with `a·c < 0`, which has exactly one.
pub fn unique_positive_root(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a * c < 0.0) {
        return Err(Error::RootFinding(format!("quadratic {a}x^2 + {b}x + {c} does not have roots of opposite sign")));
    }
    let [_, hi] = quadratic_roots(a, b, c).ok_or_else(|| Error::RootFinding("negative discriminant".into()))?;
    Ok(hi)
}

/// Newton iteration kept inside a sign-change bracket, falling back to
/// bisection whenever a step leaves the bracket or stalls.
///
/// `f` returns the value and derivative at a point. Terminates when the
/// bracket or the Newton step is below `rel_tol·|x|`, or the residual
/// vanishes.
pub fn newton_bisect<F>(mut f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::OutOfRange { lo, hi });
    }
    let rising = fhi > 0.0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..400 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == rising {
            hi = x;
        } else {
            lo = x;
        }
        if hi - lo <= rel_tol * x.abs().max(f64::MIN_POSITIVE) {
            return Ok(x);
        }
        let newton = x - fx / dfx;
        if dfx != 0.0 && newton.is_finite() && newton > lo && newton < hi {
            if (newton - x).abs() <= rel_tol * x.abs() {
                return Ok(newton);
            }
            x = newton;
        } else {
            x = 0.5 * (lo + hi);
        }
    }
    Err(Error::RootFinding("newton_bisect did not converge".into()))
}

/// Regula falsi with the Illinois modification, for functions without a
/// derivative. Requires a sign change on `[lo, hi]`.
pub fn illinois<F>(mut f: F, lo: f64, hi: f64, abs_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::OutOfRange { lo, hi });
    }
    let mut side = 0i8;
    for _ in 0..500 {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = f(c);
        if fc == 0.0 || (b - a).abs() <= abs_tol {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() <= abs_tol {
            return Ok(0.5 * (a + b));
        }
    }
    Err(Error::RootFinding("illinois did not converge".into()))
}
