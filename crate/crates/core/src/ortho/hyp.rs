//! Gauss hypergeometric series `₂F₁(a, b; c; z) = Σ (a)ₙ(b)ₙ / ((c)ₙ n!) zⁿ`.

use num_complex::Complex64;

use crate::{Error, Result};

const MAX_TERMS: usize = 2_000_000;

fn is_nonpositive_integer(w: Complex64) -> bool {
    w.im == 0.0 && w.re <= 0.0 && w.re.fract() == 0.0
}

/// Sums the series until the tail bound drops below `tol` (relative to the
/// running sum once it exceeds 1).
///
/// The domain is `|z| < 1`, or `|z| = 1` with `Re(c − a − b) > 0`; anything
/// else is `NoConvergence`. A terminating series (`a` or `b` a non-positive
/// integer) is summed exactly for any `z`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: Complex64, tol: f64) -> Result<Complex64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::InvalidParameter(format!("c = {c} is a non-positive integer")));
    }
    let terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    let r = z.norm();
    if !terminating {
        let on_circle = (r - 1.0).abs() <= f64::EPSILON;
        if r > 1.0 + f64::EPSILON || (on_circle && (c - a - b).re <= 0.0) {
            return Err(Error::NoConvergence(format!(
                "|z| = {r}, Re(c - a - b) = {}",
                (c - a - b).re
            )));
        }
    }
    let warmup = 2.0 * (a.norm() + b.norm() + c.norm()) + 2.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == Complex64::new(0.0, 0.0) && terminating {
            return Ok(sum);
        }
        let rho = ratio.norm();
        if nf > warmup && rho < 1.0 {
            let tail = term.norm() * rho / (1.0 - rho);
            if tail <= tol * sum.norm().max(1.0) {
                return Ok(sum);
            }
        }
        if !term.is_finite() {
            break;
        }
    }
    Err(Error::NoConvergence(format!(
        "tolerance {tol:e} not reached in {MAX_TERMS} terms"
    )))
}
