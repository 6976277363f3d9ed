//! The Plancherel large-deviation action
//! S_pl(psi) = (1/2) iint_{x<y} (1 + psi'(x)) (1 - psi'(y)) ln(|x-y|/Lambda) dx dy.
//!
//! On a piecewise-linear profile the slopes are constant per cell, so the
//! double integral reduces to closed-form cell-pair terms built from
//! G(u) = u^2 (2 ln|u| - 3)/4, the second antiderivative of ln|u|. That
//! keeps the diagonal log singularity exact instead of quadratured.

use crate::error::{Error, Result};
use crate::partitions::ProfileFunction;

/// G''(u) = ln|u|, G(0) = G'(0) = 0.
fn g2(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u * u * (2.0 * u.abs().ln() - 3.0) / 4.0
    }
}

/// iint over x in [a,b], y in [c,d] (b <= c) of ln|x-y| dx dy.
fn rect_log_integral(a: f64, b: f64, c: f64, d: f64) -> f64 {
    g2(d - a) - g2(d - b) - g2(c - a) + g2(c - b)
}

/// iint over a <= x < y <= b of ln(y-x) dx dy for one cell.
fn tri_log_integral(len: f64) -> f64 {
    g2(len)
}

pub fn action_plancherel(psi: &ProfileFunction, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::invalid("action", "Lambda must be positive"));
    }
    let bps = psi.breakpoints();
    if bps.is_empty() {
        return Ok(0.0);
    }
    let slopes = psi.slopes();
    let ln_lambda = lambda.ln();
    let m = slopes.len();
    let mut acc = 0.0;
    for j in 0..m {
        let (a, b) = (bps[j], bps[j + 1]);
        let sj = slopes[j];
        // same-cell triangle
        let coeff_diag = (1.0 + sj) * (1.0 - sj);
        if coeff_diag != 0.0 {
            let len = b - a;
            acc += coeff_diag * (tri_log_integral(len) - ln_lambda * 0.5 * len * len);
        }
        // ordered pairs with later cells
        for k in j + 1..m {
            let coeff = (1.0 + sj) * (1.0 - slopes[k]);
            if coeff == 0.0 {
                continue;
            }
            let (c, d) = (bps[k], bps[k + 1]);
            acc += coeff
                * (rect_log_integral(a, b, c, d) - ln_lambda * (b - a) * (d - c));
        }
    }
    Ok(0.5 * acc)
}
