//! Complementary slackness of the variational problem: with the kernel
//! L(u) = u ln(|u|/Lambda) - u, the minimizer must satisfy
//! L * psi''(x) + c0 = xi_i on band i and lie in [xi_i, xi_{i+1}] on gap i.
//!
//! psi'' is a measure supported on the bands; integrating by parts per band,
//! L * psi''(x) = sum_b { [L(x-t) psi'(t)]_{t in dB} + int_b ln(|x-t|/Lambda) psi'(t) dt },
//! and the remaining integral is exact per linear cell of psi', including
//! the integrable log singularity at t = x.

use crate::error::{Error, Result};
use crate::limitshape::psi::PsiStar;
use crate::limitshape::tension::SurfaceTension;
use serde::Serialize;

/// Outcome of a slackness verification.
#[derive(Debug, Clone, Serialize)]
pub struct VariationalReport {
    pub c0: f64,
    pub band_residual: f64,
    pub gap_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

fn kernel(u: f64, lambda: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u * (u.abs() / lambda).ln() - u
    }
}

/// L * psi''(x) for the stored piecewise-linear profile: psi'' is a sum of
/// kink atoms (slope jumps at the breakpoints, including the jumps against
/// the outer |x| rays), so the convolution is a finite exact sum. As the
/// profile grid refines this converges to the analytic convolution against
/// the band density.
pub fn kernel_convolution(psi: &PsiStar, x: f64, lambda: f64) -> f64 {
    let bps = psi.profile.breakpoints();
    let slopes = psi.profile.slopes();
    if bps.is_empty() {
        return 0.0;
    }
    let mut acc = (slopes[0] + 1.0) * kernel(x - bps[0], lambda);
    for j in 1..slopes.len() {
        let d = slopes[j] - slopes[j - 1];
        if d != 0.0 {
            acc += d * kernel(x - bps[j], lambda);
        }
    }
    acc += (1.0 - slopes[slopes.len() - 1]) * kernel(x - bps[bps.len() - 1], lambda);
    acc
}

/// Verify the slackness conditions; c0 is fitted by least squares over the
/// band samples (it is the Lagrange multiplier of the area constraint, for
/// which no closed formula is given).
pub fn slackness_check(
    psi: &PsiStar,
    tension: &SurfaceTension,
    lambda: f64,
    tol: f64,
) -> Result<VariationalReport> {
    if tension.r != psi.r {
        return Err(Error::invalid("slackness", "tension / psi rank mismatch"));
    }
    let xi = tension.slopes();
    let mut band_samples: Vec<(usize, f64, f64)> = Vec::new();
    for (b, &(lo, hi)) in psi.bands.iter().enumerate() {
        let n = 24;
        for k in 1..n {
            // keep away from the endpoints where the kernel kinks
            let x = lo + (hi - lo) * k as f64 / n as f64;
            band_samples.push((b, x, kernel_convolution(psi, x, lambda)));
        }
    }
    // c0 = mean of (xi_i - raw) over all band samples
    let c0 = band_samples
        .iter()
        .map(|&(b, _, v)| xi[b] - v)
        .sum::<f64>()
        / band_samples.len() as f64;
    let band_residual = band_samples
        .iter()
        .map(|&(b, _, v)| (v + c0 - xi[b]).abs())
        .fold(0.0f64, f64::max);
    // gaps: value must lie in [xi_i, xi_{i+1}] and increase across the gap
    let mut gap_residual = 0.0f64;
    for (g, &(lo, hi)) in psi.gaps.iter().enumerate() {
        let n = 12;
        let mut prev = f64::NEG_INFINITY;
        for k in 1..n {
            let x = lo + (hi - lo) * k as f64 / n as f64;
            let v = kernel_convolution(psi, x, lambda) + c0;
            let below = (xi[g] - v).max(0.0);
            let above = (v - xi[g + 1]).max(0.0);
            gap_residual = gap_residual.max(below).max(above);
            if v < prev - tol {
                gap_residual = gap_residual.max(prev - v);
            }
            prev = v;
        }
    }
    Ok(VariationalReport {
        c0,
        band_residual,
        gap_residual,
        tol,
        pass: band_residual <= tol && gap_residual <= tol,
    })
}
