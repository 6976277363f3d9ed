//! Periods of dS = (1/2 pi i) z dw/w over the alpha and beta cycles.
//!
//! On band i (ascending, 1-based), arg w(x + i0) = -pi (r - i) - theta_i(x)
//! with theta_i = arccos((-1)^{r-i} P(x) / 2 Lambda^r) in [0, pi]; going
//! around the band and integrating by parts gives
//!
//!   a_i = e_i^- + (1/pi) int_{band i} theta_i(x) dx.
//!
//! Over gap i, |w| = exp(-arccosh(|P|/2 Lambda^r)), and the oval around the
//! gap closes through the second sheet, so
//!
//!   a^v_i - a^v_{i+1} = 2 int_{gap i} arccosh(|P(x)| / 2 Lambda^r) dx,
//!
//! which is exactly the area enclosed by the oval's image under
//! (z, w) -> (z, ln|w|). Orientations are fixed so that a is ascending
//! (negative Weyl chamber) and a-dual descending (positive chamber) on
//! maximal curves.

use crate::error::{Error, Result};
use crate::numerics::quadrature::cos_substituted_integral;
use crate::swcurve::curve::SWCurve;

/// Periods with the raw quadrature checksum (sum before normalization).
#[derive(Debug, Clone)]
pub struct PeriodReport {
    pub values: Vec<f64>,
    /// Raw sum of the quadrature values before the zero-sum normalization.
    pub checksum: f64,
}

const QUAD_TOL: f64 = 1e-12;
const QUAD_DOUBLINGS: usize = 22;

/// a_i = contour integral of dS around band i, normalized to sum zero.
pub fn periods_a(curve: &SWCurve) -> Result<PeriodReport> {
    let bg = curve.band_structure()?;
    let r = curve.rank();
    let two_lr = curve.two_lambda_r();
    let mut raw = Vec::with_capacity(r);
    for (b, &(lo, hi)) in bg.bands.iter().enumerate() {
        let sign = if (r - (b + 1)) % 2 == 0 { 1.0 } else { -1.0 };
        let q = cos_substituted_integral(
            |x| (sign * curve.eval(x) / two_lr).clamp(-1.0, 1.0).acos(),
            lo,
            hi,
            QUAD_TOL,
            QUAD_DOUBLINGS,
        );
        if !q.residual.is_finite() {
            return Err(Error::QuadratureDiverged {
                residual: q.residual,
                tol: QUAD_TOL,
            });
        }
        raw.push(lo + q.value / std::f64::consts::PI);
    }
    let checksum: f64 = raw.iter().sum();
    let mean = checksum / r as f64;
    Ok(PeriodReport {
        values: raw.iter().map(|v| v - mean).collect(),
        checksum,
    })
}

/// Dual periods: differences from the gap integrals, assembled to sum zero.
pub fn periods_a_dual(curve: &SWCurve) -> Result<PeriodReport> {
    let r = curve.rank();
    let diffs = dual_differences(curve)?;
    // a_dual_i - a_dual_{i+1} = diffs[i-1]; sum a_dual = 0.
    let mut acc = vec![0.0f64; r];
    for i in (0..r - 1).rev() {
        acc[i] = acc[i + 1] + diffs[i];
    }
    let mean = acc.iter().sum::<f64>() / r as f64;
    Ok(PeriodReport {
        values: acc.iter().map(|v| v - mean).collect(),
        checksum: 0.0,
    })
}

/// The positive gap integrals 2 int arccosh(|P|/2 Lambda^r) dx.
pub fn dual_differences(curve: &SWCurve) -> Result<Vec<f64>> {
    let bg = curve.band_structure()?;
    let two_lr = curve.two_lambda_r();
    let mut diffs = Vec::with_capacity(bg.gaps.len());
    for &(lo, hi) in &bg.gaps {
        let q = cos_substituted_integral(
            |x| {
                let y = (curve.eval(x) / two_lr).abs().max(1.0);
                y.acosh()
            },
            lo,
            hi,
            QUAD_TOL,
            QUAD_DOUBLINGS,
        );
        if !q.residual.is_finite() {
            return Err(Error::QuadratureDiverged {
                residual: q.residual,
                tol: QUAD_TOL,
            });
        }
        diffs.push(2.0 * q.value);
    }
    Ok(diffs)
}
