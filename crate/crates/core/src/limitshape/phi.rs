//! The conformal map Phi(z) = 1 + (2 / pi i r) ln w(z) from the upper
//! half-plane to the slit half-strip.
//!
//! On the real axis the branch is explicit from the band/gap structure:
//! arg w(x + i0) decreases from 0 (right of all bands) by pi across each
//! band, and ln|w| = -arccosh(|P|/2 Lambda^r) off the bands. In the
//! interior the argument is continued by tracking w down a vertical segment
//! from a height where w ~ Lambda^r / P(z) fixes it unambiguously.

use crate::error::{Error, Result};
use crate::numerics::quadrature::cos_substituted_integral;
use crate::swcurve::{w_branch, SWCurve};
use num_complex::Complex64;

/// Phi on the closed upper half-plane (boundary values from above).
pub fn conformal_phi(z: Complex64, curve: &SWCurve) -> Result<Complex64> {
    if z.im < -1e-12 * (1.0 + z.norm()) {
        return Err(Error::invalid("conformal map", "Im z must be >= 0"));
    }
    let r = curve.rank() as f64;
    let (ln_abs_w, arg_w) = ln_w_continued(z, curve)?;
    // Phi = 1 + (2/(pi r)) arg w - i (2/(pi r)) ln|w|
    let f = 2.0 / (std::f64::consts::PI * r);
    Ok(Complex64::new(1.0 + f * arg_w, -f * ln_abs_w))
}

/// psi-star slope on the real axis: Re Phi(x + i0), in closed form.
pub fn psi_star_slope(x: f64, curve: &SWCurve) -> Result<f64> {
    let bg = curve.band_structure()?;
    let r = curve.rank();
    let two_lr = curve.two_lambda_r();
    // right of everything
    if x >= *bg.band_endpoints.last().unwrap() {
        return Ok(1.0);
    }
    if x <= bg.band_endpoints[0] {
        return Ok(-1.0);
    }
    for (b, &(lo, hi)) in bg.bands.iter().enumerate() {
        let i = b + 1;
        if x >= lo && x <= hi {
            let sign = if (r - i) % 2 == 0 { 1.0 } else { -1.0 };
            let theta = (sign * curve.eval(x) / two_lr).clamp(-1.0, 1.0).acos();
            return Ok(-1.0 + 2.0 * i as f64 / r as f64
                - 2.0 * theta / (std::f64::consts::PI * r as f64));
        }
        if x > hi {
            continue;
        }
    }
    // in a gap: the facet slope
    for (g, &(lo, hi)) in bg.gaps.iter().enumerate() {
        if x > lo && x < hi {
            return Ok(-1.0 + 2.0 * (g + 1) as f64 / r as f64);
        }
    }
    Err(Error::invalid("psi slope", format!("x = {x} not located")))
}

/// Im Phi on the real axis, in closed form: (2/(pi r)) arccosh(|P|/2 L^r)
/// off the bands, 0 on them.
pub fn im_phi_real_axis(x: f64, curve: &SWCurve) -> Result<f64> {
    let bg = curve.band_structure()?;
    let two_lr = curve.two_lambda_r();
    for &(lo, hi) in &bg.bands {
        if x >= lo && x <= hi {
            return Ok(0.0);
        }
    }
    let y = (curve.eval(x) / two_lr).abs().max(1.0);
    Ok(2.0 * y.acosh() / (std::f64::consts::PI * curve.rank() as f64))
}

/// Gap integrals of Im Phi: pi * int_{gap i} Im Phi dx, for i = 1..r-1.
pub fn gap_im_phi_integrals(curve: &SWCurve) -> Result<Vec<f64>> {
    let bg = curve.band_structure()?;
    let mut out = Vec::with_capacity(bg.gaps.len());
    for &(lo, hi) in &bg.gaps {
        let q = cos_substituted_integral(
            |x| im_phi_real_axis(x, curve).unwrap_or(0.0),
            lo,
            hi,
            1e-12,
            22,
        );
        if !q.residual.is_finite() {
            return Err(Error::QuadratureDiverged {
                residual: q.residual,
                tol: 1e-12,
            });
        }
        out.push(std::f64::consts::PI * q.value);
    }
    Ok(out)
}

/// (ln|w|, continuous arg w) for z in the closed upper half-plane.
fn ln_w_continued(z: Complex64, curve: &SWCurve) -> Result<(f64, f64)> {
    let bg = curve.band_structure()?;
    let scale = bg
        .band_endpoints
        .iter()
        .fold(1.0f64, |m, e| m.max(e.abs()));
    if z.im <= 1e-10 * scale {
        return boundary_ln_w(z.re, curve);
    }
    // start high: w ~ Lambda^r / P(z0), arg w ~ -r Arg(z0)
    let y0 = 50.0 * (scale + z.norm());
    let mut zt = Complex64::new(z.re, y0);
    let mut w = w_branch(zt, curve)?;
    let approx = -(curve.rank() as f64) * zt.arg();
    let k = ((approx - w.arg()) / std::f64::consts::TAU).round();
    let mut arg = w.arg() + std::f64::consts::TAU * k;
    // walk down, unwrapping the argument stepwise
    let mut y = y0;
    while y > z.im {
        let step = ((y - z.im).min(0.45 * y)).max(1e-12);
        y -= step;
        if y < z.im {
            y = z.im;
        }
        zt = Complex64::new(z.re, y);
        let w_new = w_branch(zt, curve)?;
        let mut delta = w_new.arg() - w.arg();
        while delta > std::f64::consts::PI {
            delta -= std::f64::consts::TAU;
        }
        while delta < -std::f64::consts::PI {
            delta += std::f64::consts::TAU;
        }
        arg += delta;
        w = w_new;
    }
    Ok((w.norm().ln(), arg))
}

fn boundary_ln_w(x: f64, curve: &SWCurve) -> Result<(f64, f64)> {
    let bg = curve.band_structure()?;
    let r = curve.rank();
    let two_lr = curve.two_lambda_r();
    let pi = std::f64::consts::PI;
    if x >= *bg.band_endpoints.last().unwrap() {
        let y = (curve.eval(x) / two_lr).abs().max(1.0);
        return Ok((-y.acosh(), 0.0));
    }
    if x <= bg.band_endpoints[0] {
        let y = (curve.eval(x) / two_lr).abs().max(1.0);
        return Ok((-y.acosh(), -pi * r as f64));
    }
    for (b, &(lo, hi)) in bg.bands.iter().enumerate() {
        let i = b + 1;
        if x >= lo && x <= hi {
            let sign = if (r - i) % 2 == 0 { 1.0 } else { -1.0 };
            let theta = (sign * curve.eval(x) / two_lr).clamp(-1.0, 1.0).acos();
            return Ok((0.0, -pi * (r - i) as f64 - theta));
        }
    }
    for (g, &(lo, hi)) in bg.gaps.iter().enumerate() {
        if x > lo && x < hi {
            let i = g + 1;
            let y = (curve.eval(x) / two_lr).abs().max(1.0);
            return Ok((-y.acosh(), -pi * (r - i) as f64));
        }
    }
    Err(Error::invalid("branch", format!("x = {x} not located")))
}
