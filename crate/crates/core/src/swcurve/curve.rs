//! Maximal curves Lambda^r (w + 1/w) = P(z): band/gap structure and the
//! distinguished branch of w.

use crate::error::{Error, Result};
use crate::numerics::roots::real_coeff_roots;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// A monic real polynomial P(z) = z^r + 0 z^{r-1} + c_{r-2} z^{r-2} + ... + c_0
/// together with the scale Lambda.
///
/// `lower` stores the free coefficients (c_0, ..., c_{r-2}) ascending; the
/// subleading coefficient is identically zero by construction. Curve files
/// serialize as {r, coeffs, lambda} with `coeffs` the free lower list.
#[derive(Debug, Serialize, Deserialize)]
#[serde(try_from = "SWCurveData", into = "SWCurveData")]
pub struct SWCurve {
    r: usize,
    lower: Vec<f64>,
    lambda: f64,
    bands: OnceLock<std::result::Result<BandGapStructure, Error>>,
}

#[derive(Serialize, Deserialize, Clone)]
struct SWCurveData {
    r: usize,
    coeffs: Vec<f64>,
    lambda: f64,
}

impl TryFrom<SWCurveData> for SWCurve {
    type Error = Error;
    fn try_from(d: SWCurveData) -> Result<Self> {
        SWCurve::new(d.r, d.coeffs, d.lambda)
    }
}

impl From<SWCurve> for SWCurveData {
    fn from(c: SWCurve) -> Self {
        SWCurveData {
            r: c.r,
            coeffs: c.lower,
            lambda: c.lambda,
        }
    }
}

impl Clone for SWCurve {
    fn clone(&self) -> Self {
        SWCurve {
            r: self.r,
            lower: self.lower.clone(),
            lambda: self.lambda,
            bands: OnceLock::new(),
        }
    }
}

impl PartialEq for SWCurve {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.lower == other.lower && self.lambda == other.lambda
    }
}

/// Bands (where |w| = 1) and gaps between them, from the 2r real roots of
/// P(z) = +-2 Lambda^r.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandGapStructure {
    /// All 2r roots, sorted ascending: consecutive pairs bound the bands.
    pub band_endpoints: Vec<f64>,
    /// The r bands [e_{2i}, e_{2i+1}].
    pub bands: Vec<(f64, f64)>,
    /// The r-1 open gaps between consecutive bands.
    pub gaps: Vec<(f64, f64)>,
}

impl SWCurve {
    pub fn new(r: usize, lower: Vec<f64>, lambda: f64) -> Result<Self> {
        if r == 0 {
            return Err(Error::invalid("curve", "rank must be >= 1"));
        }
        if lower.len() + 1 != r {
            return Err(Error::invalid(
                "curve",
                format!("rank {r} needs {} free coefficients, got {}", r - 1, lower.len()),
            ));
        }
        if !(lambda > 0.0) {
            return Err(Error::invalid("curve", "Lambda must be positive"));
        }
        Ok(SWCurve {
            r,
            lower,
            lambda,
            bands: OnceLock::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Free lower coefficients (c_0, ..., c_{r-2}).
    pub fn lower_coeffs(&self) -> &[f64] {
        &self.lower
    }

    /// Full ascending coefficient list of P: (c_0, ..., c_{r-2}, 0, 1).
    pub fn full_coeffs(&self) -> Vec<f64> {
        let mut c = self.lower.clone();
        c.push(0.0);
        c.push(1.0);
        c
    }

    pub fn eval(&self, z: f64) -> f64 {
        let mut p = 1.0;
        p = p * z + 0.0;
        for &c in self.lower.iter().rev() {
            p = p * z + c;
        }
        p
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut p = Complex64::new(1.0, 0.0);
        p = p * z;
        for &c in self.lower.iter().rev() {
            p = p * z + c;
        }
        p
    }

    pub fn eval_deriv(&self, z: f64) -> f64 {
        let coeffs = self.full_coeffs();
        let mut dp = 0.0;
        let mut p = 0.0;
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        dp
    }

    /// 2 Lambda^r, the band-edge level of P.
    pub fn two_lambda_r(&self) -> f64 {
        2.0 * self.lambda.powi(self.r as i32)
    }

    /// Cached band/gap structure; errors if the curve is not maximal.
    pub fn band_structure(&self) -> Result<&BandGapStructure> {
        self.bands
            .get_or_init(|| compute_band_gap(self))
            .as_ref()
            .map_err(|e| e.clone())
    }
}

/// Solve P(z) = +-2 Lambda^r; maximal curves give 2r real distinct roots
/// interleaved into r bands.
pub fn band_gap(curve: &SWCurve) -> Result<BandGapStructure> {
    curve.band_structure().cloned()
}

fn compute_band_gap(curve: &SWCurve) -> std::result::Result<BandGapStructure, Error> {
    let level = curve.two_lambda_r();
    let mut endpoints = Vec::with_capacity(2 * curve.rank());
    for &sign in &[1.0f64, -1.0] {
        let mut coeffs = curve.full_coeffs();
        coeffs[0] -= sign * level;
        let complex = real_coeff_roots(&coeffs);
        let scale = complex.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        let mut real = Vec::new();
        for z in &complex {
            if z.im.abs() <= 1e-9 * scale {
                real.push(z.re);
            }
        }
        if real.len() != curve.rank() {
            return Err(Error::NotMaximal(format!(
                "P(z) = {}2 Lambda^r has {} real roots out of {} (roots {:?})",
                if sign > 0.0 { "+" } else { "-" },
                real.len(),
                curve.rank(),
                complex
            )));
        }
        endpoints.extend(real);
    }
    endpoints.sort_by(f64::total_cmp);
    for w in endpoints.windows(2) {
        let scale = w[0].abs().max(w[1].abs()).max(1.0);
        if (w[1] - w[0]).abs() < 1e-9 * scale {
            return Err(Error::NotMaximal(format!(
                "coincident branch points near z = {}",
                w[0]
            )));
        }
    }
    let bands: Vec<(f64, f64)> = endpoints.chunks(2).map(|c| (c[0], c[1])).collect();
    let gaps: Vec<(f64, f64)> = bands.windows(2).map(|w| (w[0].1, w[1].0)).collect();
    Ok(BandGapStructure {
        band_endpoints: endpoints,
        bands,
        gaps,
    })
}

/// The branch of Lambda^r (w + 1/w) = P(z) with |w| <= 1, continuous on
/// C minus the bands, with boundary values from above on the bands.
///
/// Uses w = (P - S)/(2 Lambda^r) with S = prod_j sqrt(z - e_j) (principal
/// square roots), switching to 2 Lambda^r/(P + S) where that is stabler;
/// (P - S)(P + S) = 4 Lambda^{2r} makes the two forms exact reciprocals.
pub fn w_branch(z: Complex64, curve: &SWCurve) -> Result<Complex64> {
    let bg = curve.band_structure()?;
    // On the real axis inside a band take the limit from above.
    let z = if z.im == 0.0 { Complex64::new(z.re, 0.0) } else { z };
    let mut s = Complex64::new(1.0, 0.0);
    for &e in &bg.band_endpoints {
        s *= (z - e).sqrt();
    }
    let p = curve.eval_complex(z);
    let two_lr = curve.two_lambda_r();
    let small = p - s;
    let large = p + s;
    if large.norm() >= small.norm() {
        Ok(Complex64::new(two_lr, 0.0) / large)
    } else {
        Ok(small / two_lr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_band_is_minus_two_two() {
        let c = SWCurve::new(1, vec![], 1.0).unwrap();
        let bg = band_gap(&c).unwrap();
        assert_eq!(bg.bands.len(), 1);
        assert!((bg.bands[0].0 + 2.0).abs() < 1e-12);
        assert!((bg.bands[0].1 - 2.0).abs() < 1e-12);
        assert!(bg.gaps.is_empty());
    }

    #[test]
    fn figure_two_curve_is_maximal_with_three_bands() {
        // P = z^3 - 3.5 z, Lambda = 1
        let c = SWCurve::new(3, vec![0.0, -3.5], 1.0).unwrap();
        let bg = band_gap(&c).unwrap();
        assert_eq!(bg.band_endpoints.len(), 6);
        assert_eq!(bg.bands.len(), 3);
        assert_eq!(bg.gaps.len(), 2);
        // endpoints are genuine roots of P -+ 2
        for &e in &bg.band_endpoints {
            let v = c.eval(e);
            assert!((v.abs() - 2.0).abs() < 1e-9, "P({e}) = {v}");
        }
    }

    #[test]
    fn rank_two_pure_square_is_not_maximal() {
        // P = z^2: P = -2 has no real roots
        let c = SWCurve::new(2, vec![0.0], 1.0).unwrap();
        assert!(matches!(band_gap(&c), Err(Error::NotMaximal(_))));
    }

    #[test]
    fn branch_asymptotics_and_quadratic_value() {
        let c = SWCurve::new(1, vec![], 1.0).unwrap();
        // z -> infinity: w ~ Lambda^r / P(z)
        let z = Complex64::new(1e3, 0.0);
        let w = w_branch(z, &c).unwrap();
        assert!((w * c.eval_complex(z) - 1.0).norm() < 1e-2);
        // z = 2.5: w = (2.5 - sqrt(2.25))/2 = 0.5
        let w = w_branch(Complex64::new(2.5, 0.0), &c).unwrap();
        assert!((w - 0.5).norm() < 1e-12);
    }

    #[test]
    fn unit_modulus_on_bands_and_conjugation() {
        let c = SWCurve::new(3, vec![0.0, -3.5], 1.0).unwrap();
        let bg = band_gap(&c).unwrap();
        for &(lo, hi) in &bg.bands {
            for k in 1..8 {
                let x = lo + (hi - lo) * k as f64 / 8.0;
                let w = w_branch(Complex64::new(x, 0.0), &c).unwrap();
                assert!(
                    (w.norm() - 1.0).abs() < 1e-12,
                    "|w({x})| = {} off band-modulus",
                    w.norm()
                );
            }
        }
        // w(conj z) = conj w(z) off the real axis
        let z = Complex64::new(0.4, 0.9);
        let w1 = w_branch(z, &c).unwrap();
        let w2 = w_branch(z.conj(), &c).unwrap();
        assert!((w1.conj() - w2).norm() < 1e-13);
        // real and |w| < 1 on gaps
        for &(lo, hi) in &bg.gaps {
            let x = 0.5 * (lo + hi);
            let w = w_branch(Complex64::new(x, 0.0), &c).unwrap();
            assert!(w.im.abs() < 1e-12, "w not real on gap: {w}");
            assert!(w.norm() < 1.0);
        }
    }
}
