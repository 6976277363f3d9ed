//! The minimizer profile psi-star and its facet data.

use crate::error::{Error, Result};
use crate::limitshape::phi::psi_star_slope;
use crate::partitions::ProfileFunction;
use crate::swcurve::SWCurve;

/// psi-star together with the band/gap geometry it was built from.
#[derive(Debug, Clone)]
pub struct PsiStar {
    pub profile: ProfileFunction,
    pub bands: Vec<(f64, f64)>,
    pub gaps: Vec<(f64, f64)>,
    pub r: usize,
    /// |psi(e_max) - |e_max||: drift of the cumulative integration.
    pub closure_residual: f64,
}

/// Integrate psi' = Re Phi|_R into a piecewise-linear profile on a
/// cos-clustered grid with `grid_per_band` cells per band; gaps are exact
/// single facets of slope -1 + 2i/r.
pub fn psi_star(curve: &SWCurve, grid_per_band: usize) -> Result<PsiStar> {
    let bg = curve.band_structure()?;
    let r = curve.rank();
    let n = grid_per_band.max(16);
    let mut breakpoints: Vec<f64> = Vec::new();
    let mut slopes: Vec<f64> = Vec::new();
    let e_first = bg.band_endpoints[0];
    breakpoints.push(e_first);
    let mut value = e_first.abs();
    // Gauss nodes for the in-cell accumulation of psi
    let gl: [(f64, f64); 2] = [
        (-1.0 / 3.0f64.sqrt(), 1.0),
        (1.0 / 3.0f64.sqrt(), 1.0),
    ];
    for (b, &(lo, hi)) in bg.bands.iter().enumerate() {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        // phi from pi to 0 walks x from lo to hi with cos clustering; the
        // accumulation runs in phi, where psi'(x(phi)) h sin(phi) is smooth
        // (in x it has sqrt singularities at the band edges).
        let phis: Vec<f64> = (0..=n)
            .map(|k| std::f64::consts::PI * (1.0 - k as f64 / n as f64))
            .collect();
        for k in 0..n {
            let (pa, pb) = (phis[k], phis[k + 1]);
            let (xa, xb) = (mid + half * pa.cos(), mid + half * pb.cos());
            if xb <= xa {
                continue;
            }
            // increment of psi by 2-point Gauss in phi:
            // dx = -half sin(phi) dphi, and pa > pb
            let hw = 0.5 * (pb - pa);
            let pm = 0.5 * (pa + pb);
            let mut inc = 0.0;
            for &(t, w) in &gl {
                let phi = pm + hw * t;
                inc += w * psi_star_slope(mid + half * phi.cos(), curve)? * (-half * phi.sin());
            }
            inc *= hw;
            value += inc;
            slopes.push((inc / (xb - xa)).clamp(-1.0, 1.0));
            breakpoints.push(xb);
        }
        // facet over the following gap
        if b + 1 < bg.bands.len() {
            let (glo, ghi) = bg.gaps[b];
            let slope = -1.0 + 2.0 * (b + 1) as f64 / r as f64;
            value += slope * (ghi - glo);
            slopes.push(slope);
            breakpoints.push(ghi);
        }
    }
    let e_last = *bg.band_endpoints.last().unwrap();
    let closure_residual = (value - e_last.abs()).abs();
    let scale = e_last.abs().max(e_first.abs()).max(1.0);
    if closure_residual > 1e-7 * scale {
        return Err(Error::QuadratureDiverged {
            residual: closure_residual,
            tol: 1e-7 * scale,
        });
    }
    let profile = ProfileFunction::new(breakpoints, slopes, 1e-6 * scale)?;
    Ok(PsiStar {
        profile,
        bands: bg.bands.clone(),
        gaps: bg.gaps.clone(),
        r,
        closure_residual,
    })
}

/// Facet intercepts I_0..I_r and the Coulomb parameters they encode:
/// a_i = (r/2)(I_{i-1} - I_i). I_0 and I_r come from the outer |x| rays.
#[derive(Debug, Clone)]
pub struct FacetIntercepts {
    pub intercepts: Vec<f64>,
    pub a: Vec<f64>,
}

pub fn facet_intercepts(psi: &PsiStar) -> Result<FacetIntercepts> {
    let r = psi.r;
    let mut intercepts = vec![0.0; r + 1];
    // outer rays are y = -x and y = +x: intercept 0
    for (g, &(lo, hi)) in psi.gaps.iter().enumerate() {
        let width = hi - lo;
        if width < 1e-8 {
            return Err(Error::FacetTooShort {
                index: g + 1,
                length: width,
            });
        }
        let slope = -1.0 + 2.0 * (g + 1) as f64 / r as f64;
        let x = 0.5 * (lo + hi);
        intercepts[g + 1] = psi.profile.eval(x) - slope * x;
    }
    let a: Vec<f64> = (1..=r)
        .map(|i| 0.5 * r as f64 * (intercepts[i - 1] - intercepts[i]))
        .collect();
    Ok(FacetIntercepts { intercepts, a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swcurve::periods_a;

    /// r=1: psi'(x) = (2/pi) arcsin(x / 2 Lambda), and psi is the classical
    /// arcsine-law shape (2/pi)(x arcsin(x/2L) + sqrt(4L^2 - x^2)).
    #[test]
    fn rank_one_is_the_arcsine_shape() {
        let lambda = 0.8;
        let c = SWCurve::new(1, vec![], lambda).unwrap();
        let psi = psi_star(&c, 4000).unwrap();
        assert!(psi.closure_residual < 1e-9);
        // slope matches the arcsine law at arbitrary points (closed form)
        for k in 0..=40 {
            let x = -2.0 * lambda + 4.0 * lambda * k as f64 / 40.0;
            let slope = psi_star_slope(x, &c).unwrap();
            let expect = (2.0 / std::f64::consts::PI) * (x / (2.0 * lambda)).asin();
            assert!(
                (slope - expect).abs() < 1e-12,
                "slope at {x}: {slope} vs {expect}"
            );
        }
        // the accumulated profile matches the closed form at its own nodes
        for &x in psi.profile.breakpoints().iter().step_by(37) {
            let val = psi.profile.eval(x);
            let closed = (2.0 / std::f64::consts::PI)
                * (x * (x / (2.0 * lambda)).asin()
                    + (4.0 * lambda * lambda - x * x).max(0.0).sqrt());
            assert!(
                (val - closed).abs() < 1e-8,
                "psi at {x}: {val} vs {closed}"
            );
        }
        // outside the band the profile is |x|
        assert_eq!(psi.profile.eval(2.5 * lambda), 2.5 * lambda);
    }

    #[test]
    fn slope_is_lipschitz_and_facets_exact() {
        let c = SWCurve::new(3, vec![0.0, -3.5], 1.0).unwrap();
        let psi = psi_star(&c, 600).unwrap();
        for s in psi.profile.slopes() {
            assert!(s.abs() <= 1.0);
        }
        for (g, &(lo, hi)) in psi.gaps.iter().enumerate() {
            let x = 0.5 * (lo + hi);
            let expect = -1.0 + 2.0 * (g + 1) as f64 / 3.0;
            assert!((psi.profile.deriv(x) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn intercepts_recover_periods() {
        let c = SWCurve::new(3, vec![0.0, -3.5], 1.0).unwrap();
        let psi = psi_star(&c, 2000).unwrap();
        let fi = facet_intercepts(&psi).unwrap();
        let a = periods_a(&c).unwrap().values;
        for (x, y) in fi.a.iter().zip(a.iter()) {
            assert!((x - y).abs() < 1e-5, "intercept a {:?} vs periods {:?}", fi.a, a);
        }
        // ascending order: the A-chamber convention
        assert!(fi.a.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rank_one_trivial_intercepts() {
        let c = SWCurve::new(1, vec![], 1.0).unwrap();
        let psi = psi_star(&c, 256).unwrap();
        let fi = facet_intercepts(&psi).unwrap();
        assert_eq!(fi.intercepts, vec![0.0, 0.0]);
        assert_eq!(fi.a, vec![0.0]);
    }
}
