//! The convex piecewise-linear surface tension sigma and its action.

use crate::error::{Error, Result};
use crate::partitions::{PeriodicPotential, ProfileFunction};

/// sigma is linear with slope xi_i (sorted ascending) on the i-th segment of
/// length 2/r covering [-1, 1]; the additive constant is fixed by
/// sigma(-1) = 0. Mean-zero xi makes sigma(+1) = 0 as well, so the action
/// localizes on the support of psi - |x|.
#[derive(Debug, Clone)]
pub struct SurfaceTension {
    pub r: usize,
    xi_sorted: Vec<f64>,
}

impl SurfaceTension {
    pub fn new(v: &PeriodicPotential) -> Self {
        let mut xi_sorted = v.xi.clone();
        xi_sorted.sort_by(f64::total_cmp);
        SurfaceTension { r: v.r, xi_sorted }
    }

    pub fn slopes(&self) -> &[f64] {
        &self.xi_sorted
    }

    /// Breakpoint slopes of sigma' (interior kinks): -1 + 2i/r, i = 1..r-1.
    pub fn kink_positions(&self) -> Vec<f64> {
        (1..self.r)
            .map(|i| -1.0 + 2.0 * i as f64 / self.r as f64)
            .collect()
    }
}

/// sigma(s) for s in [-1, 1].
pub fn surface_tension(slope: f64, s: &SurfaceTension) -> Result<f64> {
    if !((-1.0 - 1e-12)..=(1.0 + 1e-12)).contains(&slope) {
        return Err(Error::SlopeOutOfRange {
            slope,
            domain: "[-1, 1]",
        });
    }
    let slope = slope.clamp(-1.0, 1.0);
    let r = s.r as f64;
    let seg_len = 2.0 / r;
    let mut acc = 0.0;
    let mut left = -1.0;
    for (i, &xi) in s.xi_sorted.iter().enumerate() {
        let right = -1.0 + seg_len * (i as f64 + 1.0);
        if slope <= right || i + 1 == s.xi_sorted.len() {
            return Ok(acc + xi * (slope - left));
        }
        acc += xi * (right - left);
        left = right;
    }
    Ok(acc)
}

/// S_surf(psi) = (1/2) int sigma(psi'(t)) dt, exact on the piecewise-linear
/// profile (the integrand is constant on each cell; outside the breakpoint
/// range sigma(+-1) = 0).
pub fn action_surf(psi: &ProfileFunction, s: &SurfaceTension) -> Result<f64> {
    let bps = psi.breakpoints();
    if bps.is_empty() {
        return Ok(0.0);
    }
    let mut acc = 0.0;
    for (j, &slope) in psi.slopes().iter().enumerate() {
        acc += surface_tension(slope, s)? * (bps[j + 1] - bps[j]);
    }
    Ok(0.5 * acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_four_breakpoints_and_kinks() {
        // r=4, xi = {-4/3, -2/3, 1/2, 3/2}: sigma' jumps at slopes
        // -1/2, 0, 1/2 by xi_{i+1} - xi_i.
        let v = PeriodicPotential::new(vec![-4.0 / 3.0, -2.0 / 3.0, 0.5, 1.5]).unwrap();
        let s = SurfaceTension::new(&v);
        assert_eq!(s.kink_positions(), vec![-0.5, 0.0, 0.5]);
        let eps = 1e-9;
        for (k, &pos) in s.kink_positions().iter().enumerate() {
            let left = (surface_tension(pos, &s).unwrap()
                - surface_tension(pos - eps, &s).unwrap())
                / eps;
            let right = (surface_tension(pos + eps, &s).unwrap()
                - surface_tension(pos, &s).unwrap())
                / eps;
            let jump = right - left;
            let expect = s.slopes()[k + 1] - s.slopes()[k];
            assert!(
                (jump - expect).abs() < 1e-5,
                "kink {k}: jump {jump} vs {expect}"
            );
        }
        // mean-zero makes sigma vanish at both ends
        assert_eq!(surface_tension(-1.0, &s).unwrap(), 0.0);
        assert!(surface_tension(1.0, &s).unwrap().abs() < 1e-15);
    }

    #[test]
    fn rank_one_sigma_is_linear_zero() {
        let v = PeriodicPotential::zero(1);
        let s = SurfaceTension::new(&v);
        for &x in &[-1.0, -0.3, 0.6, 1.0] {
            assert_eq!(surface_tension(x, &s).unwrap(), 0.0);
        }
    }

    #[test]
    fn convexity_for_sorted_slopes() {
        let v = PeriodicPotential::new(vec![0.9, -0.4, -0.5]).unwrap();
        let s = SurfaceTension::new(&v);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..30 {
            let x0 = -1.0 + 2.0 * k as f64 / 30.0;
            let x1 = -1.0 + 2.0 * (k + 1) as f64 / 30.0;
            let d = (surface_tension(x1, &s).unwrap() - surface_tension(x0, &s).unwrap())
                / (x1 - x0);
            assert!(d >= prev - 1e-12, "sigma' decreasing");
            prev = d;
        }
    }

    #[test]
    fn out_of_range_slope_rejected() {
        let v = PeriodicPotential::zero(2);
        let s = SurfaceTension::new(&v);
        assert!(matches!(
            surface_tension(1.5, &s),
            Err(Error::SlopeOutOfRange { .. })
        ));
    }
}
