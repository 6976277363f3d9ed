//! Legendre duality between the prepotential and the dual free energy:
//! F-dual(xi) = S(psi-star) = min_a [ F(a)/r^2 - (xi, a)/r ].

use crate::error::{Error, Result};
use crate::limitshape::action::action_plancherel;
use crate::limitshape::phi::gap_im_phi_integrals;
use crate::limitshape::psi::psi_star;
use crate::limitshape::tension::{action_surf, SurfaceTension};
use crate::partitions::PeriodicPotential;
use crate::swcurve::{
    fit_curve_from_xi, periods_a, prepotential, PrepotentialContext, SWCurve,
};

/// xi from the gap integrals xi_{i+1} - xi_i = pi int_{gap i} Im Phi dx,
/// assembled mean-zero. For a maximal curve this must equal -a_dual / r.
pub fn xi_from_gaps(curve: &SWCurve) -> Result<PeriodicPotential> {
    let r = curve.rank();
    let diffs = gap_im_phi_integrals(curve)?;
    let mut xi = vec![0.0; r];
    for i in 1..r {
        xi[i] = xi[i - 1] + diffs[i - 1];
    }
    let mean = xi.iter().sum::<f64>() / r as f64;
    for v in xi.iter_mut() {
        *v -= mean;
    }
    PeriodicPotential::new(xi)
}

/// The total action S(psi) = S_pl + S_surf of the minimizer for xi.
pub fn minimizer_action(xi: &[f64], lambda: f64, grid_per_band: usize) -> Result<f64> {
    let curve = fit_curve_from_xi(xi, lambda)?;
    let psi = psi_star(&curve, grid_per_band)?;
    let v = PeriodicPotential::new(xi.to_vec())?;
    let tension = SurfaceTension::new(&v);
    Ok(action_plancherel(&psi.profile, lambda)? + action_surf(&psi.profile, &tension)?)
}

/// Report of the two-route Legendre check.
#[derive(Debug, Clone)]
pub struct LegendreReport {
    /// Route (i): total action of the conformal-map minimizer.
    pub f_dual_action: f64,
    /// Route (ii): grid minimum of F(a)/r^2 - (xi, a)/r.
    pub f_dual_min: f64,
    /// |route difference| / (1 + |route i|).
    pub gap: f64,
    /// Max relative error of the gradient identity
    /// -(d/dxi_i - d/dxi_{i+1}) F-dual = (a_i - a_{i+1})/r.
    pub gradient_identity_err: f64,
    /// Sampled concavity of F-dual in xi (reduced Hessian negative definite).
    pub concave: bool,
    /// Location of the grid minimum in reduced offsets.
    pub min_offsets: Vec<i32>,
}

pub struct LegendreOptions {
    pub grid_per_band: usize,
    pub grid_halfwidth: f64,
    pub grid_points_per_dim: i32,
    pub reference_scale: f64,
    pub fd_step: f64,
}

impl Default for LegendreOptions {
    fn default() -> Self {
        LegendreOptions {
            grid_per_band: 1200,
            grid_halfwidth: 0.12,
            grid_points_per_dim: 2,
            reference_scale: 40.0,
            fd_step: 2e-3,
        }
    }
}

pub fn legendre_check(xi: &[f64], lambda: f64, opts: &LegendreOptions) -> Result<LegendreReport> {
    let r = xi.len();
    if r < 2 {
        return Err(Error::invalid("legendre check", "rank must be >= 2"));
    }
    // Route (i): the minimizer's action.
    let curve = fit_curve_from_xi(xi, lambda)?;
    let f_action = minimizer_action(xi, lambda, opts.grid_per_band)?;

    // Route (ii): grid minimum of F(a)/r^2 - (xi, a)/r around the predicted
    // minimizer a-star = periods_a(curve).
    let a_star = periods_a(&curve)?.values;
    let shape: Vec<f64> = (0..r)
        .map(|i| i as f64 - 0.5 * (r as f64 - 1.0))
        .collect();
    let ctx = PrepotentialContext::with_perturbative_reference(&shape, lambda, opts.reference_scale)?;
    let rr = r as f64;
    let objective = |a: &[f64]| -> Result<f64> {
        let f = prepotential(&ctx, a)?;
        let dot: f64 = xi.iter().zip(a.iter()).map(|(x, y)| x * y).sum();
        Ok(f / (rr * rr) - dot / rr)
    };
    let m = opts.grid_points_per_dim;
    let h = opts.grid_halfwidth;
    let dims = r - 1;
    let mut best = (f64::INFINITY, vec![0i32; dims]);
    let mut offsets = vec![-m; dims];
    loop {
        // reduced offsets along e_i - e_{i+1}
        let mut a = a_star.clone();
        for (i, &o) in offsets.iter().enumerate() {
            let d = o as f64 * h / m as f64;
            a[i] += d;
            a[i + 1] -= d;
        }
        if a.windows(2).all(|w| w[0] < w[1]) {
            if let Ok(v) = objective(&a) {
                if v < best.0 {
                    best = (v, offsets.clone());
                }
            }
        }
        // advance odometer
        let mut k = 0;
        loop {
            if k == dims {
                break;
            }
            offsets[k] += 1;
            if offsets[k] <= m {
                break;
            }
            offsets[k] = -m;
            k += 1;
        }
        if k == dims {
            break;
        }
    }
    if best.1.iter().any(|&o| o.abs() == m) {
        return Err(Error::GridMinimumOnBoundary(format!(
            "minimum at offsets {:?} of {m}",
            best.1
        )));
    }

    // Gradient identity by finite differences of route (i) in xi.
    let mut grad_err = 0.0f64;
    for i in 0..r - 1 {
        let mut xp = xi.to_vec();
        xp[i] += opts.fd_step;
        xp[i + 1] -= opts.fd_step;
        let mut xm = xi.to_vec();
        xm[i] -= opts.fd_step;
        xm[i + 1] += opts.fd_step;
        let fp = minimizer_action(&xp, lambda, opts.grid_per_band)?;
        let fm = minimizer_action(&xm, lambda, opts.grid_per_band)?;
        let lhs = -(fp - fm) / (2.0 * opts.fd_step);
        let rhs = (a_star[i] - a_star[i + 1]) / rr;
        grad_err = grad_err.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
    }

    // Concavity: reduced FD Hessian of route (i), negative definite.
    let concave = {
        let n = r - 1;
        let h2 = opts.fd_step;
        let f0 = f_action;
        let mut hess = vec![vec![0.0; n]; n];
        let eval = |deltas: &[(usize, f64)]| -> Result<f64> {
            let mut x = xi.to_vec();
            for &(i, d) in deltas {
                x[i] += d;
                x[i + 1] -= d;
            }
            minimizer_action(&x, lambda, opts.grid_per_band)
        };
        let mut ok = true;
        'outer: for i in 0..n {
            for j in i..n {
                let v = if i == j {
                    let fp = eval(&[(i, h2)])?;
                    let fm = eval(&[(i, -h2)])?;
                    (fp - 2.0 * f0 + fm) / (h2 * h2)
                } else {
                    let fpp = eval(&[(i, h2), (j, h2)])?;
                    let fpm = eval(&[(i, h2), (j, -h2)])?;
                    let fmp = eval(&[(i, -h2), (j, h2)])?;
                    let fmm = eval(&[(i, -h2), (j, -h2)])?;
                    (fpp - fpm - fmp + fmm) / (4.0 * h2 * h2)
                };
                hess[i][j] = v;
                hess[j][i] = v;
                if !v.is_finite() {
                    ok = false;
                    break 'outer;
                }
            }
        }
        // negative definite <=> -H positive definite
        let neg: Vec<Vec<f64>> = hess
            .iter()
            .map(|row| row.iter().map(|v| -v).collect())
            .collect();
        ok && crate::swcurve::is_positive_definite(&neg)
    };

    Ok(LegendreReport {
        f_dual_action: f_action,
        f_dual_min: best.0,
        gap: (f_action - best.0).abs() / (1.0 + f_action.abs()),
        gradient_identity_err: grad_err,
        concave,
        min_offsets: best.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swcurve::periods_a_dual;

    #[test]
    fn xi_from_gaps_is_minus_a_dual_over_r() {
        let c = SWCurve::new(3, vec![0.0, -3.5], 1.0).unwrap();
        let xi = xi_from_gaps(&c).unwrap();
        let ad = periods_a_dual(&c).unwrap().values;
        for i in 0..3 {
            assert!(
                (xi.xi[i] + ad[i] / 3.0).abs() < 1e-6,
                "xi {:?} vs -a_dual/3 {:?}",
                xi.xi,
                ad
            );
        }
        // Im Phi > 0 on gaps makes xi strictly increasing
        assert!(xi.xi.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rank_one_has_no_gaps() {
        let c = SWCurve::new(1, vec![], 1.0).unwrap();
        let xi = xi_from_gaps(&c).unwrap();
        assert_eq!(xi.xi, vec![0.0]);
    }

    /// r=1 normalization chain: S_pl(arcsine minimizer) = -Lambda^2, the
    /// free energy of the rank-one theory.
    #[test]
    fn rank_one_action_is_minus_lambda_squared() {
        for &lambda in &[1.0, 0.6] {
            let c = SWCurve::new(1, vec![], lambda).unwrap();
            let psi = psi_star(&c, 4000).unwrap();
            let s = action_plancherel(&psi.profile, lambda).unwrap();
            assert!(
                (s + lambda * lambda).abs() < 1e-5,
                "S_pl = {s}, want {}",
                -lambda * lambda
            );
        }
    }

    /// Minimality probe: the arcsine shape beats random admissible
    /// perturbations.
    #[test]
    fn rank_one_minimality_probe() {
        use crate::partitions::ProfileFunction;
        let lambda = 1.0;
        let c = SWCurve::new(1, vec![], lambda).unwrap();
        let psi = psi_star(&c, 2000).unwrap();
        let s_star = action_plancherel(&psi.profile, lambda).unwrap();
        // deterministic xorshift
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for trial in 0..20 {
            // random tent perturbation of psi within the Lipschitz class
            let center = -1.5 + 3.0 * next();
            let width = 0.2 + 0.6 * next();
            let height = (0.02 + 0.2 * next()) * width / 2.0;
            let bps = vec![center - width, center, center + width];
            let base: Vec<f64> = bps.iter().map(|&x| psi.profile.eval(x)).collect();
            // piecewise linear bump added on top, slopes re-derived
            let vals = [base[0], base[1] + height, base[2]];
            let s0 = (vals[1] - vals[0]) / width;
            let s1 = (vals[2] - vals[1]) / width;
            if s0.abs() > 1.0 || s1.abs() > 1.0 {
                continue;
            }
            // merge the bump into the profile grid
            let mut new_bps = Vec::new();
            let mut new_slopes = Vec::new();
            let old = &psi.profile;
            let obps = old.breakpoints();
            new_bps.push(obps[0]);
            let mut x_prev = obps[0];
            let push_to = |x: f64,
                               new_bps: &mut Vec<f64>,
                               new_slopes: &mut Vec<f64>,
                               x_prev: &mut f64,
                               eval: &dyn Fn(f64) -> f64| {
                if x > *x_prev + 1e-12 {
                    let v_prev = eval(*x_prev);
                    let v = eval(x);
                    new_slopes.push(((v - v_prev) / (x - *x_prev)).clamp(-1.0, 1.0));
                    new_bps.push(x);
                    *x_prev = x;
                }
            };
            let bump = |x: f64| -> f64 {
                let base = old.eval(x);
                if x <= bps[0] || x >= bps[2] {
                    base
                } else if x <= bps[1] {
                    base + height * (x - bps[0]) / width
                } else {
                    base + height * (bps[2] - x) / width
                }
            };
            let mut merged: Vec<f64> = obps.to_vec();
            merged.extend_from_slice(&bps);
            merged.sort_by(f64::total_cmp);
            merged.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            for &x in merged.iter().skip_while(|&&x| x <= obps[0]) {
                push_to(x, &mut new_bps, &mut new_slopes, &mut x_prev, &bump);
            }
            let perturbed = match ProfileFunction::new(new_bps, new_slopes, 1e-6) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let s = action_plancherel(&perturbed, lambda).unwrap();
            assert!(
                s > s_star - 1e-9,
                "trial {trial}: perturbation lowered the action: {s} < {s_star}"
            );
        }
    }
}
