//! The prepotential F: path integration of the exact gradient relation
//! (d/da_i - d/da_{i+1}) F = -(a^v_i - a^v_{i+1}).
//!
//! F is defined by its derivatives; the additive constant comes from a
//! reference point deep in the large-separation regime, where
//! F ~ F_pert(a) = sum_{k != k'} [ D^2/2 ln(|D|/Lambda) - (3/4) D^2 ],
//! D = a_k - a_{k'}, with instanton corrections suppressed by
//! (Lambda/|D|)^{2r}.

use crate::error::{Error, Result};
use crate::numerics::quadrature::gauss_legendre;
use crate::swcurve::fit::fit_curve_from_a;
use crate::swcurve::periods::periods_a_dual;

/// Reference data for the additive normalization of F.
#[derive(Debug, Clone)]
pub struct PrepotentialContext {
    pub lambda: f64,
    pub reference_a: Vec<f64>,
    pub f_reference: f64,
}

impl PrepotentialContext {
    /// Anchor at a scaled-out copy of `shape` (an ascending, zero-sum
    /// direction), where the perturbative form is accurate.
    pub fn with_perturbative_reference(shape: &[f64], lambda: f64, scale: f64) -> Result<Self> {
        let reference_a: Vec<f64> = shape.iter().map(|x| x * scale).collect();
        let f_reference = perturbative_prepotential(&reference_a, lambda);
        Ok(PrepotentialContext {
            lambda,
            reference_a,
            f_reference,
        })
    }
}

/// The large-|a| perturbative prepotential.
pub fn perturbative_prepotential(a: &[f64], lambda: f64) -> f64 {
    let mut acc = 0.0;
    for k in 0..a.len() {
        for kp in 0..a.len() {
            if k == kp {
                continue;
            }
            let d = a[k] - a[kp];
            acc += 0.5 * d * d * (d.abs() / lambda).ln() - 0.75 * d * d;
        }
    }
    acc
}

/// -<a_dual(a(t)), da/dt> integrated along the straight path from the
/// reference to `a_target`, warm-starting each curve fit at the previous
/// node's coefficients.
pub fn prepotential(ctx: &PrepotentialContext, a_target: &[f64]) -> Result<f64> {
    if a_target.len() != ctx.reference_a.len() {
        return Err(Error::invalid("prepotential", "rank mismatch with reference"));
    }
    let dir: Vec<f64> = a_target
        .iter()
        .zip(ctx.reference_a.iter())
        .map(|(t, r)| t - r)
        .collect();
    // two-panel Gauss-Legendre with doubling as a convergence check
    let value32 = path_integral(ctx, a_target, &dir, 32)?;
    let value48 = path_integral(ctx, a_target, &dir, 48)?;
    if (value48 - value32).abs() > 1e-6 * (1.0 + value48.abs()) {
        return Err(Error::QuadratureDiverged {
            residual: (value48 - value32).abs(),
            tol: 1e-6,
        });
    }
    Ok(ctx.f_reference + value48)
}

fn path_integral(
    ctx: &PrepotentialContext,
    _a_target: &[f64],
    dir: &[f64],
    nodes: usize,
) -> Result<f64> {
    let gl = gauss_legendre(nodes);
    // Gauss nodes sorted ascending in t for the warm start to help.
    let mut ts: Vec<(f64, f64)> = gl
        .iter()
        .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect();
    ts.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut acc = 0.0;
    for &(t, w) in &ts {
        let a_t: Vec<f64> = ctx
            .reference_a
            .iter()
            .zip(dir.iter())
            .map(|(r, d)| r + t * d)
            .collect();
        let curve = fit_curve_from_a(&a_t, ctx.lambda).map_err(|e| {
            Error::OutsideChamber(format!("path point t={t}: {e}"))
        })?;
        let ad = periods_a_dual(&curve)?.values;
        let integrand: f64 = -ad.iter().zip(dir.iter()).map(|(x, y)| x * y).sum::<f64>();
        acc += w * integrand;
    }
    Ok(acc)
}

/// Hessian of F in the reduced coordinates u_i along e_i - e_{i+1}:
/// H[i][j] = - d(a^v_i - a^v_{i+1}) / du_j by central differences,
/// symmetrized; the raw asymmetry is reported.
pub fn prepotential_hessian(a: &[f64], lambda: f64) -> Result<(Vec<Vec<f64>>, f64)> {
    let r = a.len();
    if r < 2 {
        return Ok((Vec::new(), 0.0));
    }
    let m = r - 1;
    let h = 1e-5 * (1.0 + a.iter().fold(0.0f64, |s, x| s.max(x.abs())));
    let dual_diffs = |a: &[f64]| -> Result<Vec<f64>> {
        let c = fit_curve_from_a(a, lambda)?;
        let ad = periods_a_dual(&c)?.values;
        Ok((0..m).map(|i| ad[i] - ad[i + 1]).collect())
    };
    let mut hess = vec![vec![0.0; m]; m];
    for j in 0..m {
        let mut ap = a.to_vec();
        ap[j] += h;
        ap[j + 1] -= h;
        let mut am = a.to_vec();
        am[j] -= h;
        am[j + 1] += h;
        let gp = dual_diffs(&ap)?;
        let gm = dual_diffs(&am)?;
        for i in 0..m {
            hess[i][j] = -(gp[i] - gm[i]) / (2.0 * h);
        }
    }
    let mut asym = 0.0f64;
    for i in 0..m {
        for j in 0..i {
            asym = asym.max((hess[i][j] - hess[j][i]).abs());
            let s = 0.5 * (hess[i][j] + hess[j][i]);
            hess[i][j] = s;
            hess[j][i] = s;
        }
    }
    Ok((hess, asym))
}

/// Positive-definiteness via Cholesky pivots.
pub fn is_positive_definite(h: &[Vec<f64>]) -> bool {
    let n = h.len();
    let mut m: Vec<Vec<f64>> = h.to_vec();
    for k in 0..n {
        if m[k][k] <= 0.0 {
            return false;
        }
        let d = m[k][k].sqrt();
        for j in k..n {
            m[k][j] /= d;
        }
        for i in k + 1..n {
            let f = m[k][i];
            for j in i..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swcurve::curve::SWCurve;

    fn fig2_a() -> Vec<f64> {
        let c = SWCurve::new(3, vec![0.0, -3.5], 1.0).unwrap();
        crate::swcurve::periods::periods_a(&c).unwrap().values
    }

    #[test]
    fn hessian_symmetric_and_positive_definite_at_figure_curve() {
        let a = fig2_a();
        let (h, asym) = prepotential_hessian(&a, 1.0).unwrap();
        assert!(asym <= 1e-6, "Hessian asymmetry {asym}");
        assert!(is_positive_definite(&h), "Hessian {h:?}");
    }

    #[test]
    fn path_independence_between_homotopic_paths() {
        // integrate to the same endpoint through two different references
        let a = fig2_a();
        let shape: Vec<f64> = vec![-1.0, 0.0, 1.0];
        let ctx1 = PrepotentialContext::with_perturbative_reference(&shape, 1.0, 40.0).unwrap();
        let f1 = prepotential(&ctx1, &a).unwrap();
        // a bent path: go to an intermediate chamber point, then onward
        let mid: Vec<f64> = vec![-25.0, -5.0, 30.0];
        let ctx_mid = PrepotentialContext {
            lambda: 1.0,
            reference_a: ctx1.reference_a.clone(),
            f_reference: ctx1.f_reference,
        };
        let f_mid = prepotential(&ctx_mid, &mid).unwrap();
        let ctx2 = PrepotentialContext {
            lambda: 1.0,
            reference_a: mid,
            f_reference: f_mid,
        };
        let f2 = prepotential(&ctx2, &a).unwrap();
        assert!(
            (f1 - f2).abs() <= 1e-7 * (1.0 + f1.abs()),
            "path dependence: {f1} vs {f2}"
        );
    }

    #[test]
    fn perturbative_anchor_consistency() {
        // Moving the anchor farther out changes F by less than the first
        // instanton correction's order of magnitude.
        let a = fig2_a();
        let shape: Vec<f64> = vec![-1.0, 0.0, 1.0];
        let c40 = PrepotentialContext::with_perturbative_reference(&shape, 1.0, 40.0).unwrap();
        let c60 = PrepotentialContext::with_perturbative_reference(&shape, 1.0, 60.0).unwrap();
        let f40 = prepotential(&c40, &a).unwrap();
        let f60 = prepotential(&c60, &a).unwrap();
        assert!(
            (f40 - f60).abs() < 5e-5 * (1.0 + f40.abs()),
            "anchor drift {f40} vs {f60}"
        );
    }
}
