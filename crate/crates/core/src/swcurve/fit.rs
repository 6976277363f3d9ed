//! Inverse period maps: Newton iteration on the free coefficients of P.

use crate::error::{Error, Result};
use crate::swcurve::curve::SWCurve;
use crate::swcurve::periods::{dual_differences, periods_a};

/// Solve periods_a(C) = a_target for the r-1 free coefficients of P.
///
/// `a_target` must lie in the interior of the negative chamber
/// (strictly ascending, sum zero). Initial guess: P = prod (z - a_i);
/// near the chamber boundary, where that curve stops being maximal, a
/// homotopy from a well-separated equal-band curve takes over.
pub fn fit_curve_from_a(a_target: &[f64], lambda: f64) -> Result<SWCurve> {
    let r = a_target.len();
    validate_chamber(a_target, "a", true)?;
    if r == 1 {
        return SWCurve::new(1, vec![], lambda);
    }
    // match the first r-1 periods; the last is determined by the zero sum
    let solve_for = |t: &[f64], init: Vec<f64>| -> Result<SWCurve> {
        let t = t[..r - 1].to_vec();
        newton_fit(init, lambda, &move |c: &SWCurve| {
            let p = periods_a(c)?;
            Ok((0..t.len()).map(|i| p.values[i] - t[i]).collect())
        })
    };
    let init = poly_from_roots_lower(a_target);
    match solve_for(a_target, init) {
        Ok(c) => Ok(c),
        Err(first_err) => {
            let start = chebyshev_lower(r, lambda);
            let c0 = SWCurve::new(r, start.clone(), lambda)?;
            let a0 = periods_a(&c0)?.values;
            let mut current = start;
            let steps = 8;
            for s in 1..=steps {
                let t: Vec<f64> = (0..r)
                    .map(|i| a0[i] + (a_target[i] - a0[i]) * s as f64 / steps as f64)
                    .collect();
                match solve_for(&t, current.clone()) {
                    Ok(c) => current = c.lower_coeffs().to_vec(),
                    Err(_) => return Err(first_err),
                }
            }
            SWCurve::new(r, current, lambda)
        }
    }
}

/// Solve the dual period map for xi: a_dual(C) = -r xi, i.e. the gap
/// integrals must equal r (xi_{i+1} - xi_i).
///
/// `xi` must lie in the interior of the negative chamber. Initial guess:
/// the equal-band (Chebyshev) curve, with a homotopy fallback for targets
/// far from it.
pub fn fit_curve_from_xi(xi: &[f64], lambda: f64) -> Result<SWCurve> {
    let r = xi.len();
    validate_chamber(xi, "xi", true)?;
    if r == 1 {
        return SWCurve::new(1, vec![], lambda);
    }
    let target: Vec<f64> = (0..r - 1)
        .map(|i| r as f64 * (xi[i + 1] - xi[i]))
        .collect();
    let start = chebyshev_lower(r, lambda);
    let solve_for = |t: &[f64], init: Vec<f64>| -> Result<SWCurve> {
        let t = t.to_vec();
        newton_fit(init, lambda, &move |c: &SWCurve| {
            let d = dual_differences(c)?;
            Ok((0..t.len()).map(|i| d[i] - t[i]).collect())
        })
    };
    match solve_for(&target, start.clone()) {
        Ok(c) => Ok(c),
        Err(first_err) => {
            // Homotopy from the Chebyshev curve's own gap integrals.
            let c0 = SWCurve::new(r, start.clone(), lambda)?;
            let d0 = dual_differences(&c0)?;
            let mut current = start;
            let steps = 8;
            for s in 1..=steps {
                let t: Vec<f64> = (0..r - 1)
                    .map(|i| d0[i] + (target[i] - d0[i]) * s as f64 / steps as f64)
                    .collect();
                match solve_for(&t, current.clone()) {
                    Ok(c) => current = c.lower_coeffs().to_vec(),
                    Err(_) => return Err(first_err),
                }
            }
            SWCurve::new(r, current, lambda)
        }
    }
}

fn validate_chamber(v: &[f64], what: &'static str, ascending: bool) -> Result<()> {
    if v.is_empty() {
        return Err(Error::invalid("chamber point", "empty vector"));
    }
    let scale = v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let sum: f64 = v.iter().sum();
    if sum.abs() > 1e-9 * scale {
        return Err(Error::OutsideChamber(format!(
            "{what} does not sum to zero (sum {sum})"
        )));
    }
    if ascending && v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::OutsideChamber(format!(
            "{what} not strictly ascending: {v:?}"
        )));
    }
    Ok(())
}

/// Lower coefficients of prod (z - root), with the subleading coefficient
/// dropped (it vanishes because the roots sum to zero).
fn poly_from_roots_lower(roots: &[f64]) -> Vec<f64> {
    let r = roots.len();
    let mut coeffs = vec![0.0; r + 1];
    coeffs[0] = 1.0;
    let mut deg = 0;
    for &root in roots {
        for k in (0..=deg).rev() {
            coeffs[k + 1] += coeffs[k];
            coeffs[k] *= -root;
        }
        deg += 1;
    }
    // coeffs is ascending (c_0, ..., c_r); keep the r-1 lower ones
    coeffs.truncate(r - 1);
    coeffs
}

/// Lower coefficients of a well-separated equal-band curve: the Chebyshev
/// curve 2 L'^r T_r(z / 2 L') at an inflated scale L' = 1.2 Lambda, so its
/// critical values clear the band level 2 Lambda^r with a margin. (At
/// L' = Lambda the band endpoints coincide: the chamber boundary itself.)
fn chebyshev_lower(r: usize, lambda: f64) -> Vec<f64> {
    // T recursion in ascending coefficient arrays
    let mut t0 = vec![1.0f64]; // T_0
    let mut t1 = vec![0.0, 1.0]; // T_1
    if r == 1 {
        return vec![];
    }
    for _ in 2..=r {
        let mut t2 = vec![0.0; t1.len() + 1];
        for (k, &c) in t1.iter().enumerate() {
            t2[k + 1] += 2.0 * c;
        }
        for (k, &c) in t0.iter().enumerate() {
            t2[k] -= c;
        }
        t0 = t1;
        t1 = t2;
    }
    let inflated = 1.2 * lambda;
    let scale = 2.0 * inflated;
    let lr = 2.0 * inflated.powi(r as i32);
    (0..r - 1)
        .map(|k| lr * t1[k] / scale.powi(k as i32))
        .collect()
}

/// Damped Newton with forward-difference Jacobian on the lower coefficients.
fn newton_fit(
    init: Vec<f64>,
    lambda: f64,
    residual: &dyn Fn(&SWCurve) -> Result<Vec<f64>>,
) -> Result<SWCurve> {
    let r = init.len() + 1;
    let mut coeffs = init;
    let mut best = (f64::INFINITY, coeffs.clone());
    let eval = |c: &[f64]| -> Result<Vec<f64>> {
        let curve = SWCurve::new(r, c.to_vec(), lambda)?;
        residual(&curve)
    };
    let mut res = eval(&coeffs).map_err(|e| Error::FitDiverged {
        why: format!("initial point invalid: {e}"),
        residual: f64::INFINITY,
    })?;
    for _ in 0..60 {
        let norm = res.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if norm < best.0 {
            best = (norm, coeffs.clone());
        }
        if norm < 1e-10 {
            return SWCurve::new(r, coeffs, lambda);
        }
        // forward-difference Jacobian
        let m = res.len();
        let mut jac = vec![vec![0.0; m]; m];
        for j in 0..m {
            let h = 1e-6 * (1.0 + coeffs[j].abs());
            let mut cj = coeffs.clone();
            cj[j] += h;
            let rj = match eval(&cj) {
                Ok(v) => v,
                Err(_) => {
                    let mut cj = coeffs.clone();
                    cj[j] -= h;
                    let rm = eval(&cj).map_err(|e| Error::FitDiverged {
                        why: format!("Jacobian column {j}: {e}"),
                        residual: best.0,
                    })?;
                    for i in 0..m {
                        jac[i][j] = (res[i] - rm[i]) / h;
                    }
                    continue;
                }
            };
            for i in 0..m {
                jac[i][j] = (rj[i] - res[i]) / h;
            }
        }
        let step = solve_dense(&mut jac, &res).ok_or(Error::FitDiverged {
            why: "singular Jacobian".into(),
            residual: best.0,
        })?;
        // damped update with maximality backtracking
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let trial: Vec<f64> = coeffs
                .iter()
                .zip(step.iter())
                .map(|(c, s)| c - t * s)
                .collect();
            match eval(&trial) {
                Ok(rt) => {
                    let nt = rt.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                    if nt < norm || t < 1e-3 {
                        coeffs = trial;
                        res = rt;
                        accepted = true;
                        break;
                    }
                }
                Err(_) => {}
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(Error::FitDiverged {
                why: "no acceptable damped step".into(),
                residual: best.0,
            });
        }
    }
    let norm = res.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if norm < 1e-8 {
        return SWCurve::new(r, coeffs, lambda);
    }
    Err(Error::FitDiverged {
        why: "iteration limit".into(),
        residual: best.0,
    })
}

/// Gaussian elimination with partial pivoting; None if singular.
fn solve_dense(a: &mut [Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        x.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            x[row] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        x[col] /= a[col][col];
        for row in 0..col {
            x[row] -= a[row][col] * x[col];
            a[row][col] = 0.0;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swcurve::periods::periods_a_dual;

    #[test]
    fn round_trip_figure_two_curve() {
        let c = SWCurve::new(3, vec![0.0, -3.5], 1.0).unwrap();
        let a = periods_a(&c).unwrap().values;
        let fitted = fit_curve_from_a(&a, 1.0).unwrap();
        for (x, y) in fitted.lower_coeffs().iter().zip(c.lower_coeffs()) {
            assert!((x - y).abs() < 1e-8, "{:?}", fitted.lower_coeffs());
        }
    }

    #[test]
    fn rank_two_symmetric_monotone_in_separation() {
        // a = (-A, A) maps to P = z^2 - u with u increasing in A.
        // The chamber boundary sits at A = 4/pi (u = 2 Lambda^2), so the
        // smallest value probes the fit near the edge of the region.
        let mut last_u = f64::NEG_INFINITY;
        for &a_half in &[1.3, 1.6, 2.2, 3.0] {
            let c = fit_curve_from_a(&[-a_half, a_half], 1.0).unwrap();
            let u = -c.lower_coeffs()[0];
            assert!(u > last_u, "u not monotone: {u} after {last_u}");
            last_u = u;
            let back = periods_a(&c).unwrap().values;
            assert!((back[1] - a_half).abs() < 1e-9);
        }
    }

    #[test]
    fn xi_fit_round_trip() {
        let c = SWCurve::new(3, vec![0.0, -3.5], 1.0).unwrap();
        let ad = periods_a_dual(&c).unwrap().values;
        let xi: Vec<f64> = ad.iter().map(|v| -v / 3.0).collect();
        let fitted = fit_curve_from_xi(&xi, 1.0).unwrap();
        for (x, y) in fitted.lower_coeffs().iter().zip(c.lower_coeffs()) {
            assert!(
                (x - y).abs() < 1e-7,
                "recovered {:?}",
                fitted.lower_coeffs()
            );
        }
    }

    #[test]
    fn chamber_violations_rejected() {
        assert!(matches!(
            fit_curve_from_a(&[1.0, -1.0], 1.0),
            Err(Error::OutsideChamber(_))
        ));
        assert!(matches!(
            fit_curve_from_xi(&[0.3, -0.3], 1.0),
            Err(Error::OutsideChamber(_))
        ));
        // xi identically zero is a chamber wall, not an interior point
        assert!(fit_curve_from_xi(&[0.0, 0.0], 1.0).is_err());
    }
}
