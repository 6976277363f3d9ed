//! Frozen-boundary tracing: the locus where the characteristic system
//! acquires a real double root in z.
//!
//! The trace runs arclength continuation on F(z, x, y) = (rho, d rho/dz) = 0
//! with rho the eliminated z-polynomial of the system. Generic boundary
//! points are double roots (square-root gradient approach, the 3/2 law for
//! the height); cusps are triple roots, where additionally d2 rho/dz2 = 0.

use crate::error::{Error, Result};
use crate::numerics::roots::real_coeff_roots;
use crate::stepped::burgers::{burgers_solve, z_system_poly, BurgersData, BurgersPoint};

/// A traced boundary component.
#[derive(Debug, Clone)]
pub struct FrozenBoundary {
    /// Boundary points in trace order.
    pub points: Vec<(f64, f64)>,
    /// The double root z at each point.
    pub z_values: Vec<f64>,
    /// Indices of detected cusps (triple roots).
    pub cusps: Vec<usize>,
    /// True when the trace closed into a loop.
    pub closed: bool,
    pub diagnostics: String,
}

fn eval_poly(c: &[f64], z: f64) -> f64 {
    let mut acc = 0.0;
    for &v in c.iter().rev() {
        acc = acc * z + v;
    }
    acc
}

fn poly_deriv(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &v)| k as f64 * v)
        .collect()
}

struct System<'a> {
    b: &'a BurgersData,
    /// Stable degree of the eliminated polynomial (fixed at the seed; the
    /// sampled array carries interpolation noise above it).
    degree: usize,
    /// Chart 1 works in z; chart 2 in the reciprocal coordinate 1/z, where
    /// the reversed polynomial zeta^d rho(1/zeta) is regular. The boundary
    /// lift passes through z = infinity wherever the leading coefficient
    /// vanishes (tangency lines of the dual curve), so both charts are
    /// needed to get around.
    chart: std::cell::Cell<u8>,
}

impl<'a> System<'a> {
    /// Normalized coefficients in the current chart, ascending.
    fn chart_coeffs(&self, x: f64, y: f64) -> Result<Vec<f64>> {
        let c = z_system_poly(self.b, x, y)?;
        let mut c: Vec<f64> = c.into_iter().take(self.degree + 1).collect();
        while c.len() < self.degree + 1 {
            c.push(0.0);
        }
        if self.chart.get() == 2 {
            c.reverse();
        }
        let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NoSolutions { x, y });
        }
        for v in c.iter_mut() {
            *v /= norm;
        }
        Ok(c)
    }

    /// (rho(t), rho'(t), rho''(t)) at (t, x, y) in the current chart.
    fn f(&self, t: f64, x: f64, y: f64) -> Result<(f64, f64, f64)> {
        let c = self.chart_coeffs(x, y)?;
        let d1 = poly_deriv(&c);
        let d2 = poly_deriv(&d1);
        Ok((eval_poly(&c, t), eval_poly(&d1, t), eval_poly(&d2, t)))
    }

    /// 2x3 Jacobian of (rho, rho') in (z, x, y) by central differences.
    fn jacobian(&self, z: f64, x: f64, y: f64, scale: f64) -> Result<[[f64; 3]; 2]> {
        let h = 1e-6 * (1.0 + scale);
        let mut jac = [[0.0; 3]; 2];
        let (_, d1, d2) = self.f(z, x, y)?;
        // z-derivatives are exact from the polynomial
        jac[0][0] = d1;
        jac[1][0] = d2;
        for (k, (dx, dy)) in [(h, 0.0), (0.0, h)].iter().enumerate() {
            let (fp0, fp1, _) = self.f(z, x + dx, y + dy)?;
            let (fm0, fm1, _) = self.f(z, x - dx, y - dy)?;
            jac[0][k + 1] = (fp0 - fm0) / (2.0 * h);
            jac[1][k + 1] = (fp1 - fm1) / (2.0 * h);
        }
        Ok(jac)
    }

    /// Least-squares Newton for (rho, rho') = 0; converges when the step
    /// stalls (scale-free thanks to the normalized polynomial).
    fn correct(&self, v: &mut [f64; 3], scale: f64) -> Result<f64> {
        let mut resid = f64::INFINITY;
        for iter in 0..15 {
            let (f0, f1, _) = self.f(v[0], v[1], v[2])?;
            resid = f0.abs().max(f1.abs());
            if resid < 1e-12 * (1.0 + v[0].abs().powi(3)) {
                return Ok(resid);
            }
            let _ = iter;
            let j = self.jacobian(v[0], v[1], v[2], scale)?;
            // minimal-norm solve of J delta = -F via J^T (J J^T)^{-1}
            let jjt = [
                [
                    j[0][0] * j[0][0] + j[0][1] * j[0][1] + j[0][2] * j[0][2],
                    j[0][0] * j[1][0] + j[0][1] * j[1][1] + j[0][2] * j[1][2],
                ],
                [
                    j[0][0] * j[1][0] + j[0][1] * j[1][1] + j[0][2] * j[1][2],
                    j[1][0] * j[1][0] + j[1][1] * j[1][1] + j[1][2] * j[1][2],
                ],
            ];
            let det = jjt[0][0] * jjt[1][1] - jjt[0][1] * jjt[1][0];
            if det.abs() < 1e-300 {
                return Err(Error::TracingFailed("singular corrector".into()));
            }
            let rhs = [-f0, -f1];
            let lam = [
                (rhs[0] * jjt[1][1] - rhs[1] * jjt[0][1]) / det,
                (rhs[1] * jjt[0][0] - rhs[0] * jjt[1][0]) / det,
            ];
            let mut step_norm = 0.0f64;
            for k in 0..3 {
                let d = j[0][k] * lam[0] + j[1][k] * lam[1];
                v[k] += d;
                step_norm = step_norm.max(d.abs());
            }
            if step_norm < 1e-12 * (1.0 + scale) {
                let (f0, f1, _) = self.f(v[0], v[1], v[2])?;
                return Ok(f0.abs().max(f1.abs()));
            }
        }
        Ok(resid)
    }

    /// Unit tangent of the solution curve: null direction of the Jacobian.
    fn tangent(&self, v: &[f64; 3], scale: f64) -> Result<[f64; 3]> {
        let j = self.jacobian(v[0], v[1], v[2], scale)?;
        // cross product of the two gradient rows
        let t = [
            j[0][1] * j[1][2] - j[0][2] * j[1][1],
            j[0][2] * j[1][0] - j[0][0] * j[1][2],
            j[0][0] * j[1][1] - j[0][1] * j[1][0],
        ];
        let n = (t[0] * t[0] + t[1] * t[1] + t[2] * t[2]).sqrt();
        if n < 1e-300 {
            return Err(Error::TracingFailed("degenerate tangent".into()));
        }
        Ok([t[0] / n, t[1] / n, t[2] / n])
    }
}

/// Find a seed: bisect the liquid/frozen transition along grid segments.
fn find_seed(
    b: &BurgersData,
    region: ((f64, f64), (f64, f64)),
    resolution: usize,
) -> Result<[f64; 3]> {
    let ((x0, y0), (x1, y1)) = region;
    let n = resolution.clamp(8, 64);
    let classify = |x: f64, y: f64| -> Result<bool> {
        Ok(matches!(burgers_solve(b, x, y)?, BurgersPoint::Liquid { .. }))
    };
    for gy in 0..=n {
        let y = y0 + (y1 - y0) * gy as f64 / n as f64;
        let mut prev: Option<(f64, bool)> = None;
        for gx in 0..=n {
            let x = x0 + (x1 - x0) * gx as f64 / n as f64;
            let liq = classify(x, y)?;
            if let Some((px, pliq)) = prev {
                if pliq != liq {
                    // bisect to the transition
                    let (mut a, mut bx) = (px, x);
                    for _ in 0..40 {
                        let m = 0.5 * (a + bx);
                        if classify(m, y)? == pliq {
                            a = m;
                        } else {
                            bx = m;
                        }
                    }
                    let xs = 0.5 * (a + bx);
                    // double root: the conjugate pair collapses there; take
                    // the closest pair of roots of rho
                    let poly = z_system_poly(b, xs, y)?;
                    let z = closest_pair_midpoint(&poly)?;
                    return Ok([z, xs, y]);
                }
            }
            prev = Some((x, liq));
        }
    }
    Err(Error::TracingFailed(
        "no liquid/frozen transition found in the region".into(),
    ))
}

fn closest_pair_midpoint(poly: &[f64]) -> Result<f64> {
    let roots = real_coeff_roots(poly);
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = (roots[i] - roots[j]).norm();
            if d < best.0 {
                best = (d, 0.5 * (roots[i] + roots[j]).re);
            }
        }
    }
    if best.0.is_finite() {
        Ok(best.1)
    } else {
        Err(Error::TracingFailed("no root pair".into()))
    }
}

/// Trace the frozen boundary inside `region`, aiming for roughly
/// `resolution` points around each closed component.
pub fn frozen_boundary(
    b: &BurgersData,
    region: ((f64, f64), (f64, f64)),
    resolution: usize,
) -> Result<FrozenBoundary> {
    let ((x0, y0), (x1, y1)) = region;
    let scale = (x1 - x0).abs().max((y1 - y0).abs());
    let mut v = find_seed(b, region, resolution.min(48))?;
    // stable degree at the seed
    let degree = {
        let c = z_system_poly(b, v[1], v[2])?;
        let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut d = c.len() - 1;
        while d > 1 && c[d].abs() < 1e-9 * norm {
            d -= 1;
        }
        d
    };
    let sys = System {
        b,
        degree,
        chart: std::cell::Cell::new(1),
    };
    sys.correct(&mut v, scale)?;
    let start = v;
    let mut points = vec![(v[1], v[2])];
    let mut z_values = vec![v[0]];
    let mut curvature_probe: Vec<f64> = vec![sys.f(v[0], v[1], v[2])?.2];
    let mut planar_speed: Vec<f64> = vec![1.0];
    let base_h = scale / resolution.max(16) as f64;
    let mut h = base_h;
    let mut t_prev = sys.tangent(&v, scale)?;
    let max_steps = resolution * 12 + 400;
    let mut closed = false;
    let mut steps_taken = 0usize;
    let mut diagnostics = String::new();
    for _ in 0..max_steps {
        // chart management: cross to the reciprocal chart when the root
        // coordinate leaves the safe window (hysteresis between 2.5 and 4)
        if sys.chart.get() == 1 && v[0].abs() > 4.0 {
            v[0] = 1.0 / v[0];
            sys.chart.set(2);
            t_prev = sys.tangent(&v, scale)?;
        } else if sys.chart.get() == 2 && v[0].abs() > 0.4 {
            v[0] = 1.0 / v[0];
            sys.chart.set(1);
            t_prev = sys.tangent(&v, scale)?;
        }
        // predictor
        let mut t = sys.tangent(&v, scale)?;
        // keep orientation
        let dot = t[0] * t_prev[0] + t[1] * t_prev[1] + t[2] * t_prev[2];
        if dot < 0.0 {
            for c in t.iter_mut() {
                *c = -*c;
            }
        }
        let mut trial = [v[0] + h * t[0], v[1] + h * t[1], v[2] + h * t[2]];
        match sys.correct(&mut trial, scale) {
            Ok(resid) if resid < 1e-7 * (1.0 + trial[0].abs().powi(3)) => {
                v = trial;
                t_prev = t;
                steps_taken += 1;
                let z_here = if sys.chart.get() == 2 {
                    if v[0].abs() < 1e-300 {
                        f64::INFINITY
                    } else {
                        1.0 / v[0]
                    }
                } else {
                    v[0]
                };
                points.push((v[1], v[2]));
                z_values.push(z_here);
                planar_speed.push(t[1].hypot(t[2]));
                curvature_probe.push(if sys.chart.get() == 1 {
                    sys.f(v[0], v[1], v[2])?.2
                } else {
                    f64::INFINITY
                });
                if h < base_h {
                    h *= 1.4;
                }
            }
            _ => {
                h *= 0.5;
                if h < 1e-9 * scale {
                    diagnostics = format!("step collapse at point {}", points.len());
                    break;
                }
                continue;
            }
        }
        // loop closure in the (x, y) projection
        let dx = v[1] - start[1];
        let dy = v[2] - start[2];
        if steps_taken > 12 && (dx * dx + dy * dy).sqrt() < 1.2 * h.max(base_h) {
            closed = true;
            break;
        }
        if v[1] < x0 - 0.1 * scale
            || v[1] > x1 + 0.1 * scale
            || v[2] < y0 - 0.1 * scale
            || v[2] > y1 + 0.1 * scale
        {
            diagnostics = "left the region".into();
            break;
        }
    }
    // cusps are triple roots: rho'' vanishes along with (rho, rho'), and the
    // planar velocity of the trace stalls (the lifted tangent turns into the
    // z direction). Both signatures together separate cusps from bitangency
    // points, where rho'' also dips but the planar speed stays finite.
    let probe_scale = curvature_probe
        .iter()
        .filter(|v| v.is_finite())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let n_pts = points.len();
    let mut cusps = Vec::new();
    for i in 0..n_pts {
        let c = curvature_probe[i].abs();
        if !c.is_finite() {
            continue;
        }
        let sp = planar_speed[i];
        let sp_prev = planar_speed[(i + n_pts - 1) % n_pts];
        let sp_next = planar_speed[(i + 1) % n_pts];
        if c < 0.2 * probe_scale && sp < 0.1 && sp <= sp_prev && sp <= sp_next {
            cusps.push(i);
        }
    }
    if points.len() < 8 {
        return Err(Error::TracingFailed(format!(
            "only {} points traced: {diagnostics}",
            points.len()
        )));
    }
    Ok(FrozenBoundary {
        points,
        z_values,
        cusps,
        closed,
        diagnostics,
    })
}
