//! Ronkin functions, amoeba membership, and the stepped-surface tension.
//!
//! The double torus average reduces by Jensen's formula to a single angular
//! average: for fixed z on its circle, P(z, .) is a polynomial in w, and
//! the w-average of ln|P| is ln|lead| + sum_l ln max(e^y, |rho_l|) (plus
//! j_min y from the Laurent prefactor). The remaining theta integrand is
//! piecewise smooth, so a doubling trapezoid average converges.

use crate::error::{Error, Result};
use crate::numerics::quadrature::periodic_average;
use crate::numerics::roots::complex_roots;
use crate::stepped::curve2::PlaneCurve;
use num_complex::Complex64;

/// One theta-slice of the Jensen reduction: the w-average of ln|P| on the
/// circle |w| = e^y for z fixed on |z| = e^x at angle theta.
fn jensen_slice(p: &PlaneCurve, x: f64, y: f64, theta: f64) -> f64 {
    let z = Complex64::from_polar(x.exp(), theta);
    let (j_min, coeffs) = p.w_poly(z);
    let mut c = coeffs;
    let scale = c.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    while c.len() > 1 && c.last().unwrap().norm() < 1e-13 * scale {
        c.pop();
    }
    let lead = *c.last().unwrap();
    let mut acc = j_min as f64 * y + lead.norm().ln();
    if c.len() > 1 {
        for rho in complex_roots(&c) {
            acc += rho.norm().max(y.exp()).ln();
        }
    }
    acc
}

/// R(x, y): the torus average of ln|P| over |z| = e^x, |w| = e^y.
pub fn ronkin(p: &PlaneCurve, x: f64, y: f64, tol: f64) -> Result<f64> {
    let q = periodic_average(|theta| jensen_slice(p, x, y, theta), tol, 64, 18);
    if !q.residual.is_finite() {
        return Err(Error::QuadratureDiverged {
            residual: q.residual,
            tol,
        });
    }
    Ok(q.value)
}

/// Membership of (x, y) in the amoeba of P.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    Borderline,
}

/// Does the torus |z| = e^x, |w| = e^y meet P = 0? Implemented as a root
/// scan in the angle of z: the number of w-roots inside the circle e^y can
/// only change by a root crossing it, and a crossing is the definition of
/// membership. Points with no crossing but a root within `tol` of the
/// circle (in log-modulus) are flagged Borderline.
pub fn amoeba_membership(p: &PlaneCurve, x: f64, y: f64, tol: f64) -> Membership {
    let n = 512;
    let mut counts = Vec::with_capacity(n);
    let mut min_dist = f64::INFINITY;
    for k in 0..n {
        let theta = std::f64::consts::TAU * (k as f64 + 0.5) / n as f64;
        let z = Complex64::from_polar(x.exp(), theta);
        let (_, coeffs) = p.w_poly(z);
        let mut inside = 0usize;
        for rho in complex_roots(&coeffs) {
            let d = rho.norm().ln() - y;
            if d < 0.0 {
                inside += 1;
            }
            min_dist = min_dist.min(d.abs());
        }
        counts.push(inside);
    }
    let crossing = counts.windows(2).any(|w| w[0] != w[1]);
    if crossing || min_dist <= 0.25 * tol {
        // verify it is not a grazing artifact
        if crossing {
            Membership::Inside
        } else {
            Membership::Borderline
        }
    } else if min_dist <= tol {
        Membership::Borderline
    } else {
        Membership::Outside
    }
}

/// Gradient of the Ronkin function.
///
/// dR/dy = j_min + average over theta of #{w-roots inside e^y}; the
/// integrand is integer-valued and piecewise constant, so the average is
/// computed exactly by locating the jump angles by bisection. dR/dx is the
/// same with the roles of z and w swapped. Both components land in the
/// Newton polygon by construction.
pub fn ronkin_gradient(p: &PlaneCurve, x: f64, y: f64) -> Result<(f64, f64)> {
    let dy = piecewise_count_average(
        |theta| {
            let z = Complex64::from_polar(x.exp(), theta);
            let (j_min, coeffs) = p.w_poly(z);
            let inside = complex_roots(&coeffs)
                .into_iter()
                .filter(|r| r.norm().ln() < y)
                .count();
            j_min as f64 + inside as f64
        },
        1024,
    );
    let dx = piecewise_count_average(
        |phi| {
            let w = Complex64::from_polar(y.exp(), phi);
            let (i_min, coeffs) = p.z_poly(w);
            let inside = complex_roots(&coeffs)
                .into_iter()
                .filter(|r| r.norm().ln() < x)
                .count();
            i_min as f64 + inside as f64
        },
        1024,
    );
    Ok((dx, dy))
}

/// Average of an integer-valued piecewise-constant periodic function:
/// scan, then bisect every jump to 1e-12.
fn piecewise_count_average<F: Fn(f64) -> f64>(f: F, n: usize) -> f64 {
    let tau = std::f64::consts::TAU;
    let thetas: Vec<f64> = (0..n).map(|k| tau * (k as f64 + 0.5) / n as f64).collect();
    let values: Vec<f64> = thetas.iter().map(|&t| f(t)).collect();
    let mut acc = 0.0;
    for k in 0..n {
        let next = (k + 1) % n;
        let (mut a, va) = (thetas[k], values[k]);
        let mut b = if next == 0 { thetas[0] + tau } else { thetas[next] };
        let vb = values[next];
        if va == vb {
            acc += va * (b - a);
            continue;
        }
        // locate the jump between a and b
        let (a0, b0) = (a, b);
        for _ in 0..45 {
            let m = 0.5 * (a + b);
            if f(m.rem_euclid(tau)) == va {
                a = m;
            } else {
                b = m;
            }
        }
        let jump = 0.5 * (a + b);
        acc += va * (jump - a0) + vb * (b0 - jump);
    }
    acc / tau
}

/// sigma_step(s) = sup_v (s . v - R(v)): Legendre dual of the Ronkin
/// function on the Newton polygon.
///
/// At a polygon vertex the sup runs away along the dominant direction and
/// equals -ln|coefficient of the vertex monomial|; in the interior a
/// gradient ascent on the concave objective converges.
pub fn surface_tension_step(p: &PlaneCurve, sx: f64, sy: f64, tol: f64) -> Result<f64> {
    if !p.polygon_contains(sx, sy, 1e-9) {
        return Err(Error::SlopeOutOfRange {
            slope: sx.hypot(sy),
            domain: "Newton polygon",
        });
    }
    // vertex case
    for &(i, j) in p.newton_polygon() {
        if (sx - i as f64).abs() < 1e-9 && (sy - j as f64).abs() < 1e-9 {
            let c = p.coefficient((i, j)).unwrap_or(0.0);
            return Ok(-c.abs().ln());
        }
    }
    // interior: ascent on g(v) = s.v - R(v)
    let mut v = (0.0f64, 0.0f64);
    let mut step = 1.0f64;
    let g = |v: (f64, f64)| -> Result<f64> {
        Ok(sx * v.0 + sy * v.1 - ronkin(p, v.0, v.1, tol.min(1e-9))?)
    };
    let mut gv = g(v)?;
    for _ in 0..200 {
        let (dx, dy) = ronkin_gradient(p, v.0, v.1)?;
        let grad = (sx - dx, sy - dy);
        let norm = grad.0.hypot(grad.1);
        if norm < 1e-7 {
            break;
        }
        let mut improved = false;
        while step > 1e-10 {
            let cand = (v.0 + step * grad.0, v.1 + step * grad.1);
            let gc = g(cand)?;
            if gc > gv {
                v = cand;
                gv = gc;
                improved = true;
                step *= 1.7;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Ok(gv)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute 2D trapezoid oracle for R on a modest grid.
    fn ronkin_brute(p: &PlaneCurve, x: f64, y: f64, n: usize) -> f64 {
        let tau = std::f64::consts::TAU;
        let mut acc = 0.0;
        for a in 0..n {
            for b in 0..n {
                let z = Complex64::from_polar(x.exp(), tau * (a as f64 + 0.5) / n as f64);
                let w = Complex64::from_polar(y.exp(), tau * (b as f64 + 0.3) / n as f64);
                acc += p.eval(z, w).norm().ln();
            }
        }
        acc / (n * n) as f64
    }

    #[test]
    fn line_deep_outside_values() {
        let line = PlaneCurve::line();
        // P -> -1 on the torus far down: R -> 0
        let r = ronkin(&line, -10.0, -10.0, 1e-9).unwrap();
        assert!(r.abs() < 1e-6, "R(-10,-10) = {r}");
        // x-dominant component: R = x
        let r = ronkin(&line, 5.0, -3.0, 1e-9).unwrap();
        assert!((r - 5.0).abs() < 1e-6, "R(5,-3) = {r}");
        // symmetry R(x,y) = R(y,x)
        for &(x, y) in &[(0.3, -0.8), (1.4, 0.2), (-2.0, 0.5)] {
            let a = ronkin(&line, x, y, 1e-9).unwrap();
            let b = ronkin(&line, y, x, 1e-9).unwrap();
            assert!((a - b).abs() < 1e-8, "asymmetry at ({x},{y}): {a} vs {b}");
        }
    }

    #[test]
    fn jensen_reduction_matches_brute_torus_average() {
        let line = PlaneCurve::line();
        for &(x, y) in &[(0.0, 0.0), (0.5, -0.2), (-1.0, 0.3)] {
            let fast = ronkin(&line, x, y, 1e-10).unwrap();
            let brute = ronkin_brute(&line, x, y, 400);
            assert!(
                (fast - brute).abs() < 5e-3,
                "({x},{y}): jensen {fast} vs brute {brute}"
            );
        }
    }

    #[test]
    fn line_amoeba_membership() {
        let line = PlaneCurve::line();
        assert_eq!(amoeba_membership(&line, -10.0, -10.0, 1e-6), Membership::Outside);
        // (0,0): |z|=|w|=1 with z+w=1 at the 60-degree points
        assert_eq!(amoeba_membership(&line, 0.0, 0.0, 1e-6), Membership::Inside);
        assert_eq!(amoeba_membership(&line, 3.0, 0.0, 1e-6), Membership::Outside);
    }

    #[test]
    fn gradient_constant_outside_nonconstant_inside() {
        let line = PlaneCurve::line();
        // deep in the three complement components the gradient locks to the
        // corresponding vertex of the triangle
        let cases = [
            ((-8.0, -8.0), (0.0, 0.0)),
            ((8.0, -4.0), (1.0, 0.0)),
            ((-4.0, 8.0), (0.0, 1.0)),
        ];
        for &((x, y), expect) in &cases {
            let (dx, dy) = ronkin_gradient(&line, x, y).unwrap();
            assert!(
                (dx - expect.0).abs() < 1e-6 && (dy - expect.1).abs() < 1e-6,
                "grad at ({x},{y}) = ({dx},{dy})"
            );
        }
        let (dx, dy) = ronkin_gradient(&line, 0.1, 0.05).unwrap();
        assert!(dx > 0.05 && dy > 0.05 && dx + dy < 0.95, "interior grad ({dx},{dy})");
    }

    #[test]
    fn gradient_in_newton_polygon_and_consistent_with_differences() {
        let line = PlaneCurve::line();
        for &(x, y) in &[(0.0, 0.0), (0.7, -0.4), (-0.5, 0.6), (1.5, 1.2)] {
            let (dx, dy) = ronkin_gradient(&line, x, y).unwrap();
            assert!(line.polygon_contains(dx, dy, 1e-6), "grad outside polygon");
            let h = 1e-4;
            let fdx = (ronkin(&line, x + h, y, 1e-10).unwrap()
                - ronkin(&line, x - h, y, 1e-10).unwrap())
                / (2.0 * h);
            let fdy = (ronkin(&line, x, y + h, 1e-10).unwrap()
                - ronkin(&line, x, y - h, 1e-10).unwrap())
                / (2.0 * h);
            assert!(
                (dx - fdx).abs() < 5e-4 && (dy - fdy).abs() < 5e-4,
                "at ({x},{y}): exact ({dx},{dy}) vs FD ({fdx},{fdy})"
            );
        }
    }

    #[test]
    fn ronkin_is_convex_on_sampled_midpoints() {
        let line = PlaneCurve::line();
        let pts = [(-0.6, 0.2), (0.8, 0.4), (0.1, -0.9), (1.0, 1.0)];
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let (ax, ay) = pts[i];
                let (bx, by) = pts[j];
                let ra = ronkin(&line, ax, ay, 1e-9).unwrap();
                let rb = ronkin(&line, bx, by, 1e-9).unwrap();
                let rm = ronkin(&line, 0.5 * (ax + bx), 0.5 * (ay + by), 1e-9).unwrap();
                assert!(rm <= 0.5 * (ra + rb) + 1e-7, "midpoint convexity violated");
            }
        }
    }

    #[test]
    fn vertex_tension_values_for_the_line() {
        let line = PlaneCurve::line();
        for &(i, j) in &[(0i64, 0i64), (1, 0), (0, 1)] {
            let s = surface_tension_step(&line, i as f64, j as f64, 1e-8).unwrap();
            assert!(s.abs() < 1e-12, "sigma at vertex ({i},{j}) = {s}");
        }
        assert!(matches!(
            surface_tension_step(&line, 0.7, 0.7, 1e-8),
            Err(Error::SlopeOutOfRange { .. })
        ));
    }

    #[test]
    fn tension_convex_along_segment_and_dual_round_trip() {
        let line = PlaneCurve::line();
        // convexity along a segment in the triangle
        let f = |t: f64| surface_tension_step(&line, 0.2 + 0.5 * t, 0.3, 1e-7).unwrap();
        let (f0, f1, f2) = (f(0.0), f(0.5), f(1.0));
        assert!(f1 <= 0.5 * (f0 + f2) + 1e-4, "{f0} {f1} {f2}");
        // double dual returns R: the sup over slopes of v.s - sigma(s) is
        // attained at s = grad R(v) (envelope), refined over a small grid
        for &(x, y) in &[(0.2, 0.1), (-0.3, 0.4)] {
            let r = ronkin(&line, x, y, 1e-9).unwrap();
            let (gx, gy) = ronkin_gradient(&line, x, y).unwrap();
            let mut best = f64::NEG_INFINITY;
            for da in -2..=2 {
                for db in -2..=2 {
                    let sx = gx + 0.01 * da as f64;
                    let sy = gy + 0.01 * db as f64;
                    if sx <= 0.0 || sy <= 0.0 || sx + sy >= 1.0 {
                        continue;
                    }
                    let sig = surface_tension_step(&line, sx, sy, 1e-8).unwrap();
                    best = best.max(sx * x + sy * y - sig);
                }
            }
            assert!(
                (best - r).abs() < 1e-3,
                "double dual at ({x},{y}): {best} vs {r}"
            );
        }
    }

    /// A genus-one Harnack curve: the Ronkin function has one compact facet
    /// over the single hole of the amoeba, with gradient at the interior
    /// lattice point.
    #[test]
    fn genus_one_curve_has_one_compact_facet() {
        let c = PlaneCurve::new(vec![
            ((1, 0), 1.0),
            ((-1, 0), 1.0),
            ((0, 1), 1.0),
            ((0, -1), 1.0),
            ((0, 0), 5.0),
        ])
        .unwrap();
        assert_eq!(amoeba_membership(&c, 0.0, 0.0, 1e-6), Membership::Outside);
        let (dx, dy) = ronkin_gradient(&c, 0.0, 0.0).unwrap();
        assert!(dx.abs() < 1e-9 && dy.abs() < 1e-9, "compact facet slope ({dx},{dy})");
        // the facet is compact: nearby points inside the hole agree, points
        // past the hole boundary do not
        let (dx2, dy2) = ronkin_gradient(&c, 0.15, 0.0).unwrap();
        assert!(dx2.abs() < 1e-9 && dy2.abs() < 1e-9, "({dx2},{dy2})");
        let (dx3, _) = ronkin_gradient(&c, 2.5, 0.0).unwrap();
        assert!(dx3 > 0.5, "outside the hole the gradient moves");
    }
}
