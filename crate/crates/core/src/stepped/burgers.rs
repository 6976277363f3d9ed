//! The complex Burgers equation z_x/z + w_y/w = c on the curve P(z, w) = 0,
//! solved by complex characteristics.
//!
//! For c != 0 the characteristic data is an analytic curve Q with
//! Q(e^{-cx} z, e^{-cy} w) = 0. For c = 0 that system loses its (x, y)
//! dependence (only constant solutions), and the characteristic method
//! degenerates to the linear-in-(x, y) normal form: z is constant along
//! straight lines, giving
//!
//!   P(z, w) = 0,   Q(z, x z P_z + y w P_w) = 0,
//!
//! with Q again an analytic plane curve (for polygonal boundary data a
//! polynomial of degree k and genus zero).
//!
//! Either way the system reduces to a single polynomial in z by a numeric
//! resultant, sampled on a circle and interpolated.

use crate::error::{Error, Result};
use crate::numerics::roots::{complex_roots, real_coeff_roots};
use crate::stepped::curve2::PlaneCurve;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Characteristic data: the curve P, the characteristics curve Q, and the
/// volume-constraint multiplier c (0 for unconstrained).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BurgersData {
    pub p: PlaneCurve,
    pub q: PlaneCurve,
    pub c: f64,
}

/// Pointwise solution of the characteristic system.
#[derive(Debug, Clone)]
pub enum BurgersPoint {
    Liquid {
        z: Complex64,
        w: Complex64,
        grad: (f64, f64),
    },
    Frozen,
}

/// Coefficients (ascending in w) of the two equations at fixed z.
fn system_w_polys(
    b: &BurgersData,
    x: f64,
    y: f64,
    z: Complex64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let (_, p_coeffs) = b.p.w_poly(z);
    let s_coeffs = if b.c != 0.0 {
        let zt = z * (-b.c * x).exp();
        let (_, qs) = b.q.w_poly(zt);
        let f = (-b.c * y).exp();
        qs.into_iter()
            .enumerate()
            .map(|(j, c)| c * f.powi(j as i32))
            .collect()
    } else {
        // zeta(w) = x z P_z + y w P_w as a polynomial in w, then S = Q(z, zeta)
        let (_, pz) = dz_poly(&b.p, z);
        let (_, pw) = dw_poly(&b.p, z);
        // x z P_z(w) + y w P_w(w)
        let mut zeta = vec![Complex64::new(0.0, 0.0); pz.len().max(pw.len() + 1)];
        for (j, c) in pz.iter().enumerate() {
            zeta[j] += x * z * c;
        }
        for (j, c) in pw.iter().enumerate() {
            zeta[j + 1] += y * c;
        }
        compose_in_second(&b.q, z, &zeta)
    };
    (p_coeffs, s_coeffs)
}

/// d/dz and d/dw of P as coefficient arrays in w at fixed z. Requires
/// nonnegative exponents (polynomial P) for the characteristic form.
fn dz_poly(p: &PlaneCurve, z: Complex64) -> (i64, Vec<Complex64>) {
    let j_max = p.monomials().iter().map(|&((_, j), _)| j).max().unwrap();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (j_max + 1) as usize];
    for &((i, j), c) in p.monomials() {
        debug_assert!(i >= 0 && j >= 0, "characteristic form needs polynomial P");
        if i != 0 {
            coeffs[j as usize] += c * i as f64 * z.powi(i as i32 - 1);
        }
    }
    (0, coeffs)
}

fn dw_poly(p: &PlaneCurve, z: Complex64) -> (i64, Vec<Complex64>) {
    let j_max = p.monomials().iter().map(|&((_, j), _)| j).max().unwrap();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); j_max as usize + 1];
    for &((i, j), c) in p.monomials() {
        if j != 0 {
            coeffs[(j - 1) as usize] += c * j as f64 * z.powi(i as i32);
        }
    }
    coeffs.truncate(coeffs.len().saturating_sub(1).max(1));
    (0, coeffs)
}

/// Q(z, u(w)): compose the second slot of Q with a w-polynomial u.
fn compose_in_second(q: &PlaneCurve, z: Complex64, u: &[Complex64]) -> Vec<Complex64> {
    let j_min = q.monomials().iter().map(|&((_, j), _)| j).min().unwrap();
    debug_assert!(j_min >= 0, "characteristic curve must be polynomial in u");
    let j_max = q.monomials().iter().map(|&((_, j), _)| j).max().unwrap();
    // q_j(z)
    let mut qj = vec![Complex64::new(0.0, 0.0); (j_max + 1) as usize];
    for &((i, j), c) in q.monomials() {
        qj[j as usize] += c * z.powi(i as i32);
    }
    // Horner in u
    let mut acc = vec![qj[j_max as usize]];
    for j in (0..j_max as usize).rev() {
        acc = poly_mul(&acc, u);
        if acc.is_empty() {
            acc = vec![Complex64::new(0.0, 0.0)];
        }
        acc[0] += qj[j];
    }
    acc
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Sylvester resultant of two w-polynomials (complex coefficients).
fn resultant_w(p: &[Complex64], s: &[Complex64]) -> Complex64 {
    let trim = |c: &[Complex64]| -> Vec<Complex64> {
        let scale = c.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        let mut v = c.to_vec();
        while v.len() > 1 && v.last().unwrap().norm() < 1e-13 * scale.max(1e-300) {
            v.pop();
        }
        v
    };
    let p = trim(p);
    let s = trim(s);
    let (n, m) = (p.len() - 1, s.len() - 1);
    if n == 0 {
        return p[0].powi(m as i32);
    }
    if m == 0 {
        return s[0].powi(n as i32);
    }
    let dim = n + m;
    let mut mat = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for row in 0..m {
        for (k, &c) in p.iter().enumerate() {
            mat[row][row + n - k] = c;
        }
    }
    for row in 0..n {
        for (k, &c) in s.iter().enumerate() {
            mat[m + row][row + m - k] = c;
        }
    }
    // LU determinant with partial pivoting
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..dim {
        let piv = (col..dim)
            .max_by(|&i, &j| mat[i][col].norm().total_cmp(&mat[j][col].norm()))
            .unwrap();
        if mat[piv][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        det *= mat[col][col];
        for row in col + 1..dim {
            let f = mat[row][col] / mat[col][col];
            for k in col..dim {
                let sub = f * mat[col][k];
                mat[row][k] -= sub;
            }
        }
    }
    det
}

/// The eliminated z-polynomial of the combined system at (x, y):
/// real coefficients, ascending. Computed by sampling the w-resultant on a
/// circle of z values and interpolating by a discrete Fourier sum.
pub fn z_system_poly(b: &BurgersData, x: f64, y: f64) -> Result<Vec<f64>> {
    // degree bound in z
    let dz_p = b.p.monomials().iter().map(|&((i, _), _)| i).max().unwrap();
    let dw_p = b.p.w_degree();
    let (dz_s, dw_s) = if b.c != 0.0 {
        let di = b.q.monomials().iter().map(|&((i, _), _)| i.abs()).max().unwrap();
        (di, b.q.w_degree())
    } else {
        let dq_u = b.q.monomials().iter().map(|&((_, j), _)| j).max().unwrap();
        let dq_z = b.q.monomials().iter().map(|&((i, _), _)| i).max().unwrap();
        // zeta has z-degree <= dz_p and w-degree <= dw_p
        (dq_z + dq_u * dz_p, dq_u * dw_p)
    };
    let bound = (dz_p * dw_s + dz_s * dw_p).max(1) as usize;
    let k = bound + 1;
    let rho = 1.13; // sampling radius, off lattice-coincidence values
    let mut samples = Vec::with_capacity(k);
    for t in 0..k {
        let ang = std::f64::consts::TAU * t as f64 / k as f64 + 0.37;
        let z = Complex64::from_polar(rho, ang);
        let (p_c, s_c) = system_w_polys(b, x, y, z);
        samples.push((z, resultant_w(&p_c, &s_c)));
    }
    // coefficients by the inverse DFT on the shifted circle
    let mut coeffs = Vec::with_capacity(k);
    for m in 0..k {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(z, v) in &samples {
            acc += v / z.powi(m as i32);
        }
        coeffs.push(acc / k as f64);
    }
    // the result of a real elimination is real up to rounding
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Err(Error::NoSolutions { x, y });
    }
    for c in &coeffs {
        if c.im.abs() > 1e-6 * scale {
            return Err(Error::invalid(
                "characteristic elimination",
                format!("non-real resultant coefficient {c}"),
            ));
        }
    }
    Ok(coeffs.iter().map(|c| c.re).collect())
}

/// Solve the system at (x, y): a conjugate pair of complex roots means the
/// point is liquid and carries the gradient (arg w, -arg z)/pi, oriented by
/// the root of the pair whose gradient lands in the triangle with vertices
/// (0,0), (1,0), (0,1); all roots real means frozen.
pub fn burgers_solve(b: &BurgersData, x: f64, y: f64) -> Result<BurgersPoint> {
    let poly = z_system_poly(b, x, y)?;
    let roots = {
        let c: Vec<Complex64> = poly.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        complex_roots(&c)
    };
    if roots.is_empty() {
        return Err(Error::NoSolutions { x, y });
    }
    let scale = roots.iter().map(|r| r.norm()).fold(1.0f64, f64::max);
    let mut best: Option<(Complex64, Complex64, (f64, f64))> = None;
    for z0 in &roots {
        if z0.im.abs() <= 1e-9 * scale {
            continue;
        }
        for z in [*z0, z0.conj()] {
            let w = match w_on_curve(b, x, y, z) {
                Some(w) => w,
                None => continue,
            };
            let grad = (w.arg() / std::f64::consts::PI, -z.arg() / std::f64::consts::PI);
            if in_triangle(grad, 1e-9) {
                if best.is_none() {
                    best = Some((z, w, grad));
                }
            }
        }
    }
    match best {
        Some((z, w, grad)) => Ok(BurgersPoint::Liquid { z, w, grad }),
        None => Ok(BurgersPoint::Frozen),
    }
}

fn in_triangle(g: (f64, f64), tol: f64) -> bool {
    g.0 >= -tol && g.1 >= -tol && g.0 + g.1 <= 1.0 + tol
}

/// The w matching z on the curve and on the characteristic equation.
///
/// At a resultant root the characteristic polynomial S(z, .) can degenerate
/// to (numerically) zero — e.g. when zeta loses its w-dependence — in which
/// case it imposes no condition and any root of P(z, .) qualifies.
fn w_on_curve(b: &BurgersData, x: f64, y: f64, z: Complex64) -> Option<Complex64> {
    let (p_c, s_c) = system_w_polys(b, x, y, z);
    let ws = complex_roots(&p_c);
    let s_scale = s_c.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let mut s_t = s_c.clone();
    while s_t.len() > 1 && s_t.last().unwrap().norm() < 1e-10 * s_scale {
        s_t.pop();
    }
    let degenerate = s_scale == 0.0 || s_t.len() <= 1;
    ws.into_iter()
        .filter(|w| {
            degenerate
                || eval_poly(&s_t, *w).norm()
                    <= 1e-6 * s_scale * (1.0 + w.norm().powi(s_t.len() as i32))
        })
        .min_by(|a, b2| {
            let (pa, sa) = (eval_poly(&p_c, *a).norm(), eval_poly(&s_c, *a).norm());
            let (pb, sb) = (eval_poly(&p_c, *b2).norm(), eval_poly(&s_c, *b2).norm());
            (pa + sa).total_cmp(&(pb + sb))
        })
}

fn eval_poly(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &v in c.iter().rev() {
        acc = acc * z + v;
    }
    acc
}
