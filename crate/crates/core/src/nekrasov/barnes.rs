//! Barnes double Gamma function via the zeta_2 integral representation.
//!
//! ln Gamma_2(w | c_1, c_2) is the s-derivative at 0 of
//! zeta_2(s) = (1/Gamma(s)) int_0^infty t^{s-1} e^{-wt} / prod(1 - e^{-c_i t}) dt.
//! Splitting at t = 1 and subtracting the double-pole Laurent data
//! A/t^2 + B/t + C of the integrand gives, with gamma Euler's constant,
//!
//!   ln Gamma_2 = gamma C - A/2 - B + I0 + I1,
//!   I0 = int_0^1 (g - A/t^2 - B/t - C) dt/t,   I1 = int_1^infty g dt/t.
//!
//! That form is valid for positive quasi-periods and Re w large enough;
//! everything else reaches it through the reflection
//! zeta_2(s; w | c, -c') = -zeta_2(s; w + c' | c, c') and the difference
//! equation ladder.

use crate::error::{Error, Result};
use crate::numerics::quadrature::adaptive_simpson_complex;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// zeta'(-1) = -0.16542114370045092921...; fixes Gamma_2(0|1,-1) = e^{-zeta'(-1)}.
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165421143700450929213919065;

/// Argument and quasi-periods of Gamma_2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarnesParams {
    pub w_re: f64,
    pub w_im: f64,
    pub c1: f64,
    pub c2: f64,
}

impl BarnesParams {
    pub fn new(w: Complex64, c1: f64, c2: f64) -> Result<Self> {
        if c1 == 0.0 || c2 == 0.0 {
            return Err(Error::invalid("Barnes parameters", "quasi-periods must be nonzero"));
        }
        Ok(BarnesParams {
            w_re: w.re,
            w_im: w.im,
            c1,
            c2,
        })
    }

    pub fn w(&self) -> Complex64 {
        Complex64::new(self.w_re, self.w_im)
    }
}

/// Taylor coefficients of phi(x) = x/(1 - e^{-x}) up to x^12
/// (B_n^+ / n! with the plus convention B_1 = +1/2).
const PHI: [f64; 13] = [
    1.0,
    0.5,
    1.0 / 12.0,
    0.0,
    -1.0 / 720.0,
    0.0,
    1.0 / 30240.0,
    0.0,
    -1.0 / 1209600.0,
    0.0,
    1.0 / 47900160.0,
    0.0,
    -691.0 / 1307674368000.0,
];

/// ln Gamma_2(w | c1, c2), meromorphically continued in w.
pub fn log_gamma2(p: &BarnesParams) -> Result<Complex64> {
    let w = p.w();
    match (p.c1 > 0.0, p.c2 > 0.0) {
        (true, true) => core_positive(w, p.c1, p.c2),
        (false, false) => {
            // both reflections: zeta_2(s; w | -g1, -g2) = zeta_2(s; w+g1+g2 | g1, g2)
            let (g1, g2) = (-p.c1, -p.c2);
            core_positive(w + g1 + g2, g1, g2)
        }
        (true, false) => {
            let g = -p.c2;
            core_positive(w + g, p.c1, g).map(|v| -v)
        }
        (false, true) => {
            let g = -p.c1;
            core_positive(w + g, g, p.c2).map(|v| -v)
        }
    }
}

/// ln|Gamma_2(w|1,1)| and its sign for real w (any non-pole value).
///
/// Used on the fast path of the perturbative factor, where arguments are
/// real and can be large negative; the modulus ladder
/// ln|G(w)| = 2 ln|G(w+1)| - ln|G(w+2)| - ln|w| stays real throughout and
/// the sign follows G(w) = G(w+1)^2 / (w G(w+2)).
pub fn ln_gamma2_one_one_signed(w: f64) -> Result<(f64, i32)> {
    if !w.is_finite() {
        return Err(Error::invalid("Gamma2 argument", "not finite"));
    }
    if w >= 1.0 {
        let v = core_positive(Complex64::new(w, 0.0), 1.0, 1.0)?;
        return Ok((v.re, 1));
    }
    if w <= 0.0 && (w - w.round()).abs() < 1e-12 {
        return Err(Error::Gamma2Pole(w));
    }
    let steps = (1.0 - w).ceil() as usize;
    let base = w + steps as f64;
    let mut l2 = core_positive(Complex64::new(base + 1.0, 0.0), 1.0, 1.0)?.re;
    let mut l1 = core_positive(Complex64::new(base, 0.0), 1.0, 1.0)?.re;
    let mut s2 = 1i32;
    let mut s1 = 1i32;
    for j in (0..steps).rev() {
        let arg = w + j as f64;
        let l0 = 2.0 * l1 - l2 - arg.abs().ln();
        let s0 = if arg > 0.0 { s2 } else { -s2 };
        l2 = l1;
        l1 = l0;
        s2 = s1;
        s1 = s0;
    }
    Ok((l1, s1))
}

/// Quadrature threshold: the direct integral needs Re(w) comfortably positive.
fn quad_threshold(c1: f64, c2: f64) -> f64 {
    0.5 * (c1 + c2)
}

fn core_positive(w: Complex64, c1: f64, c2: f64) -> Result<Complex64> {
    debug_assert!(c1 > 0.0 && c2 > 0.0);
    if w.re >= quad_threshold(c1, c2) {
        return quadrature_ln_gamma2(w, c1, c2);
    }
    // Difference-equation ladder with memoization over the (c1, c2) lattice:
    // L(w) = L(w+c1) + L(w+c2) - L(w+c1+c2) - Log w.
    let mut memo: HashMap<(i64, i64), Complex64> = HashMap::new();
    ladder(w, c1, c2, 0, 0, &mut memo)
}

fn ladder(
    w0: Complex64,
    c1: f64,
    c2: f64,
    i: i64,
    j: i64,
    memo: &mut HashMap<(i64, i64), Complex64>,
) -> Result<Complex64> {
    if let Some(v) = memo.get(&(i, j)) {
        return Ok(*v);
    }
    let w = w0 + i as f64 * c1 + j as f64 * c2;
    let v = if w.re >= quad_threshold(c1, c2) {
        quadrature_ln_gamma2(w, c1, c2)?
    } else {
        if w.norm() < 1e-12 {
            return Err(Error::Gamma2Pole(w.re));
        }
        let a = ladder(w0, c1, c2, i + 1, j, memo)?;
        let b = ladder(w0, c1, c2, i, j + 1, memo)?;
        let ab = ladder(w0, c1, c2, i + 1, j + 1, memo)?;
        a + b - ab - w.ln()
    };
    memo.insert((i, j), v);
    Ok(v)
}

/// The subtracted-quadrature evaluation, valid for Re w >= threshold.
fn quadrature_ln_gamma2(w: Complex64, c1: f64, c2: f64) -> Result<Complex64> {
    let tol = 1e-13;
    // Laurent data of g(t) = e^{-wt} phi(c1 t) phi(c2 t) / (c1 c2 t^2).
    let a_coef = 1.0 / (c1 * c2);
    let h1 = Complex64::new(0.5 * (c1 + c2), 0.0) - w;
    let h2 = Complex64::new((c1 * c1 + c2 * c2) / 12.0 + 0.25 * c1 * c2, 0.0)
        - w * (0.5 * (c1 + c2))
        + w * w * 0.5;
    let b_coef = h1 * a_coef;
    let c_coef = h2 * a_coef;

    // Power series of h(t) = e^{-wt} phi(c1 t) phi(c2 t) for the small-t
    // region where the direct subtraction would cancel catastrophically.
    let series = h_series(w, c1, c2);
    let t_switch = (0.4 / w.norm().max(c1).max(c2).max(1.0)).min(0.5);

    let g = |t: f64| -> Complex64 {
        // e^{-wt} / ((1 - e^{-c1 t})(1 - e^{-c2 t}))
        let d1 = -(-c1 * t).exp_m1();
        let d2 = -(-c2 * t).exp_m1();
        (-w * t).exp() / (d1 * d2)
    };
    let subtracted = |t: f64| -> Complex64 {
        if t < t_switch {
            // (h(t) - h0 - h1 t - h2 t^2) / (c1 c2 t^3) via the series
            let mut acc = Complex64::new(0.0, 0.0);
            let mut tp = 1.0;
            for n in 3..series.len() {
                acc += series[n] * tp;
                tp *= t;
            }
            acc * a_coef
        } else {
            (g(t) - Complex64::new(a_coef / (t * t), 0.0) - b_coef / t - c_coef) / t
        }
    };

    let (i0, r0) = adaptive_simpson_complex(subtracted, 0.0, 1.0, tol, 22);
    if !r0.is_finite() {
        return Err(Error::QuadratureDiverged {
            residual: r0,
            tol,
        });
    }
    // Tail: integrate until e^{-Re(w) t} is negligible.
    let t_end = 1.0 + (44.0 / w.re.max(0.1)).min(2000.0);
    let (i1, r1) = adaptive_simpson_complex(|t| g(t) / t, 1.0, t_end, tol, 22);
    if !r1.is_finite() {
        return Err(Error::QuadratureDiverged {
            residual: r1,
            tol,
        });
    }
    Ok(c_coef * EULER_GAMMA - Complex64::new(a_coef * 0.5, 0.0) - b_coef + i0 + i1)
}

/// Coefficients of (h(t) - h0 - h1 t - h2 t^2)/t^3 as a power series in t:
/// returns h_n indexed from 0; callers start at n = 3.
fn h_series(w: Complex64, c1: f64, c2: f64) -> Vec<Complex64> {
    const N: usize = 13;
    let mut phi1 = [0.0f64; N];
    let mut phi2 = [0.0f64; N];
    let mut c1p = 1.0;
    let mut c2p = 1.0;
    for n in 0..N {
        phi1[n] = PHI[n] * c1p;
        phi2[n] = PHI[n] * c2p;
        c1p *= c1;
        c2p *= c2;
    }
    // product phi(c1 t) phi(c2 t)
    let mut pp = [0.0f64; N];
    for i in 0..N {
        for j in 0..N - i {
            pp[i + j] += phi1[i] * phi2[j];
        }
    }
    // times e^{-wt}
    let mut ew = [Complex64::new(0.0, 0.0); N];
    let mut term = Complex64::new(1.0, 0.0);
    for (n, e) in ew.iter_mut().enumerate() {
        *e = term;
        term *= -w / (n as f64 + 1.0);
    }
    let mut h = vec![Complex64::new(0.0, 0.0); N];
    for i in 0..N {
        for j in 0..N - i {
            h[i + j] += ew[i] * pp[j];
        }
    }
    h
}
