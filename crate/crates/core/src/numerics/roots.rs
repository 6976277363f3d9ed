//! Polynomial root finding.
//!
//! Durand-Kerner (Weierstrass) iteration on complex coefficients, with a
//! Newton polish. Degrees here are small (curve degree r, characteristic
//! cubics), so simplicity and robustness beat sophistication.

use num_complex::Complex64;

/// All complex roots of sum_k coeffs[k] * x^k (coeffs[deg] != 0).
///
/// Tiny leading coefficients (relative to the largest) are trimmed first so
/// near-degenerate inputs behave like their honest lower degree.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() < 1e-14 * scale {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![-c[0] / c[1]];
    }
    if deg == 2 {
        return quadratic_roots(c[0], c[1], c[2]);
    }

    // Durand-Kerner from a scaled, rotated starting circle.
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|v| v / lead).collect();
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            radius * Complex64::new(ang.cos(), ang.sin())
        })
        .collect();
    for _ in 0..200 {
        let mut delta_max = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let num = eval_monic(&monic, z[i]);
            let step = num / denom;
            z[i] -= step;
            delta_max = delta_max.max(step.norm());
        }
        if delta_max < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    // Newton polish.
    for zi in z.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = eval_monic_pair(&monic, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            *zi -= step;
            if step.norm() < 1e-15 * (1.0 + zi.norm()) {
                break;
            }
        }
    }
    z
}

fn quadratic_roots(c0: Complex64, c1: Complex64, c2: Complex64) -> Vec<Complex64> {
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    // Pick the sign that avoids cancellation in -b -+ disc.
    let q = if (c1 + disc).norm() >= (c1 - disc).norm() {
        -0.5 * (c1 + disc)
    } else {
        -0.5 * (c1 - disc)
    };
    if q.norm() == 0.0 {
        return vec![Complex64::new(0.0, 0.0), -c1 / c2];
    }
    vec![q / c2, c0 / q]
}

fn eval_monic(monic: &[Complex64], z: Complex64) -> Complex64 {
    let deg = monic.len() - 1;
    let mut acc = Complex64::new(1.0, 0.0);
    for k in (0..deg).rev() {
        acc = acc * z + monic[k];
    }
    acc
}

fn eval_monic_pair(monic: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let deg = monic.len() - 1;
    let mut p = Complex64::new(1.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for k in (0..deg).rev() {
        dp = dp * z + p;
        p = p * z + monic[k];
    }
    (p, dp)
}

/// All roots of a real-coefficient polynomial.
pub fn real_coeff_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let c: Vec<Complex64> = coeffs.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    complex_roots(&c)
}

/// Real roots of a real polynomial, with an imaginary-part tolerance relative
/// to the root magnitude scale. Returns them sorted ascending.
pub fn real_roots(coeffs: &[f64], imag_tol: f64) -> Vec<f64> {
    let roots = real_coeff_roots(coeffs);
    let scale = roots.iter().map(|r| r.norm()).fold(1.0f64, f64::max);
    let mut out: Vec<f64> = roots
        .into_iter()
        .filter(|r| r.im.abs() <= imag_tol * scale)
        .map(|r| r.re)
        .collect();
    out.sort_by(f64::total_cmp);
    // Polish against the real polynomial.
    for x in out.iter_mut() {
        for _ in 0..6 {
            let (p, dp) = eval_real_pair(coeffs, *x);
            if dp.abs() == 0.0 {
                break;
            }
            let step = p / dp;
            *x -= step;
            if step.abs() < 1e-15 * (1.0 + x.abs()) {
                break;
            }
        }
    }
    out
}

fn eval_real_pair(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}
