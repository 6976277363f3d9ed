//! Quadrature rules used across the crate.
//!
//! Everything here is panel-doubling with an absolute/relative stopping rule:
//! no black boxes, the same few routines serve the period integrals, the
//! Barnes integrand, and the Ronkin averages.

use num_complex::Complex64;

/// Result of an adaptive rule: value plus the last refinement gap.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub residual: f64,
    pub panels: usize,
}

/// Composite Simpson with panel doubling until successive values agree.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_doublings: usize,
) -> QuadResult {
    let mut n = 8usize;
    let mut prev = simpson(&f, a, b, n);
    for _ in 0..max_doublings {
        n *= 2;
        let next = simpson(&f, a, b, n);
        let residual = (next - prev).abs();
        if residual <= tol * (1.0 + next.abs()) {
            return QuadResult {
                value: next,
                residual,
                panels: n,
            };
        }
        prev = next;
    }
    QuadResult {
        value: prev,
        residual: f64::INFINITY,
        panels: n,
    }
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let n = n.max(2) & !1usize;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let x = a + h * k as f64;
        acc += f(x) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// Complex-valued composite Simpson with panel doubling.
pub fn adaptive_simpson_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_doublings: usize,
) -> (Complex64, f64) {
    let mut n = 8usize;
    let mut prev = simpson_c(&f, a, b, n);
    for _ in 0..max_doublings {
        n *= 2;
        let next = simpson_c(&f, a, b, n);
        let residual = (next - prev).norm();
        if residual <= tol * (1.0 + next.norm()) {
            return (next, residual);
        }
        prev = next;
    }
    (prev, f64::INFINITY)
}

fn simpson_c<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, n: usize) -> Complex64 {
    let n = n.max(2) & !1usize;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let x = a + h * k as f64;
        acc += f(x) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// Periodic trapezoid average (1/2pi) * integral over [0, 2pi) with doubling.
///
/// For smooth periodic integrands this converges spectrally; kinks knock it
/// down to algebraic, which the doubling loop detects.
pub fn periodic_average<F: Fn(f64) -> f64>(
    f: F,
    tol: f64,
    n0: usize,
    max_doublings: usize,
) -> QuadResult {
    let mut n = n0.max(8);
    let mut prev = periodic_avg_n(&f, n);
    for _ in 0..max_doublings {
        n *= 2;
        let next = periodic_avg_n(&f, n);
        let residual = (next - prev).abs();
        if residual <= tol * (1.0 + next.abs()) {
            return QuadResult {
                value: next,
                residual,
                panels: n,
            };
        }
        prev = next;
    }
    QuadResult {
        value: prev,
        residual: f64::INFINITY,
        panels: n,
    }
}

fn periodic_avg_n<F: Fn(f64) -> f64>(f: &F, n: usize) -> f64 {
    // Midpoint nodes keep us off angles where coefficients degenerate.
    let h = std::f64::consts::TAU / n as f64;
    let mut acc = 0.0;
    for k in 0..n {
        acc += f(h * (k as f64 + 0.5));
    }
    acc / n as f64
}

/// Integral over a band/gap interval with inverse-square-root endpoint
/// behavior absorbed by the substitution x = mid + half*cos(phi).
///
/// Integrates f over [lo, hi]; the transformed integrand is smooth in phi,
/// so plain panel doubling converges fast.
pub fn cos_substituted_integral<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_doublings: usize,
) -> QuadResult {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    // phi = 0 maps to hi, phi = pi to lo; sin(phi) >= 0 keeps orientation.
    adaptive_simpson(
        |phi| f(mid + half * phi.cos()) * half * phi.sin(),
        0.0,
        std::f64::consts::PI,
        tol,
        max_doublings,
    )
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on Legendre polynomials.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Initial guess (Chebyshev-like); Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out
}

fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
