//! Bivariate Laurent polynomials P(z, w) and their Newton polygons.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A plane curve given by its monomials (exponent pair, real coefficient).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlaneCurveData", into = "PlaneCurveData")]
pub struct PlaneCurve {
    monomials: Vec<((i64, i64), f64)>,
    hull: Vec<(i64, i64)>,
    degenerate: bool,
}

#[derive(Serialize, Deserialize, Clone)]
struct PlaneCurveData {
    monomials: Vec<Monomial>,
}

#[derive(Serialize, Deserialize, Clone)]
struct Monomial {
    i: i64,
    j: i64,
    c: f64,
}

impl TryFrom<PlaneCurveData> for PlaneCurve {
    type Error = Error;
    fn try_from(d: PlaneCurveData) -> Result<Self> {
        PlaneCurve::new(d.monomials.into_iter().map(|m| ((m.i, m.j), m.c)).collect())
    }
}

impl From<PlaneCurve> for PlaneCurveData {
    fn from(c: PlaneCurve) -> Self {
        PlaneCurveData {
            monomials: c
                .monomials
                .into_iter()
                .map(|((i, j), c)| Monomial { i, j, c })
                .collect(),
        }
    }
}

impl PlaneCurve {
    pub fn new(mut monomials: Vec<((i64, i64), f64)>) -> Result<Self> {
        monomials.retain(|&(_, c)| c != 0.0);
        monomials.sort_by_key(|&(e, _)| e);
        for w in monomials.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::invalid("plane curve", "duplicate exponent pair"));
            }
        }
        if monomials.len() < 2 {
            return Err(Error::invalid("plane curve", "need at least two monomials"));
        }
        let hull = convex_hull(&monomials.iter().map(|&(e, _)| e).collect::<Vec<_>>());
        let degenerate = hull.len() < 3;
        Ok(PlaneCurve {
            monomials,
            hull,
            degenerate,
        })
    }

    /// The line z + w = 1 (monomials z + w - 1).
    pub fn line() -> Self {
        PlaneCurve::new(vec![((1, 0), 1.0), ((0, 1), 1.0), ((0, 0), -1.0)]).unwrap()
    }

    pub fn monomials(&self) -> &[((i64, i64), f64)] {
        &self.monomials
    }

    /// Newton polygon vertices, counterclockwise.
    pub fn newton_polygon(&self) -> &[(i64, i64)] {
        &self.hull
    }

    /// True when the Newton polygon collapses to a segment.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &((i, j), c) in &self.monomials {
            acc += c * z.powi(i as i32) * w.powi(j as i32);
        }
        acc
    }

    /// Coefficients of P(z, .) as a polynomial in w after factoring w^{j_min}:
    /// returns (j_min, coeffs ascending in w).
    pub fn w_poly(&self, z: Complex64) -> (i64, Vec<Complex64>) {
        let j_min = self.monomials.iter().map(|&((_, j), _)| j).min().unwrap();
        let j_max = self.monomials.iter().map(|&((_, j), _)| j).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (j_max - j_min + 1) as usize];
        for &((i, j), c) in &self.monomials {
            coeffs[(j - j_min) as usize] += c * z.powi(i as i32);
        }
        (j_min, coeffs)
    }

    /// Same with the roles of z and w swapped.
    pub fn z_poly(&self, w: Complex64) -> (i64, Vec<Complex64>) {
        let i_min = self.monomials.iter().map(|&((i, _), _)| i).min().unwrap();
        let i_max = self.monomials.iter().map(|&((i, _), _)| i).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (i_max - i_min + 1) as usize];
        for &((i, j), c) in &self.monomials {
            coeffs[(i - i_min) as usize] += c * w.powi(j as i32);
        }
        (i_min, coeffs)
    }

    /// Degree in w (span of exponents).
    pub fn w_degree(&self) -> i64 {
        let j_min = self.monomials.iter().map(|&((_, j), _)| j).min().unwrap();
        let j_max = self.monomials.iter().map(|&((_, j), _)| j).max().unwrap();
        j_max - j_min
    }

    /// Partial derivatives as curves (may be constants; eval directly).
    pub fn eval_dz(&self, z: Complex64, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &((i, j), c) in &self.monomials {
            if i != 0 {
                acc += c * i as f64 * z.powi(i as i32 - 1) * w.powi(j as i32);
            }
        }
        acc
    }

    pub fn eval_dw(&self, z: Complex64, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &((i, j), c) in &self.monomials {
            if j != 0 {
                acc += c * j as f64 * z.powi(i as i32) * w.powi(j as i32 - 1);
            }
        }
        acc
    }

    /// Whether (x, y) lies in the Newton polygon, with tolerance on edges.
    pub fn polygon_contains(&self, x: f64, y: f64, tol: f64) -> bool {
        let h = &self.hull;
        if h.len() == 1 {
            return (x - h[0].0 as f64).abs() <= tol && (y - h[0].1 as f64).abs() <= tol;
        }
        if h.len() == 2 {
            // segment
            let (ax, ay) = (h[0].0 as f64, h[0].1 as f64);
            let (bx, by) = (h[1].0 as f64, h[1].1 as f64);
            let cross = (bx - ax) * (y - ay) - (by - ay) * (x - ax);
            if cross.abs() > tol {
                return false;
            }
            let t = ((x - ax) * (bx - ax) + (y - ay) * (by - ay))
                / ((bx - ax).powi(2) + (by - ay).powi(2));
            return (-tol..=1.0 + tol).contains(&t);
        }
        for k in 0..h.len() {
            let (ax, ay) = (h[k].0 as f64, h[k].1 as f64);
            let b = h[(k + 1) % h.len()];
            let (bx, by) = (b.0 as f64, b.1 as f64);
            let cross = (bx - ax) * (y - ay) - (by - ay) * (x - ax);
            if cross < -tol {
                return false;
            }
        }
        true
    }

    /// Coefficient at an exponent pair, when present.
    pub fn coefficient(&self, e: (i64, i64)) -> Option<f64> {
        self.monomials
            .iter()
            .find(|&&(m, _)| m == e)
            .map(|&(_, c)| c)
    }
}

/// Andrew's monotone chain; returns counterclockwise hull.
fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // collinear set: keep the extreme points
        return vec![pts[0], *pts.last().unwrap()];
    }
    lower
}
