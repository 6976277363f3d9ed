//! Profiles: Lipschitz-1 functions equal to |x| far out, and the scaled
//! boundary profile of a partition.

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Piecewise-linear function on R equal to |x| outside its breakpoint range.
///
/// `slopes[j]` is the slope on (breakpoints[j], breakpoints[j+1]); the value
/// is anchored by psi(breakpoints[0]) = |breakpoints[0]|.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileFunction {
    breakpoints: Vec<f64>,
    slopes: Vec<f64>,
    values: Vec<f64>,
}

impl ProfileFunction {
    /// The profile |x| itself.
    pub fn absolute_value() -> Self {
        ProfileFunction {
            breakpoints: Vec::new(),
            slopes: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Build from breakpoints and slopes; validates the Lipschitz bound and
    /// continuity against |x| at the right edge (tolerance `closure_tol`).
    pub fn new(breakpoints: Vec<f64>, slopes: Vec<f64>, closure_tol: f64) -> Result<Self> {
        if breakpoints.is_empty() {
            return Ok(Self::absolute_value());
        }
        if slopes.len() + 1 != breakpoints.len() {
            return Err(Error::invalid(
                "profile",
                format!(
                    "{} breakpoints need {} slopes, got {}",
                    breakpoints.len(),
                    breakpoints.len() - 1,
                    slopes.len()
                ),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("profile", "breakpoints not increasing"));
        }
        if slopes.iter().any(|s| s.abs() > 1.0 + 1e-12) {
            return Err(Error::invalid("profile", "slope exceeds Lipschitz bound 1"));
        }
        let mut values = Vec::with_capacity(breakpoints.len());
        let mut v = breakpoints[0].abs();
        values.push(v);
        for j in 0..slopes.len() {
            v += slopes[j] * (breakpoints[j + 1] - breakpoints[j]);
            values.push(v);
        }
        let b_last = *breakpoints.last().unwrap();
        let defect = (values.last().unwrap() - b_last.abs()).abs();
        if defect > closure_tol {
            return Err(Error::invalid(
                "profile",
                format!("discontinuous against |x| at the right edge (defect {defect})"),
            ));
        }
        Ok(ProfileFunction {
            breakpoints,
            slopes,
            values,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// psi(x).
    pub fn eval(&self, x: f64) -> f64 {
        if self.breakpoints.is_empty()
            || x <= self.breakpoints[0]
            || x >= *self.breakpoints.last().unwrap()
        {
            return x.abs();
        }
        let j = match self
            .breakpoints
            .binary_search_by(|b| b.partial_cmp(&x).unwrap())
        {
            Ok(j) => return self.values[j],
            Err(j) => j - 1,
        };
        self.values[j] + self.slopes[j] * (x - self.breakpoints[j])
    }

    /// One-sided derivative psi'(x+).
    pub fn deriv(&self, x: f64) -> f64 {
        if self.breakpoints.is_empty() || x < self.breakpoints[0] {
            return if x < 0.0 { -1.0 } else { 1.0 };
        }
        if x >= *self.breakpoints.last().unwrap() {
            return 1.0;
        }
        let j = match self
            .breakpoints
            .binary_search_by(|b| b.partial_cmp(&x).unwrap())
        {
            Ok(j) => j,
            Err(j) => j - 1,
        };
        self.slopes[j.min(self.slopes.len() - 1)]
    }

    /// Integral of (psi(x) - |x|) dx: exact on the piecewise-linear data.
    pub fn deviation_area(&self) -> f64 {
        let mut acc = 0.0;
        for j in 0..self.slopes.len() {
            let (a, b) = (self.breakpoints[j], self.breakpoints[j + 1]);
            // integral of the linear piece minus integral of |x|
            let lin = 0.5 * (self.values[j] + self.values[j + 1]) * (b - a);
            acc += lin - abs_integral(a, b);
        }
        acc
    }

    /// L1 distance to another profile (both equal |x| far out, so the
    /// integral is over the union of their breakpoint ranges).
    pub fn l1_distance(&self, other: &ProfileFunction, samples: usize) -> f64 {
        let lo = self
            .breakpoints
            .first()
            .copied()
            .unwrap_or(0.0)
            .min(other.breakpoints.first().copied().unwrap_or(0.0));
        let hi = self
            .breakpoints
            .last()
            .copied()
            .unwrap_or(0.0)
            .max(other.breakpoints.last().copied().unwrap_or(0.0));
        if hi <= lo {
            return 0.0;
        }
        let n = samples.max(16);
        let h = (hi - lo) / n as f64;
        let mut acc = 0.0;
        for k in 0..n {
            let x = lo + h * (k as f64 + 0.5);
            acc += (self.eval(x) - other.eval(x)).abs();
        }
        acc * h
    }
}

fn abs_integral(a: f64, b: f64) -> f64 {
    // integral of |x| from a to b
    let f = |x: f64| 0.5 * x * x.abs();
    f(b) - f(a)
}

/// The boundary profile of `lambda`, scaled by `eps` in both directions.
///
/// Unscaled, the profile has slope -1 over unit cells holding a particle of
/// S(lambda) and slope +1 over holes; scaling multiplies both axes by eps,
/// which makes the deviation area 2 eps^2 |lambda|.
pub fn profile(lambda: &Partition, eps: f64) -> Result<ProfileFunction> {
    if !(eps > 0.0) {
        return Err(Error::invalid("profile scale", "eps must be positive"));
    }
    if lambda.is_empty() {
        return Ok(ProfileFunction::absolute_value());
    }
    let ell = lambda.num_parts() as i64;
    // Occupied cells: (x - 1/2, x + 1/2) for x in S(lambda). Walk integer
    // cell boundaries from -ell (everything below is vacuum-packed) up to
    // lambda_1 (everything above is holes).
    let lo = -ell;
    let hi = lambda.part(1) as i64;
    let occupied: std::collections::HashSet<i64> = (1..=lambda.num_parts())
        .map(|i| 2 * lambda.part(i) as i64 - 2 * i as i64 + 1)
        .collect();
    let mut cell_slopes = Vec::with_capacity((hi - lo) as usize);
    for m in lo..hi {
        // cell (m, m+1) holds the half-integer with doubled value 2m+1
        cell_slopes.push(if occupied.contains(&(2 * m + 1)) {
            -1.0
        } else {
            1.0
        });
    }
    // Merge equal consecutive slopes.
    let mut breakpoints = vec![lo as f64 * eps];
    let mut slopes: Vec<f64> = Vec::new();
    for (idx, &s) in cell_slopes.iter().enumerate() {
        if slopes.last() == Some(&s) {
            *breakpoints.last_mut().unwrap() = (lo + idx as i64 + 1) as f64 * eps;
        } else {
            slopes.push(s);
            breakpoints.push((lo + idx as i64 + 1) as f64 * eps);
        }
    }
    ProfileFunction::new(breakpoints, slopes, 1e-9 * eps)
}
