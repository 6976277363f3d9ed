//! Richardson extrapolation in a power of the small parameter.

/// Neville tableau extrapolating f(x) -> x = 0 from samples (x_j, f_j).
///
/// Returns the extrapolated value, an error estimate from the last tableau
/// step, and whether the diagonal improved monotonically (a useful
/// diagnostic: non-monotone diagonals mean the asymptotic regime was not
/// reached and the estimate should not be trusted blindly).
#[derive(Debug, Clone)]
pub struct Extrapolation {
    pub value: f64,
    pub error_estimate: f64,
    pub diagonal: Vec<f64>,
    pub monotone: bool,
}

pub fn extrapolate_to_zero(samples: &[(f64, f64)]) -> Extrapolation {
    let n = samples.len();
    assert!(n >= 1, "need at least one sample");
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let mut col: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let mut diagonal = vec![col[0]];
    // Neville at 0: T[i] <- (x_{i+k} T_i - x_i T_{i+1}) / (x_{i+k} - x_i)
    for k in 1..n {
        for i in 0..n - k {
            col[i] = (xs[i + k] * col[i] - xs[i] * col[i + 1]) / (xs[i + k] - xs[i]);
        }
        diagonal.push(col[0]);
    }
    let value = *diagonal.last().unwrap();
    let error_estimate = if n >= 2 {
        (diagonal[n - 1] - diagonal[n - 2]).abs()
    } else {
        f64::INFINITY
    };
    let mut monotone = true;
    for k in 2..n {
        let prev = (diagonal[k - 1] - diagonal[k - 2]).abs();
        let cur = (diagonal[k] - diagonal[k - 1]).abs();
        if cur > prev {
            monotone = false;
        }
    }
    Extrapolation {
        value,
        error_estimate,
        diagonal,
        monotone,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_linear_model() {
        // f(x) = F + c x recovered exactly from two samples.
        let f = |x: f64| 2.5 - 0.7 * x;
        let e = extrapolate_to_zero(&[(0.04, f(0.04)), (0.01, f(0.01))]);
        assert!((e.value - 2.5).abs() < 1e-12);
    }

    #[test]
    fn quadratic_model_needs_three_points() {
        let f = |x: f64| -1.0 + 3.0 * x + 2.0 * x * x;
        let e = extrapolate_to_zero(&[(0.09, f(0.09)), (0.04, f(0.04)), (0.01, f(0.01))]);
        assert!((e.value + 1.0).abs() < 1e-11);
    }
}
