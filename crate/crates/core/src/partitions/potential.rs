//! Periodic potentials on the half-integer lattice and the Abel-regularized
//! energy of a partition's particle configuration.

use crate::error::{Error, Result};
use crate::partitions::{r_quotients, Partition};
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A mean-zero function xi on Z + 1/2, periodic with period r.
///
/// `xi[i-1]` stores xi_i = xi(1/2 - i) for i = 1..r.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicPotential {
    pub r: usize,
    pub xi: Vec<f64>,
}

impl PeriodicPotential {
    pub fn new(xi: Vec<f64>) -> Result<Self> {
        let r = xi.len();
        if r == 0 {
            return Err(Error::invalid("periodic potential", "period must be >= 1"));
        }
        let mean: f64 = xi.iter().sum::<f64>() / r as f64;
        let scale = xi.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        if mean.abs() > 1e-12 * scale {
            return Err(Error::invalid(
                "periodic potential",
                format!("mean {mean} is not zero"),
            ));
        }
        Ok(PeriodicPotential { r, xi })
    }

    /// The zero potential of period r.
    pub fn zero(r: usize) -> Self {
        PeriodicPotential {
            r,
            xi: vec![0.0; r],
        }
    }

    /// Value at the half-integer with doubled coordinate `x2` (odd).
    pub fn value_at2(&self, x2: i64) -> f64 {
        debug_assert!(x2 % 2 != 0);
        // x = 1/2 - i  <=>  i = (1 - x2)/2; reduce i - 1 mod r.
        let i_minus_1 = ((1 - x2) / 2 - 1).rem_euclid(self.r as i64) as usize;
        self.xi[i_minus_1]
    }
}

/// Exact rational coefficients of the energy: Xi(lambda) = sum_k s_k xi_k,
/// returned as the shift vector s from the r-quotients of lambda.
pub fn potential_energy_shifts(lambda: &Partition, r: usize) -> Result<Vec<Rational64>> {
    Ok(r_quotients(lambda, r)?.shifts)
}

/// Xi(lambda) = (s, xi): the Abel-regularized energy of S(lambda) in the
/// potential, evaluated through the exact shifts.
pub fn potential_energy(lambda: &Partition, v: &PeriodicPotential) -> Result<f64> {
    let shifts = potential_energy_shifts(lambda, v.r)?;
    let mut acc = 0.0;
    for (s, &xi) in shifts.iter().zip(v.xi.iter()) {
        acc += rational_to_f64(*s) * xi;
    }
    Ok(acc)
}

fn rational_to_f64(x: Rational64) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        *x.numer() as f64 / *x.denom() as f64
    }
}
