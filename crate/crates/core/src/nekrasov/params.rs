//! Parameters of the partition function and tuples of partitions labeling
//! localization fixed points.

use crate::error::{Error, Result};
use crate::partitions::Partition;
use serde::{Deserialize, Serialize};

/// (eps, a_1..a_r, Lambda): regularization, Coulomb, and scale parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeParams {
    pub epsilon: f64,
    pub a: Vec<f64>,
    pub lambda: f64,
    /// Pole-avoidance margin, relative to |epsilon|.
    #[serde(default = "default_margin")]
    pub pole_margin: f64,
}

fn default_margin() -> f64 {
    1e-9
}

impl GaugeParams {
    pub fn new(epsilon: f64, a: Vec<f64>, lambda: f64) -> Result<Self> {
        if epsilon == 0.0 || !epsilon.is_finite() {
            return Err(Error::invalid("gauge parameters", "epsilon must be nonzero"));
        }
        if !(lambda > 0.0) {
            return Err(Error::invalid("gauge parameters", "Lambda must be positive"));
        }
        if a.is_empty() {
            return Err(Error::invalid("gauge parameters", "need at least one a_i"));
        }
        let scale = a.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let sum: f64 = a.iter().sum();
        if sum.abs() > 1e-12 * scale {
            return Err(Error::invalid(
                "gauge parameters",
                format!("sum of a_i is {sum}, not 0"),
            ));
        }
        Ok(GaugeParams {
            epsilon,
            a,
            lambda,
            pole_margin: default_margin(),
        })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Coupling from Lambda = exp(-4 pi^2 beta / r).
    pub fn beta(&self) -> f64 {
        -(self.rank() as f64) * self.lambda.ln() / (4.0 * std::f64::consts::PI.powi(2))
    }

    /// Fails when some a_i - a_j is within `pole_margin * |eps|` of eps * Z.
    pub fn check_pole_avoidance(&self) -> Result<()> {
        let margin = self.pole_margin * self.epsilon.abs();
        for i in 0..self.a.len() {
            for j in 0..self.a.len() {
                if i == j {
                    continue;
                }
                let d = self.a[i] - self.a[j];
                let k = (d / self.epsilon).round();
                if (d - k * self.epsilon).abs() < margin {
                    return Err(Error::PoleHit {
                        i,
                        j,
                        value: d,
                        multiple: k as i64,
                        margin,
                    });
                }
            }
        }
        Ok(())
    }
}

/// An r-tuple of partitions: a torus-fixed point of charge `total_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionTuple {
    parts: Vec<Partition>,
    total_size: u64,
}

impl PartitionTuple {
    pub fn new(parts: Vec<Partition>) -> Self {
        let total_size = parts.iter().map(|p| p.size()).sum();
        PartitionTuple { parts, total_size }
    }

    pub fn components(&self) -> &[Partition] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn total_size(&self) -> u64 {
        self.total_size
    }

    /// All r-tuples of total size n, in a fixed deterministic order:
    /// compositions (n_1, ..., n_r) lexicographically, partitions within a
    /// component in `Partition::all_of_size` order.
    pub fn enumerate(r: usize, n: u64) -> Vec<PartitionTuple> {
        let mut out = Vec::new();
        let mut current: Vec<Partition> = Vec::with_capacity(r);
        fn rec(
            remaining: u64,
            slots_left: usize,
            current: &mut Vec<Partition>,
            out: &mut Vec<PartitionTuple>,
        ) {
            if slots_left == 1 {
                for p in Partition::all_of_size(remaining) {
                    current.push(p);
                    out.push(PartitionTuple::new(current.clone()));
                    current.pop();
                }
                return;
            }
            for k in 0..=remaining {
                for p in Partition::all_of_size(k) {
                    current.push(p);
                    rec(remaining - k, slots_left - 1, current, out);
                    current.pop();
                }
            }
        }
        rec(n, r.max(1), &mut current, &mut out);
        out
    }
}
