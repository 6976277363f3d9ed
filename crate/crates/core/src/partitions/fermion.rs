//! Fermionic particle coordinates of a partition.
//!
//! The configuration S(lambda) = { lambda_i - i + 1/2 } lives on half-integers;
//! we store doubled values so every coordinate is an exact integer.

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// A finite window of a fermion configuration on Z + 1/2.
///
/// `points2` are doubled coordinates (2x), strictly decreasing. Below the
/// stored window the configuration is densely packed: every half-integer
/// x with 2x < `tail_start2` (and the right parity) is occupied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermionConfig {
    points2: Vec<i64>,
    tail_start2: i64,
}

impl FermionConfig {
    /// Validated constructor.
    pub fn new(points2: Vec<i64>, tail_start2: i64) -> Result<Self> {
        for w in points2.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::invalid(
                    "fermion configuration",
                    format!("points not strictly decreasing: {} <= {}", w[0], w[1]),
                ));
            }
        }
        if points2.iter().any(|&p| (p & 1) == 0) {
            return Err(Error::invalid(
                "fermion configuration",
                "doubled coordinates must be odd (half-integers)",
            ));
        }
        if let Some(&last) = points2.last() {
            if tail_start2 > last - 2 {
                return Err(Error::invalid(
                    "fermion configuration",
                    "packed tail overlaps the stored window",
                ));
            }
        }
        Ok(FermionConfig {
            points2,
            tail_start2,
        })
    }

    /// Doubled coordinates of the stored window.
    pub fn points2(&self) -> &[i64] {
        &self.points2
    }

    /// First doubled coordinate of the densely packed tail.
    pub fn tail_start2(&self) -> i64 {
        self.tail_start2
    }

    /// Number of explicitly stored particles.
    pub fn depth(&self) -> usize {
        self.points2.len()
    }
}

/// The first `depth` particles of S(lambda) = { lambda_i - i + 1/2 }.
///
/// Errors if `depth` is smaller than the number of parts: the truncated
/// configuration would misrepresent the partition.
pub fn fermion_set(lambda: &Partition, depth: usize) -> Result<FermionConfig> {
    if depth < lambda.num_parts() {
        return Err(Error::DepthTooSmall {
            depth,
            parts: lambda.num_parts(),
        });
    }
    let points2: Vec<i64> = (1..=depth)
        .map(|i| 2 * lambda.part(i) as i64 - 2 * i as i64 + 1)
        .collect();
    // Below the window the parts are all zero: next point is -(depth+1)+1/2.
    let tail_start2 = -2 * (depth as i64 + 1) + 1;
    FermionConfig::new(points2, tail_start2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn halves(v: &[i64]) -> Vec<f64> {
        v.iter().map(|&x| x as f64 / 2.0).collect()
    }

    #[test]
    fn vacuum_window() {
        let c = fermion_set(&Partition::empty(), 3).unwrap();
        assert_eq!(halves(c.points2()), vec![-0.5, -1.5, -2.5]);
    }

    #[test]
    fn single_box() {
        let p = Partition::new(vec![1]).unwrap();
        let c = fermion_set(&p, 3).unwrap();
        assert_eq!(halves(c.points2()), vec![0.5, -1.5, -2.5]);
    }

    #[test]
    fn three_one() {
        let p = Partition::new(vec![3, 1]).unwrap();
        let c = fermion_set(&p, 4).unwrap();
        assert_eq!(halves(c.points2()), vec![2.5, -0.5, -2.5, -3.5]);
    }

    #[test]
    fn depth_too_small_is_an_error() {
        let p = Partition::new(vec![2, 1, 1]).unwrap();
        assert!(matches!(
            fermion_set(&p, 2),
            Err(Error::DepthTooSmall { depth: 2, parts: 3 })
        ));
    }
}
