//! The generating function G of an r-tuple of partitions, with the infinite
//! packed tail summed in closed form.
//!
//! G(eps; a) = sum_k e^{i a_k} sum_{j>=1} e^{i eps (lambda^(k)_j - j + 1/2)}.
//! The j-tail is geometric; its closed form 1/(e^{i eps/2} - e^{-i eps/2})
//! analytically continues the sum everywhere except e^{i eps} = 1, so no
//! truncation in j ever happens.

use crate::error::{Error, Result};
use crate::partitions::Partition;
use num_complex::Complex64;

/// Evaluate G for an r-tuple at complex eps and complex a.
///
/// `depth` is the explicit particle window and must cover every part list;
/// rows beyond a partition's length cancel exactly against the resummed
/// vacuum tail, so any admissible depth gives the same value.
pub fn char_g(
    tuple: &[Partition],
    eps: Complex64,
    a: &[Complex64],
    depth: usize,
) -> Result<Complex64> {
    if tuple.len() != a.len() {
        return Err(Error::invalid("char_g", "tuple and a length mismatch"));
    }
    let max_parts = tuple.iter().map(|p| p.num_parts()).max().unwrap_or(0);
    if depth < max_parts {
        return Err(Error::DepthTooSmall {
            depth,
            parts: max_parts,
        });
    }
    let i = Complex64::new(0.0, 1.0);
    let half = (i * eps * 0.5).exp();
    let denom = half - 1.0 / half;
    if denom.norm() < 1e-14 {
        return Err(Error::EpsilonPole);
    }
    let vacuum = 1.0 / denom;
    let mut total = Complex64::new(0.0, 0.0);
    for (lam, &ak) in tuple.iter().zip(a.iter()) {
        let mut corrections = Complex64::new(0.0, 0.0);
        for j in 1..=lam.num_parts() {
            let x = lam.part(j) as f64 - j as f64 + 0.5;
            let v = 0.5 - j as f64;
            corrections += (i * eps * x).exp() - (i * eps * v).exp();
        }
        total += (i * ak).exp() * (vacuum + corrections);
    }
    Ok(total)
}
