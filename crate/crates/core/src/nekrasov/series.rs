//! The instanton series, the full partition function, and the small-eps free
//! energy estimate.

use crate::error::{Error, Result};
use crate::nekrasov::params::{GaugeParams, PartitionTuple};
use crate::nekrasov::pert::log_z_pert;
use crate::nekrasov::weight::tangent_weight;
use crate::numerics::richardson::extrapolate_to_zero;
use crate::numerics::summation::{pairwise_sum, sorted_pairwise_sum};
use crate::partitions::Partition;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

/// Coefficient of Lambda^{2rn} in Z_inst: the sum of 1/det over all
/// fixed points of charge n.
///
/// The enumeration order is fixed and the reduction is a sorted pairwise
/// tree, so the value is bit-stable across thread counts and exactly
/// invariant under permutations of a.
pub fn instanton_coefficient(n: u64, g: &GaugeParams) -> Result<f64> {
    g.check_pole_avoidance()?;
    let tuples = PartitionTuple::enumerate(g.rank(), n);
    let mut terms: Vec<f64> = tuples
        .par_iter()
        .map(|f| tangent_weight(f, g).map(|det| 1.0 / det))
        .collect::<Result<Vec<f64>>>()?;
    Ok(sorted_pairwise_sum(&mut terms))
}

/// Exact r=1 coefficient at eps = 1: sum over |lambda| = n of
/// prod_boxes hook^{-2}, which collapses to 1/n!.
pub fn instanton_coefficient_exact_r1(n: u64) -> BigRational {
    let mut total = BigRational::from_integer(0.into());
    for p in Partition::all_of_size(n) {
        let mut hooks = BigUint::one();
        for (i, j) in p.boxes() {
            hooks *= BigUint::from(p.hook(i, j));
        }
        total += BigRational::new(1.into(), (hooks.clone() * hooks).into());
    }
    total
}

/// Z_inst truncated at n_max, with the coefficient list and the magnitude of
/// the last term as a truncation diagnostic.
#[derive(Debug, Clone)]
pub struct ZInst {
    pub value: f64,
    pub coefficients: Vec<f64>,
    pub last_term: f64,
}

pub fn z_inst(g: &GaugeParams, n_max: usize) -> Result<ZInst> {
    let r = g.rank() as i32;
    let mut coefficients = Vec::with_capacity(n_max + 1);
    let mut terms = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let c = instanton_coefficient(n as u64, g)?;
        coefficients.push(c);
        terms.push(g.lambda.powi(2 * r * n as i32) * c);
    }
    Ok(ZInst {
        value: pairwise_sum(&terms),
        last_term: terms.last().copied().unwrap_or(0.0).abs(),
        coefficients,
    })
}

/// ln Z = ln Z_pert + ln Z_inst, modulus and phase.
#[derive(Debug, Clone)]
pub struct LnZFull {
    pub ln_modulus: f64,
    pub phase: f64,
    pub inst: ZInst,
}

pub fn ln_z_full(g: &GaugeParams, n_max: usize) -> Result<LnZFull> {
    let pert = log_z_pert(g)?;
    let inst = z_inst(g, n_max)?;
    if !(inst.value > 0.0) {
        return Err(Error::invalid(
            "z_inst",
            format!("non-positive truncated series {}", inst.value),
        ));
    }
    Ok(LnZFull {
        ln_modulus: pert.ln_modulus + inst.value.ln(),
        phase: pert.phase,
        inst,
    })
}

/// |Z| = |Z_pert| * Z_inst at the given truncation.
pub fn z_full(g: &GaugeParams, n_max: usize) -> Result<f64> {
    Ok(ln_z_full(g, n_max)?.ln_modulus.exp())
}

/// Richardson-extrapolated -eps^2 ln|Z| over a decreasing eps sequence.
#[derive(Debug, Clone)]
pub struct FreeEnergyEstimate {
    pub value: f64,
    pub error_estimate: f64,
    /// (eps, -eps^2 ln Z) samples in input order.
    pub samples: Vec<(f64, f64)>,
    /// Whether the extrapolation diagonal improved monotonically.
    pub monotone: bool,
    /// Largest truncation diagnostic among the samples.
    pub max_last_term: f64,
}

/// Free energy from the eps -> 0 limit of -eps^2 ln Z, extrapolated in eps^2.
///
/// Each eps in the sequence must individually satisfy pole avoidance.
/// Non-monotone extrapolation is reported, not silently swallowed.
pub fn free_energy_estimate(
    a: &[f64],
    lambda: f64,
    eps_sequence: &[f64],
    n_max: usize,
) -> Result<FreeEnergyEstimate> {
    if eps_sequence.is_empty() {
        return Err(Error::invalid("free energy", "empty eps sequence"));
    }
    if eps_sequence.windows(2).any(|w| w[1].abs() >= w[0].abs()) {
        return Err(Error::invalid(
            "free energy",
            "eps sequence must decrease in magnitude",
        ));
    }
    let mut samples = Vec::with_capacity(eps_sequence.len());
    let mut max_last_term = 0.0f64;
    for &eps in eps_sequence {
        let g = GaugeParams::new(eps, a.to_vec(), lambda)?;
        let z = ln_z_full(&g, n_max)?;
        samples.push((eps, -eps * eps * z.ln_modulus));
        max_last_term = max_last_term.max(z.inst.last_term);
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(e, f)| (e * e, f)).collect();
    let ex = extrapolate_to_zero(&pts);
    Ok(FreeEnergyEstimate {
        value: ex.value,
        error_estimate: ex.error_estimate,
        samples,
        monotone: ex.monotone,
        max_last_term,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn coefficient_zero_is_one() {
        let g = GaugeParams::new(0.9, vec![0.55, -0.55], 0.5).unwrap();
        assert_eq!(instanton_coefficient(0, &g).unwrap(), 1.0);
    }

    #[test]
    fn rank_one_coefficients_are_inverse_factorials() {
        // coefficient_n = 1/(n! eps^{2n})
        let eps = 0.8;
        let g = GaugeParams::new(eps, vec![0.0], 0.5).unwrap();
        let mut fact = 1.0;
        for n in 0..=6u64 {
            if n > 0 {
                fact *= n as f64;
            }
            let c = instanton_coefficient(n, &g).unwrap();
            let expect = 1.0 / (fact * eps.powi(2 * n as i32));
            assert!(
                (c - expect).abs() <= 1e-12 * expect,
                "n={n}: {c} vs {expect}"
            );
        }
    }

    #[test]
    fn exact_rank_one_coefficients() {
        let mut fact = BigUint::one();
        for n in 0..=8u64 {
            if n > 0 {
                fact *= BigUint::from(n);
            }
            assert_eq!(
                instanton_coefficient_exact_r1(n),
                BigRational::new(BigUint::one().into(), fact.clone().into()),
                "exact coefficient at n={n}"
            );
        }
    }

    #[test]
    fn rank_one_series_is_exponential() {
        // eps=1, Lambda=1/2: Z_inst -> exp(1/4)
        let g = GaugeParams::new(1.0, vec![0.0], 0.5).unwrap();
        let z = z_inst(&g, 8).unwrap();
        assert!(
            (z.value - 0.25f64.exp()).abs() <= 1e-9,
            "{} vs {}",
            z.value,
            0.25f64.exp()
        );
        assert!(z.last_term < 1e-9);
    }

    #[test]
    fn lambda_zero_limit_is_one() {
        let g = GaugeParams::new(1.0, vec![0.3, -0.3], 1e-12).unwrap();
        let z = z_inst(&g, 3).unwrap();
        assert!((z.value - 1.0).abs() < 1e-20);
    }

    #[test]
    fn rank_two_charge_one_has_two_terms_and_evenness() {
        let g = GaugeParams::new(0.31, vec![0.9, -0.9], 0.6).unwrap();
        assert_eq!(PartitionTuple::enumerate(2, 1).len(), 2);
        let c = instanton_coefficient(1, &g).unwrap();
        let d = g.a[0] - g.a[1];
        let expect = 2.0 / (0.31f64.powi(2) * d * d);
        assert!((c - expect).abs() < 1e-12 * expect);
        // exact symmetry under a -> -a and eps -> -eps
        let gm = GaugeParams::new(-0.31, vec![-0.9, 0.9], 0.6).unwrap();
        for n in 0..=3 {
            assert_eq!(
                instanton_coefficient(n, &g).unwrap().to_bits(),
                instanton_coefficient(n, &gm).unwrap().to_bits()
            );
        }
    }

    #[test]
    fn extrapolation_recovers_linear_model_exactly() {
        // f(eps) = F + c eps^2 through the same tableau the estimator uses
        let pts = [(0.2f64, 0.0f64), (0.1, 0.0), (0.05, 0.0)]
            .iter()
            .map(|&(e, _)| (e * e, -3.0 + 0.8 * e * e))
            .collect::<Vec<_>>();
        let ex = extrapolate_to_zero(&pts);
        assert!((ex.value + 3.0).abs() < 1e-12);
    }

    #[test]
    fn free_energy_even_in_eps() {
        let a = [1.0, -1.0];
        let f1 = free_energy_estimate(&a, 0.3, &[0.21, 0.11], 6).unwrap();
        let f2 = free_energy_estimate(&a, 0.3, &[-0.21, -0.11], 6).unwrap();
        assert_eq!(f1.value.to_bits(), f2.value.to_bits());
    }

    #[test]
    fn nonmonotone_eps_sequence_rejected() {
        assert!(free_energy_estimate(&[0.0], 0.5, &[0.1, 0.2], 4).is_err());
    }

    #[test]
    fn plancherel_burnside_identity() {
        // sum over |lambda|=n of (dim)^2 = n! backs the 1/n! coefficient
        for n in 0..=8u64 {
            let mut total = BigUint::from(0u32);
            for p in Partition::all_of_size(n) {
                let d = p.dimension();
                total += d.clone() * d;
            }
            let mut fact = BigUint::one();
            for k in 1..=n {
                fact *= BigUint::from(k);
            }
            assert_eq!(total, fact);
        }
        let _ = BigRational::from_integer(1.into()).to_f64();
    }
}
