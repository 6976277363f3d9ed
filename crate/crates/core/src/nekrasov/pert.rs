//! The perturbative factor Z_pert.
//!
//! Z_pert = prod_{k,k'} Gamma_2(i(a_k - a_k')/Lambda | i eps/Lambda, -i eps/Lambda)^{-1}.
//! The imaginary quasi-periods reduce through the scaling relation
//! Gamma_2(M w | M c, -M c) = M^{w^2/(2c^2) - 1/12} Gamma_2(w | c, -c) with
//! M = i eps / Lambda, leaving Gamma_2 at the real arguments
//! x_{kk'} = (a_k - a_k')/eps, which the (1,1)-signature ladder evaluates.
//! The complex prefactor M^{...} makes Z_pert a complex number of constant
//! phase; the modulus is what enters free energies, the phase is carried for
//! the dual partition function.

use crate::error::Result;
use crate::nekrasov::barnes::ln_gamma2_one_one_signed;
use crate::nekrasov::params::GaugeParams;
use crate::numerics::summation::pairwise_sum;

/// log Z_pert split into modulus and phase.
#[derive(Debug, Clone, Copy)]
pub struct LogZPert {
    pub ln_modulus: f64,
    /// Phase in (-pi, pi].
    pub phase: f64,
}

/// ln Z_pert. Requires pole avoidance (Gamma_2 poles sit exactly on the
/// pole locus a_i - a_j in eps Z).
pub fn log_z_pert(g: &GaugeParams) -> Result<LogZPert> {
    g.check_pole_avoidance()?;
    let r = g.rank();
    // Collect x = (a_k - a_k')/eps over ordered pairs, canonically sorted so
    // the sum is exactly invariant under permutations of a.
    let mut xs: Vec<f64> = Vec::with_capacity(r * r);
    for k in 0..r {
        for kp in 0..r {
            xs.push((g.a[k] - g.a[kp]) / g.epsilon);
        }
    }
    xs.sort_by(f64::total_cmp);

    // ln Z_pert = -sum (x^2/2 - 1/12) Log M + sum lnGamma_2(x+1 | 1,1),
    // M = i eps / Lambda.
    let ln_abs_m = (g.epsilon.abs() / g.lambda).ln();
    let arg_m = std::f64::consts::FRAC_PI_2 * g.epsilon.signum();

    let mut exponents: Vec<f64> = Vec::with_capacity(xs.len());
    let mut gammas: Vec<f64> = Vec::with_capacity(xs.len());
    let mut phase = 0.0f64;
    for &x in &xs {
        exponents.push(0.5 * x * x - 1.0 / 12.0);
        let (ln_abs, sign) = ln_gamma2_one_one_signed(x + 1.0)?;
        gammas.push(ln_abs);
        if sign < 0 {
            phase += std::f64::consts::PI;
        }
    }
    let s_e = pairwise_sum(&exponents);
    let ln_modulus = -s_e * ln_abs_m + pairwise_sum(&gammas);
    phase -= s_e * arg_m;
    // normalize to (-pi, pi]
    phase = phase.rem_euclid(std::f64::consts::TAU);
    if phase > std::f64::consts::PI {
        phase -= std::f64::consts::TAU;
    }
    Ok(LogZPert { ln_modulus, phase })
}

/// |Z_pert|.
pub fn z_pert(g: &GaugeParams) -> Result<f64> {
    Ok(log_z_pert(g)?.ln_modulus.exp())
}
