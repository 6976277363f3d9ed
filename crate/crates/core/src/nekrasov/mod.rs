//! Localization fixed-point weights, the instanton series, the Barnes
//! double-Gamma perturbative factor, the full partition function Z, and the
//! dual partition function with its two evaluation routes.

mod barnes;
mod dual;
mod laurent;
mod params;
mod pert;
mod series;
mod weight;

pub use barnes::{log_gamma2, ln_gamma2_one_one_signed, BarnesParams, ZETA_PRIME_MINUS_ONE};
pub use dual::{dual_z_lattice, dual_z_partitions, DualZ};
pub use laurent::Laurent;
pub use params::{GaugeParams, PartitionTuple};
pub use pert::{log_z_pert, z_pert, LogZPert};
pub use series::{
    free_energy_estimate, instanton_coefficient, instanton_coefficient_exact_r1, ln_z_full,
    z_full, z_inst, FreeEnergyEstimate, ZInst,
};
pub use weight::{character_term_count, tangent_weight};
