//! Numerical Seiberg-Witten geometry.

mod curve;
mod fit;
mod periods;
mod prepotential;

pub use curve::{band_gap, w_branch, BandGapStructure, SWCurve};
pub use fit::{fit_curve_from_a, fit_curve_from_xi};
pub use periods::{periods_a, periods_a_dual, PeriodReport};
pub use prepotential::{
    is_positive_definite, perturbative_prepotential, prepotential, prepotential_hessian,
    PrepotentialContext,
};
