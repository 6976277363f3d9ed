//! The variational problem for the limit shape: action functionals, surface
//! tension, the conformal-map minimizer, complementary slackness, Legendre
//! duality, and a Metropolis sampler for empirical confirmation.

mod action;
mod legendre;
mod mcmc;
mod phi;
mod psi;
mod slackness;
mod tension;

pub use action::action_plancherel;
pub use legendre::{
    legendre_check, minimizer_action, xi_from_gaps, LegendreOptions, LegendreReport,
};
pub use mcmc::{add_box_weight_ratio, mcmc_run, mcmc_sample, McmcConfig, McmcStats};
pub use phi::{conformal_phi, gap_im_phi_integrals, im_phi_real_axis, psi_star_slope};
pub use psi::{facet_intercepts, psi_star, FacetIntercepts, PsiStar};
pub use slackness::{kernel_convolution, slackness_check, VariationalReport};
pub use tension::{action_surf, surface_tension, SurfaceTension};
