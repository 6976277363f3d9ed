//! Instanton counting for pure U(r) gauge theory, organized as an ensemble of
//! random partitions.
//!
//! The crate is split along the three descriptions of the same object and the
//! machinery connecting them:
//!
//! - [`partitions`]: exact combinatorics of integer partitions — dimensions,
//!   Plancherel mass, fermionic particle coordinates, r-quotients, profiles,
//!   and periodic-potential energies.
//! - [`nekrasov`]: localization fixed-point weights, the instanton series,
//!   the Barnes double-Gamma perturbative factor, the full partition function
//!   Z, and the dual partition function with its two evaluation routes.
//! - [`swcurve`]: numerical Seiberg-Witten geometry — maximal curves, bands
//!   and gaps, periods a and a-dual, curve fitting, and the prepotential.
//! - [`limitshape`]: the variational problem for the limit shape — actions,
//!   surface tension, the conformal-map minimizer, complementary slackness,
//!   Legendre duality, and a Metropolis sampler for empirical checks.
//! - [`stepped`]: the three-dimensional counterpart — Ronkin functions and
//!   amoebas of plane curves, stepped-surface tension, the complex Burgers
//!   equation, and frozen boundaries.
//!
//! Shared numerical kernels (adaptive quadrature, polynomial root finding,
//! deterministic summation) live in [`numerics`].

pub mod error;
pub mod limitshape;
pub mod nekrasov;
pub mod numerics;
pub mod partitions;
pub mod stepped;
pub mod swcurve;

pub use error::{Error, Result};
