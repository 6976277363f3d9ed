//! Stepped surfaces: Ronkin functions and amoebas of plane curves, the
//! stepped-surface tension, the complex Burgers equation, and frozen
//! boundaries.

mod burgers;
mod curve2;
mod frozen;
mod height;
mod ronkin;

pub use burgers::{burgers_solve, z_system_poly, BurgersData, BurgersPoint};
pub use curve2::PlaneCurve;
pub use frozen::{frozen_boundary, FrozenBoundary};
pub use height::{height_reconstruct, HeightField};
pub use ronkin::{
    amoeba_membership, ronkin, ronkin_gradient, surface_tension_step, Membership,
};
