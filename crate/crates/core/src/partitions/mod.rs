//! Exact combinatorics of integer partitions.
//!
//! Partitions are the localization fixed points of the whole artifact, so
//! everything in this module is exact: big-integer dimensions, rational
//! Plancherel masses, doubled-integer particle coordinates, and rational
//! quotient shifts. Floats only appear where a value is genuinely analytic
//! (profiles, generating functions, potential energies against real xi).

mod fermion;
mod genfun;
mod partition;
mod potential;
mod profile;
mod quotients;

pub use fermion::{fermion_set, FermionConfig};
pub use genfun::char_g;
pub use partition::Partition;
pub use potential::{potential_energy, potential_energy_shifts, PeriodicPotential};
pub use profile::{profile, ProfileFunction};
pub use quotients::{combine_quotients, r_quotients, RQuotients};
