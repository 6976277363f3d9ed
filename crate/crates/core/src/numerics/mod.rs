//! Shared numerical kernels.

pub mod quadrature;
pub mod richardson;
pub mod roots;
pub mod summation;
