//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the combinatorial and numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor was handed data violating a type invariant.
    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    /// Fermionic truncation depth smaller than the number of parts.
    #[error("depth {depth} is smaller than the number of parts {parts}")]
    DepthTooSmall { depth: usize, parts: usize },

    /// Shifts incompatible with the congruence r*s = rho mod r*Z^r_0.
    #[error("shifts violate the quotient congruence: {0}")]
    BadShifts(String),

    /// Regularization parameter at a pole of a tail resummation.
    #[error("epsilon at a pole of the tail resummation (e^(i*eps) = 1)")]
    EpsilonPole,

    /// Coulomb parameters on the pole locus a_i - a_j in eps*Z.
    #[error("pole avoidance violated: a_{i} - a_{j} = {value} is within {margin} of {multiple} * eps")]
    PoleHit {
        i: usize,
        j: usize,
        value: f64,
        multiple: i64,
        margin: f64,
    },

    /// Argument at a pole of the Barnes double Gamma function.
    #[error("argument {0} is at a pole of Gamma_2")]
    Gamma2Pole(f64),

    /// The curve is not maximal: P(z) = +-2 Lambda^r has non-real roots.
    #[error("curve not maximal: {0}")]
    NotMaximal(String),

    /// A quadrature failed to reach its tolerance.
    #[error("quadrature did not converge: residual {residual} > tol {tol}")]
    QuadratureDiverged { residual: f64, tol: f64 },

    /// Newton iteration for a curve fit failed.
    #[error("curve fit did not converge: {why}; best residual {residual}")]
    FitDiverged { why: String, residual: f64 },

    /// A path or grid point left the admissible chamber.
    #[error("left the admissible region: {0}")]
    OutsideChamber(String),

    /// Grid minimum landed on the boundary; widen the grid.
    #[error("grid minimum on the boundary ({0}); widen the grid")]
    GridMinimumOnBoundary(String),

    /// Slope outside the admissible interval.
    #[error("slope {slope} outside {domain}")]
    SlopeOutOfRange { slope: f64, domain: &'static str },

    /// A facet was too short to fit a reliable line.
    #[error("facet {index} too short to fit a line (length {length})")]
    FacetTooShort { index: usize, length: f64 },

    /// Bivariate system has no solutions at the requested point.
    #[error("no solutions of the characteristic system at ({x}, {y})")]
    NoSolutions { x: f64, y: f64 },

    /// Curve tracing stalled; partial data is described in the message.
    #[error("boundary tracing failed: {0}")]
    TracingFailed(String),

    /// Gradient field failed the curl (integrability) diagnostic.
    #[error("curl residual {residual} exceeds tolerance {tol}")]
    CurlResidual { residual: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            why: why.into(),
        }
    }
}
