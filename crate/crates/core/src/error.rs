//! Error taxonomy shared by every module in the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the dispersion/spectra/zeros/modes
/// pipeline. Pure evaluation never panics; all failure modes are routed
/// through this enum.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside an operation's domain (on-axis evaluation, negative
    /// spectrum point, pole outside the integration interval, ...).
    Domain(String),
    /// An adaptive process ran out of budget or an iteration failed to
    /// converge to the requested residual.
    Convergence(String),
    /// The frequency sits where the winding index is not numerically
    /// decidable: the traced curve passes through (or hugs) the origin, or
    /// the frequency lies inside the critical boundary band.
    BoundaryIndeterminate { omega1: f64, detail: String },
    /// The boundary-value ratio G could not be formed because the minus
    /// boundary value vanished at this spectrum point.
    SingularCoefficient { mu: f64 },
    /// The dispersion function has no zeros for this frequency.
    NoDiscreteSpectrum { omega1: f64 },
    /// The unwrapped argument did not land near an integer turn count.
    Unwrap { turns: f64 },
    /// An expansion grid is unusable for the requested evaluation.
    Grid(String),
    /// An expansion file could not be parsed into a valid `ModeExpansion`.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence(msg) => write!(f, "convergence failure: {msg}"),
            Error::BoundaryIndeterminate { omega1, detail } => write!(
                f,
                "boundary-indeterminate at omega1 = {omega1}: {detail}"
            ),
            Error::SingularCoefficient { mu } => write!(
                f,
                "singular coefficient: minus boundary value vanishes at mu = {mu}"
            ),
            Error::NoDiscreteSpectrum { omega1 } => write!(
                f,
                "no discrete spectrum at omega1 = {omega1}: the dispersion function has no zeros off the real axis"
            ),
            Error::Unwrap { turns } => write!(
                f,
                "argument unwrap did not resolve to an integer turn count (got {turns})"
            ),
            Error::Grid(msg) => write!(f, "grid error: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
