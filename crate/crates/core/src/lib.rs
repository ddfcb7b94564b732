//! Spectral machinery for the oscillatory kinetic half-space problem: a
//! gas governed by a relaxation kinetic equation, driven by a wall
//! oscillating in its own plane.
//!
//! After separating the harmonic time factor, every bounded solution is a
//! superposition of exponential modes `exp(-x1 z0 / eta) F(eta, mu)` with
//! `z0 = 1 - i omega1`. The admissible spectral points `eta` are governed
//! by one dispersion function, and everything in this crate hangs off it:
//!
//! - [`dispersion`] — the function itself, its one-sided boundary values
//!   on the real axis, and its large-argument tail;
//! - [`spectra`] — the boundary-ratio curve, its winding index, and the
//!   critical frequency where the index regime ends;
//! - [`zeros`] — counting and locating the discrete zeros off the axis;
//! - [`modes`] — eigenmodes (continuous, discrete, degenerate), general
//!   expansions, the kinetic-balance residual, and velocity moments;
//! - [`numerics`] — the adaptive quadrature and principal-value engines
//!   the rest is built on;
//! - [`format`] — deterministic text output (15-digit scientific floats,
//!   key-sorted JSON).
//!
//! The commonly used types and operations re-export from the crate root.
//!
//! # Example
//!
//! ```
//! use stokes_spectra::{find_eta0, lambda, Omega1};
//!
//! let omega1 = Omega1::new(0.5).unwrap();
//! let report = find_eta0(omega1).unwrap();
//! let eta0 = report.eta0.unwrap();
//! // the located zero satisfies the dispersion equation
//! assert!(lambda(eta0, omega1).unwrap().norm() < 1e-10);
//! ```

pub mod dispersion;
pub mod error;
mod faddeeva;
pub mod format;
pub mod modes;
pub mod numerics;
pub mod spectra;
pub mod zeros;

pub use dispersion::{
    boundary_values, lambda, lambda0, lambda0_prime, lambda0_real, laurent_tail, s,
    BoundaryPair, Omega1, AXIS_TOL,
};
pub use error::{Error, Result};
pub use modes::{
    assemble_solution, continuous_mode, degenerate_modes, discrete_mode, kinetic_residual,
    velocity_amplitude, velocity_moment, ContinuousMode, DegenerateMode, DiscreteMode,
    ModeExpansion, SolutionEvaluator,
};
pub use numerics::{
    integrate_gauss_halfline, integrate_gauss_halfline_with_breaks, pv_integral, pv_on_interval,
    Grid, GridKind, DEFAULT_TOL,
};
pub use spectra::{
    critical_frequency, critical_point, g_of_mu, index_kappa, mu0, through_origin_frequency,
    trace_gamma, y1_roots, GammaCurve, GammaSample, RootPair, TraceControls, CRITICAL_BAND,
};
pub use zeros::{classify_regime, count_zeros, find_eta0, Regime, SpectrumReport};
