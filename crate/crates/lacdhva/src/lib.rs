//! Landau-Aharonov-Casher quantization and de Haas-van Alphen oscillations
//! for a two-dimensional neutral-atom gas in a radial electric field.
//!
//! A z-aligned magnetic dipole moving through the radial field of a uniform
//! charge density sees a uniform synthetic magnetic field B = rho0/epsilon0
//! (in effective tesla, N/(C·m)) and arranges itself into equally spaced
//! levels of degeneracy D = rho·B. Sweeping 1/B at zero temperature makes
//! the energy and effective magnetization of a fixed-N gas oscillate with
//! period rho/N; the library computes the spectrum, the eigenfunctions, the
//! sweep observables and the period/Fermi-area analysis, and cross-checks
//! the analytic spectrum against an independent finite-difference solver.

pub mod cli;
pub mod constants;
pub mod dhva;
mod error;
pub mod fd;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
