//! Angular momentum of electric-dipole (E1) photons.
//!
//! The crate is organised around five numerical modules:
//!
//! * [`fock_core`]: truncated multimode bosonic Fock space, ladder operators,
//!   states and expectation values.
//! * [`angular_algebra`]: total angular momentum `J`, the SU(3) generator set,
//!   position-scaled spin/orbital density operators and their commutator checks.
//! * [`radial_fields`]: cavity-normalized spherical Bessel modes, the radial
//!   spin/OAM density functions and near/intermediate/wave-zone diagnostics.
//! * [`decay_dynamics`]: Markov decay amplitudes and the spin expectation curve.
//! * [`twin_entanglement`]: two-qutrit photon twins, the entanglement measure,
//!   its maximization and the pair-emission selection rule.
//!
//! Data-parallel loops (radial sampling, time grids, optimizer grids) go through
//! [`Execution`]; with the `parallel` feature disabled everything runs
//! sequentially and produces bit-identical results.

pub mod angular_algebra;
pub mod decay_dynamics;
mod error;
mod exec;
pub mod fmt;
pub mod fock_core;
pub mod linalg;
pub mod optimize;
pub mod quadrature;
pub mod radial_fields;
pub mod twin_entanglement;

pub use error::{Error, Result};
pub use exec::Execution;

/// Tolerance used for every exact-algebra assertion on complex matrices.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Report schema version written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;
