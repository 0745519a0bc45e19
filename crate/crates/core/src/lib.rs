//! Ergotropy and its coherent/incoherent split for small multi-qubit
//! density matrices under Markovian noise.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; file formats and the command-line surface live in
//! the `qwork` companion crate.
//!
//! Module map:
//!
//! - [`matcore`]: dense complex matrices, Hermitian eigensolvers, Kronecker
//!   products, partial traces, trace norms.
//! - [`qstate`]: Bloch vectors, Bell-diagonal states, locally coherent
//!   separable families, entangled examples, Hamiltonians.
//! - [`channels`]: Kraus channels, analytic Bloch/BDS maps, Lindblad evolution.
//! - [`workx`]: passive states, ergotropy, dephasing, coherence, thresholds,
//!   concurrence.
//! - [`correlations`]: geometric quantum/classical correlations of
//!   Bell-diagonal states and the total-work identity checker.
//! - [`experiments`]: parameter sweeps that produce tabular results.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod channels;
pub mod correlations;
mod error;
pub mod experiments;
pub mod math;
pub mod matcore;
pub mod qstate;
pub mod workx;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

pub use channels::{ChannelKind, ChannelSpec, LindbladSpec};
pub use matcore::{ComplexMatrix, SpectralDecomposition};
pub use qstate::{BdsParams, BlochVector, DensityMatrix, Hamiltonian, HamiltonianKind, LocalQubitParams};
pub use workx::ErgotropyReport;
