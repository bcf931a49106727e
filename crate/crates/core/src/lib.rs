//! Finite-dimensional quantum mechanics on a lattice Hilbert space.
//!
//! * [`linalg`]: dense complex matrices, Hermitian eigensolver, propagator.
//! * [`numtheory`]: prime signatures and Ω(n) censuses over 128-bit ranges.
//! * [`gca`]: clock and shift generators and the conjugate pair φ̂, π̂.
//! * [`doublewell`]: the finite double-well Hamiltonian.
//! * [`decomp`]: direct-sum partitions, projectors, Hamiltonian splits.
//! * [`locality`]: tunneling spread, tunnel trace, projected energies.
//! * [`sweep`]: the data-parallel experiment drivers behind the CLI.

pub mod cli;
pub mod decomp;
pub mod doublewell;
pub mod error;
pub mod exec;
pub mod gca;
pub mod linalg;
pub mod locality;
pub mod numtheory;
pub mod sweep;

pub use error::{Error, Result};
pub use exec::Exec;
