//! Dense complex linear algebra: matrices, states, the Hermitian
//! eigensolver and the spectral propagator.

mod eigen;
mod matrix;
mod state;

pub use eigen::{evolve, hermitian_eigendecompose, spectral_norm, HermitianOperator, SpectralData};
pub use matrix::{inner, norm_sqr, ComplexMatrix};
pub use state::StateVector;

pub use num_complex::Complex64;

use crate::error::Result;

/// A Hamiltonian together with its eigendecomposition.
pub trait SpectralSystem {
    fn hamiltonian(&self) -> &HermitianOperator;
    fn spectrum(&self) -> &SpectralData;

    fn dim(&self) -> usize {
        self.hamiltonian().dim()
    }
}

/// Owned Hamiltonian plus spectrum.
#[derive(Debug, Clone)]
pub struct Diagonalized {
    hamiltonian: HermitianOperator,
    spectrum: SpectralData,
}

impl Diagonalized {
    pub fn new(hamiltonian: HermitianOperator) -> Result<Self> {
        let spectrum = hermitian_eigendecompose(&hamiltonian)?;
        Ok(Self {
            hamiltonian,
            spectrum,
        })
    }

    /// The same dynamics written in its own energy eigenbasis:
    /// H = diag(E₁ ≤ … ≤ E_N) with identity eigenvectors.
    pub fn energy_representation<S: SpectralSystem + ?Sized>(system: &S) -> Self {
        let e = system.spectrum().eigenvalues().to_vec();
        Self {
            hamiltonian: HermitianOperator::from_real_diagonal(&e),
            spectrum: SpectralData::diagonal(e),
        }
    }
}

impl SpectralSystem for Diagonalized {
    fn hamiltonian(&self) -> &HermitianOperator {
        &self.hamiltonian
    }

    fn spectrum(&self) -> &SpectralData {
        &self.spectrum
    }
}
