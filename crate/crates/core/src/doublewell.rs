//! The finite-dimensional double well H = π̂²/2 + V̂(φ̂), ħ = m = 1.
//!
//! The potential is nonzero on three sites only: V₀ on the central barrier
//! j = 0 and V_edge on the two edge sites j = ±l. Because the lattice is
//! cyclic, the edge sites are neighbours and act as a single outer barrier.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gca::{build_conjugate_pair, site_index, site_label, ConjugatePair};
use crate::linalg::{
    hermitian_eigendecompose, ComplexMatrix, HermitianOperator, SpectralData, SpectralSystem,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleWellParams {
    pub l: usize,
    pub v0: f64,
    pub v_edge: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl DoubleWellParams {
    pub fn dim(&self) -> usize {
        2 * self.l + 1
    }

    /// Symmetric scales α = β = √(2π/N) and V_edge = 3V₀ = 10‖π̂²/2‖₂.
    ///
    /// With these scales the largest |π̂| eigenvalue is l·Δπ, so
    /// ‖π̂²/2‖₂ = (l·Δπ)²/2 in closed form.
    pub fn with_l(l: usize) -> Self {
        let n = 2 * l + 1;
        let scale = (2.0 * PI / n as f64).sqrt();
        let kinetic_norm = (l as f64 * scale).powi(2) / 2.0;
        let v_edge = 10.0 * kinetic_norm;
        Self {
            l,
            v0: v_edge / 3.0,
            v_edge,
            alpha: scale,
            beta: scale,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.l == 0 {
            return Err(Error::InvalidParams("l must be at least 1".into()));
        }
        if !(self.v0 > 0.0 && self.v_edge > self.v0 && self.v_edge.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "need V_edge > V0 > 0, got V0 = {}, V_edge = {}",
                self.v0, self.v_edge
            )));
        }
        Ok(())
    }
}

impl Default for DoubleWellParams {
    fn default() -> Self {
        default_params()
    }
}

/// l = 150 (N = 301) with the default barrier heights.
pub fn default_params() -> DoubleWellParams {
    DoubleWellParams::with_l(150)
}

#[derive(Debug, Clone)]
pub struct DoubleWellSystem {
    pub params: DoubleWellParams,
    pub pair: ConjugatePair,
    pub potential: HermitianOperator,
    hamiltonian: HermitianOperator,
    spectrum: SpectralData,
}

/// Site amplitudes and probabilities of one energy eigenstate.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction {
    /// 1-based, ascending energy.
    pub n: usize,
    pub energy: f64,
    /// ⟨φ_j|E_n⟩ in storage order (j = −l..l).
    pub amplitudes: Vec<f64>,
    pub probabilities: Vec<f64>,
}

pub fn build(params: DoubleWellParams) -> Result<DoubleWellSystem> {
    params.validate()?;
    let n = params.dim();
    let l = params.l;
    let pair = build_conjugate_pair(n, params.alpha, params.beta)?;

    let mut v = vec![0.0; n];
    v[site_index(l, 0)] = params.v0;
    v[site_index(l, -(l as i64))] = params.v_edge;
    v[site_index(l, l as i64)] = params.v_edge;
    let potential = HermitianOperator::from_real_diagonal(&v);

    let h = &pair.kinetic().into_matrix() + potential.matrix();
    let hamiltonian = HermitianOperator::new(h)?;
    let spectrum = hermitian_eigendecompose(&hamiltonian)?;
    Ok(DoubleWellSystem {
        params,
        pair,
        potential,
        hamiltonian,
        spectrum,
    })
}

impl DoubleWellSystem {
    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    pub fn l(&self) -> usize {
        self.params.l
    }

    pub fn energies(&self) -> &[f64] {
        self.spectrum.eigenvalues()
    }

    /// Potential values in storage order.
    pub fn potential_values(&self) -> Vec<f64> {
        self.potential
            .matrix()
            .diagonal()
            .iter()
            .map(|z| z.re)
            .collect()
    }

    /// Reflection j → −j in the φ basis.
    pub fn parity(&self) -> ComplexMatrix {
        let n = self.dim();
        let one = crate::linalg::Complex64::new(1.0, 0.0);
        let zero = crate::linalg::Complex64::new(0.0, 0.0);
        ComplexMatrix::from_fn(n, |r, c| if r + c == n - 1 { one } else { zero })
    }

    /// Energy eigenstate `n` (1-based) in the φ basis.
    ///
    /// H is real symmetric, so after the solver's phase convention the
    /// eigenvectors are real up to roundoff; the imaginary parts are dropped.
    pub fn wavefunction(&self, n: usize) -> Result<Wavefunction> {
        if n == 0 || n > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: self.dim(),
            });
        }
        let v = self.spectrum.eigenvector(n - 1);
        let amplitudes: Vec<f64> = v.amplitudes().iter().map(|z| z.re).collect();
        let probabilities = v.amplitudes().iter().map(|z| z.norm_sqr()).collect();
        Ok(Wavefunction {
            n,
            energy: self.energies()[n - 1],
            amplitudes,
            probabilities,
        })
    }

    /// Site label of storage index `s`.
    pub fn site(&self, s: usize) -> i64 {
        site_label(self.l(), s)
    }
}

impl SpectralSystem for DoubleWellSystem {
    fn hamiltonian(&self) -> &HermitianOperator {
        &self.hamiltonian
    }

    fn spectrum(&self) -> &SpectralData {
        &self.spectrum
    }
}
