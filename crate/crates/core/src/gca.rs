//! Generalized Clifford algebra on an odd-dimensional space N = 2l + 1.
//!
//! Logical site labels j ∈ {−l, …, l} are stored at index j + l everywhere
//! in the crate. The clock matrix B = diag(ω^j) and the shift matrix A
//! sends |b_j⟩ to |b_{j−1}⟩ cyclically, with ω = exp(2πi/N). They satisfy
//! AB = ωBA and A^N = B^N = I. (With B fixed, the opposite shift direction
//! gives BA = ωAB instead.)
//!
//! The conjugate pair is defined through A = exp(−iαπ̂), B = exp(iβφ̂) with
//! αβ = 2π/N. φ̂ is diagonal with eigenvalues j·Δφ and π̂ = F†·diag(j·Δπ)·F,
//! F_{mj} = ω^{mj}/√N, where Δφ = 2π/(Nβ) and Δπ = 2π/(Nα). These spacings
//! are exactly the ones for which both exponential identities hold.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigendecompose, Complex64, ComplexMatrix, HermitianOperator};

const CONSTRAINT_TOL: f64 = 1e-12;

/// Storage index of site label `j` on a lattice of half-width `l`.
pub fn site_index(l: usize, j: i64) -> usize {
    debug_assert!(j.unsigned_abs() as usize <= l);
    (j + l as i64) as usize
}

/// Site label of storage index `s`.
pub fn site_label(l: usize, s: usize) -> i64 {
    s as i64 - l as i64
}

fn half_width(n: usize) -> Result<usize> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::EvenDimension(n));
    }
    Ok((n - 1) / 2)
}

fn root_of_unity(n: usize, k: i64) -> Complex64 {
    let k = k.rem_euclid(n as i64);
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// Clock and shift generators.
#[derive(Debug, Clone)]
pub struct GcaPair {
    pub n: usize,
    pub l: usize,
    /// A: cyclic shift |b_j⟩ → |b_{j−1}⟩ on clock eigenstates.
    pub shift: ComplexMatrix,
    /// B: diag(ω^{−l}, …, ω^{l}).
    pub clock: ComplexMatrix,
    pub omega: Complex64,
}

impl GcaPair {
    /// ‖AB − ωBA‖_max.
    pub fn braiding_residual(&self) -> f64 {
        let ab = self.shift.matmul(&self.clock);
        let ba = self.clock.matmul(&self.shift).scale(self.omega);
        ab.max_abs_diff(&ba)
    }

    /// (‖A^N − I‖_max, ‖B^N − I‖_max).
    pub fn cyclic_residuals(&self) -> (f64, f64) {
        let id = ComplexMatrix::identity(self.n);
        (
            self.shift.pow(self.n as u64).max_abs_diff(&id),
            self.clock.pow(self.n as u64).max_abs_diff(&id),
        )
    }
}

/// Clock and shift matrices for odd `n`.
pub fn build_gca(n: usize) -> Result<GcaPair> {
    let l = half_width(n)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let shift = ComplexMatrix::from_fn(n, |row, col| if (row + 1) % n == col { one } else { zero });
    let clock_diag: Vec<Complex64> = (0..n).map(|s| root_of_unity(n, site_label(l, s))).collect();
    Ok(GcaPair {
        n,
        l,
        shift,
        clock: ComplexMatrix::from_diagonal(&clock_diag),
        omega: root_of_unity(n, 1),
    })
}

/// Centered discrete Fourier matrix F_{mj} = ω^{mj}/√N, m, j ∈ {−l..l}.
pub fn centered_fourier(n: usize) -> Result<ComplexMatrix> {
    let l = half_width(n)?;
    let norm = 1.0 / (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, |r, c| {
        root_of_unity(n, site_label(l, r) * site_label(l, c)) * norm
    }))
}

/// Finite-dimensional conjugate variables φ̂ (position-like, diagonal) and
/// π̂ (momentum-like).
#[derive(Debug, Clone)]
pub struct ConjugatePair {
    pub n: usize,
    pub l: usize,
    pub alpha: f64,
    pub beta: f64,
    pub phi: HermitianOperator,
    pub pi: HermitianOperator,
    pub delta_phi: f64,
    pub delta_pi: f64,
    pub gca: GcaPair,
}

impl ConjugatePair {
    /// exp(−iαπ̂), computed from an eigendecomposition of π̂.
    pub fn shift_from_pi(&self) -> Result<ComplexMatrix> {
        Ok(hermitian_eigendecompose(&self.pi)?.exp_i(-self.alpha))
    }

    /// exp(iβφ̂), computed from an eigendecomposition of φ̂.
    pub fn clock_from_phi(&self) -> Result<ComplexMatrix> {
        Ok(hermitian_eigendecompose(&self.phi)?.exp_i(self.beta))
    }

    /// Eigenvalues of φ̂ in storage order: j·Δφ.
    pub fn phi_values(&self) -> Vec<f64> {
        (0..self.n)
            .map(|s| site_label(self.l, s) as f64 * self.delta_phi)
            .collect()
    }

    /// π̂²/2, the kinetic operator.
    pub fn kinetic(&self) -> HermitianOperator {
        let p2 = self
            .pi
            .matrix()
            .matmul(self.pi.matrix())
            .scale(Complex64::new(0.5, 0.0));
        HermitianOperator::new(p2).expect("square of a Hermitian operator is Hermitian")
    }
}

/// Builds φ̂ and π̂ on N = 2l + 1 sites. Requires |αβ − 2π/N| ≤ 1e-12.
pub fn build_conjugate_pair(n: usize, alpha: f64, beta: f64) -> Result<ConjugatePair> {
    let l = half_width(n)?;
    if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "alpha and beta must be positive, got {alpha}, {beta}"
        )));
    }
    let expected = 2.0 * PI / n as f64;
    let product = alpha * beta;
    if (product - expected).abs() > CONSTRAINT_TOL {
        return Err(Error::ScaleConstraint { product, expected });
    }
    let gca = build_gca(n)?;
    let delta_phi = 2.0 * PI / (n as f64 * beta);
    let delta_pi = 2.0 * PI / (n as f64 * alpha);

    let phi_diag: Vec<f64> = (0..n)
        .map(|s| site_label(l, s) as f64 * delta_phi)
        .collect();
    let phi = HermitianOperator::from_real_diagonal(&phi_diag);

    // π̂ is circulant: π_{mn} = (Δπ/N) Σ_j j ω^{(n−m)j}.
    let kernel: Vec<Complex64> = (0..n)
        .map(|d| {
            let sum: Complex64 = (-(l as i64)..=l as i64)
                .map(|j| root_of_unity(n, -(d as i64) * j) * j as f64)
                .sum();
            sum * (delta_pi / n as f64)
        })
        .collect();
    let pi_matrix = ComplexMatrix::from_fn(n, |r, c| kernel[(r + n - c) % n]);
    let pi = HermitianOperator::new(pi_matrix)?;

    Ok(ConjugatePair {
        n,
        l,
        alpha,
        beta,
        phi,
        pi,
        delta_phi,
        delta_pi,
        gca,
    })
}

/// The canonical symmetric choice α = β = √(2π/N).
pub fn build_symmetric_pair(n: usize) -> Result<ConjugatePair> {
    let s = (2.0 * PI / n as f64).sqrt();
    build_conjugate_pair(n, s, s)
}

/// ‖exp(−iαπ̂)·exp(iβφ̂) − ω·exp(iβφ̂)·exp(−iαπ̂)‖_max.
pub fn weyl_residual(pair: &ConjugatePair) -> Result<f64> {
    let a = pair.shift_from_pi()?;
    let b = pair.clock_from_phi()?;
    let ab = a.matmul(&b);
    let ba = b.matmul(&a).scale(pair.gca.omega);
    Ok(ab.max_abs_diff(&ba))
}
