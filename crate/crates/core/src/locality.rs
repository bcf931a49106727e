//! Direct-sum locality diagnostics.
//!
//! For a state ψ projected onto H_A, the leakage f(t) = ⟨ψ(t)|P_B|ψ(t)⟩
//! grows as 𝕋·t² for small t. The tunneling spread 𝕋 = ‖H_tunnel ψ_A‖² is
//! computed in closed form by [`tunneling_spread`] and independently, from
//! the exact propagator, by [`spread_via_evolution`].

use crate::decomp::{
    project_state, projected_weight, split_hamiltonian, Convention, HamiltonianSplit, Partition,
    Side, NULL_WEIGHT,
};
use crate::error::{Error, Result};
use crate::linalg::{norm_sqr, SpectralSystem, StateVector};

/// One row of a spread scan.
#[derive(Debug, Clone, PartialEq)]
pub struct SpreadRecord {
    /// 1-based energy index.
    pub n: usize,
    pub energy: f64,
    /// `None` when the eigenstate has no support on A.
    pub spread: Option<f64>,
    pub projected_energy: Option<f64>,
    pub partition: String,
}

fn projected_nonnull(
    psi: &StateVector,
    p: &Partition,
    side: Side,
    convention: Convention,
) -> Result<StateVector> {
    if psi.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: psi.dim(),
        });
    }
    let projected = project_state(psi, p, side, convention);
    if projected.is_null() {
        Err(Error::ZeroProjection)
    } else {
        Ok(projected)
    }
}

/// 𝕋(ψ, A) = ⟨ψ_A|H_tunnel²|ψ_A⟩.
pub fn tunneling_spread(
    psi: &StateVector,
    split: &HamiltonianSplit,
    p: &Partition,
    convention: Convention,
) -> Result<f64> {
    tunneling_spread_in(psi, split, p, Side::A, convention)
}

/// Tunneling spread with respect to either side.
pub fn tunneling_spread_in(
    psi: &StateVector,
    split: &HamiltonianSplit,
    p: &Partition,
    side: Side,
    convention: Convention,
) -> Result<f64> {
    let psi_side = projected_nonnull(psi, p, side, convention)?;
    let leaked = split.h_tunnel.apply(&psi_side)?;
    Ok(norm_sqr(leaked.amplitudes()))
}

/// Default finite-difference step, 1e-4/√‖H‖₂.
pub fn default_oracle_step<S: SpectralSystem + ?Sized>(system: &S) -> f64 {
    1e-4 / system.spectrum().spectral_norm().max(1.0).sqrt()
}

/// ½ f''(0) from a five-point central stencil on the exactly evolved
/// leakage f(t) = ⟨ψ(t)|P_B|ψ(t)⟩, ψ(0) = ψ_A.
pub fn spread_via_evolution<S: SpectralSystem + ?Sized>(
    psi: &StateVector,
    system: &S,
    p: &Partition,
    convention: Convention,
    dt: f64,
) -> Result<f64> {
    let psi0 = projected_nonnull(psi, p, Side::A, convention)?;
    let leak = |t: f64| -> Result<f64> {
        let psi_t = system.spectrum().evolve(&psi0, t)?;
        Ok(projected_weight(&psi_t, p, Side::B))
    };
    let f0 = leak(0.0)?;
    let f1 = leak(dt)?;
    let fm1 = leak(-dt)?;
    let f2 = leak(2.0 * dt)?;
    let fm2 = leak(-2.0 * dt)?;
    let second = (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * dt * dt);
    Ok(0.5 * second)
}

/// Tr(H_tunnel²) = Σ_j ⟨o_j|H_tunnel²|o_j⟩ = Σ_{ij} |H_tunnel,ij|².
pub fn tunnel_trace(split: &HamiltonianSplit) -> f64 {
    split.h_tunnel.matrix().frobenius_norm().powi(2)
}

/// (E_n)_A = ⟨E_n|P_A H P_A|E_n⟩ / ⟨E_n|P_A|E_n⟩^k with k = 2 (weighted) or
/// k = 1 (unit). `n` is 1-based.
pub fn projected_energy<S: SpectralSystem + ?Sized>(
    n: usize,
    system: &S,
    p: &Partition,
    convention: Convention,
) -> Result<f64> {
    let dim = system.dim();
    if n == 0 || n > dim {
        return Err(Error::IndexOutOfRange { index: n, len: dim });
    }
    let state = system.spectrum().eigenvector(n - 1);
    let weight = projected_weight(&state, p, Side::A);
    if weight < NULL_WEIGHT {
        return Err(Error::ZeroProjection);
    }
    // The unit-convention projection is P_A|E_n⟩/√w, so its expectation
    // value already carries one factor of 1/w.
    let unit = project_state(&state, p, Side::A, Convention::Unit);
    let energy = system.hamiltonian().expectation(&unit)?;
    Ok(match convention {
        Convention::Unit => energy,
        Convention::Weight => energy / weight,
    })
}

/// ‖exp(−iHt)ψ₀ − ψ_series(t)‖ where ψ₀ = P_Aψ/⟨ψ|P_A|ψ⟩ and ψ_series is
/// the second-order expansion assembled from the split blocks:
///
/// ψ₀ − it(H_A + H_t)ψ₀ − ½t²(H_A² + H_t² + H_B H_t + H_t H_A)ψ₀.
///
/// The residual is O(t³).
pub fn expansion_check<S: SpectralSystem + ?Sized>(
    psi: &StateVector,
    system: &S,
    p: &Partition,
    t: f64,
) -> Result<f64> {
    let split = split_hamiltonian(system.hamiltonian(), p)?;
    let psi0 = projected_nonnull(psi, p, Side::A, Convention::Weight)?;
    let exact = system.spectrum().evolve(&psi0, t)?;

    let ha_psi = split.h_a.apply(&psi0)?;
    let ht_psi = split.h_tunnel.apply(&psi0)?;
    let second: Vec<_> = {
        let a = split.h_a.apply(&ha_psi)?;
        let b = split.h_tunnel.apply(&ht_psi)?;
        let c = split.h_b.apply(&ht_psi)?;
        let d = split.h_tunnel.apply(&ha_psi)?;
        (0..psi0.dim())
            .map(|i| a.amplitudes()[i] + b.amplitudes()[i] + c.amplitudes()[i] + d.amplitudes()[i])
            .collect()
    };
    let i_t = crate::linalg::Complex64::new(0.0, t);
    let residual: Vec<_> = (0..psi0.dim())
        .map(|i| {
            let first = ha_psi.amplitudes()[i] + ht_psi.amplitudes()[i];
            let series = psi0.amplitudes()[i] - i_t * first - second[i] * (0.5 * t * t);
            exact.amplitudes()[i] - series
        })
        .collect();
    Ok(norm_sqr(&residual).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{energy_partition, Basis, Provenance};
    use crate::linalg::{Complex64, ComplexMatrix, Diagonalized, HermitianOperator};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn four_level() -> Diagonalized {
        let h = HermitianOperator::new(
            ComplexMatrix::from_real_rows(&[
                &[1.0, 0.5, 0.2, 0.0],
                &[0.5, 2.0, 0.0, 0.3],
                &[0.2, 0.0, -1.0, 0.4],
                &[0.0, 0.3, 0.4, 0.5],
            ])
            .unwrap(),
        )
        .unwrap();
        Diagonalized::new(h).unwrap()
    }

    #[test]
    fn basis_state_spread_conventions_agree() {
        let sys = four_level();
        let p = Partition::new(4, Basis::Energy, &[0, 1], Provenance::Canonical).unwrap();
        let split = split_hamiltonian(sys.hamiltonian(), &p).unwrap();
        let e0 = StateVector::basis(4, 0);
        let weighted = tunneling_spread(&e0, &split, &p, Convention::Weight).unwrap();
        let unit = tunneling_spread(&e0, &split, &p, Convention::Unit).unwrap();
        assert_eq!(weighted, unit);
        // ⟨e0|H_t²|e0⟩ = 0.2²
        assert!((weighted - 0.04).abs() < 1e-15);
        assert_eq!(
            tunneling_spread(&StateVector::basis(4, 3), &split, &p, Convention::Weight),
            Err(Error::ZeroProjection)
        );
    }

    #[test]
    fn projected_energy_matches_dense_arithmetic() {
        let sys = four_level();
        let p = Partition::new(4, Basis::Energy, &[0, 3], Provenance::Canonical).unwrap();
        let h = sys.hamiltonian().matrix();
        for n in 1..=4 {
            let v = sys.spectrum().eigenvector(n - 1);
            // Dense P·H·P with explicit projector matrices.
            let proj = crate::decomp::projector(&p, Side::A);
            let php = proj.matrix().matmul(h).matmul(proj.matrix());
            let num = v
                .inner(&StateVector::new(php.mul_vec(v.amplitudes())).unwrap())
                .re;
            let w = v
                .inner(&StateVector::new(proj.matrix().mul_vec(v.amplitudes())).unwrap())
                .re;
            let weighted = projected_energy(n, &sys, &p, Convention::Weight).unwrap();
            let unit = projected_energy(n, &sys, &p, Convention::Unit).unwrap();
            assert!((weighted - num / (w * w)).abs() < 1e-12 * (1.0 + weighted.abs()));
            assert!((unit - num / w).abs() < 1e-12 * (1.0 + unit.abs()));
        }
        assert!(projected_energy(5, &sys, &p, Convention::Unit).is_err());
    }

    #[test]
    fn energy_basis_is_tunnel_free() {
        let sys = four_level();
        let eb = Diagonalized::energy_representation(&sys);
        let p = energy_partition(4, 2).unwrap();
        let split = split_hamiltonian(eb.hamiltonian(), &p).unwrap();
        assert_eq!(tunnel_trace(&split), 0.0);
        let psi = StateVector::normalize(vec![c(1.0), c(2.0), c(0.5), c(0.0)]).unwrap();
        assert_eq!(
            tunneling_spread(&psi, &split, &p, Convention::Weight).unwrap(),
            0.0
        );
        let dt = default_oracle_step(&eb);
        assert!(
            spread_via_evolution(&psi, &eb, &p, Convention::Weight, dt)
                .unwrap()
                .abs()
                < 1e-12
        );
        // Eigenstate inside A keeps its energy under projection.
        let e1 = projected_energy(1, &eb, &p, Convention::Unit).unwrap();
        assert_eq!(e1, eb.spectrum().eigenvalues()[0]);
    }

    #[test]
    fn expansion_vanishes_at_zero_and_scales_cubically() {
        let sys = four_level();
        let p = Partition::new(4, Basis::Energy, &[0, 2], Provenance::Canonical).unwrap();
        let psi = StateVector::normalize(vec![c(1.0), c(-0.5), c(0.7), c(0.2)]).unwrap();
        assert!(expansion_check(&psi, &sys, &p, 0.0).unwrap() < 1e-15);
        let t = 1e-2;
        let r1 = expansion_check(&psi, &sys, &p, t).unwrap();
        let r2 = expansion_check(&psi, &sys, &p, t / 2.0).unwrap();
        assert!((r1 / r2 - 8.0).abs() < 0.2, "ratio {}", r1 / r2);
    }
}
