use hilbert_lattice::doublewell::{build, default_params};
use hilbert_lattice::linalg::{SpectralSystem, StateVector};

#[test]
fn default_system_solves_cleanly() {
    let sys = build(default_params()).unwrap();
    let norm = sys.spectrum().spectral_norm();
    assert!(sys.spectrum().max_residual(sys.hamiltonian()) <= 1e-9 * norm);
    assert!(sys.spectrum().orthonormality_defect() <= 1e-10);
    for n in [1, 2, 150, 298, 301] {
        let w = sys.wavefunction(n).unwrap();
        assert!((w.probabilities.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn wavefunctions_localize_as_expected() {
    let sys = build(default_params()).unwrap();
    let l = sys.l() as i64;
    let ground = sys.wavefunction(1).unwrap();
    let mass = |keep: &dyn Fn(i64) -> bool| -> f64 {
        ground
            .probabilities
            .iter()
            .enumerate()
            .filter(|(s, _)| keep(sys.site(*s).abs()))
            .map(|(_, p)| p)
            .sum()
    };
    // The wells are centred on ±l/2; the ground state sits in both, away
    // from the central barrier and the edges.
    let in_wells = mass(&|j| j > l / 30 && j < l - l / 30);
    assert!(
        in_wells > 0.99,
        "ground-state mass inside the wells {in_wells}"
    );
    let inner_halves = mass(&|j| j < l / 2);
    assert!((inner_halves - 0.5).abs() < 0.02, "{inner_halves}");

    let top = sys.wavefunction(sys.dim()).unwrap();
    let argmax = top
        .probabilities
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    assert!([-l, 0, l].contains(&sys.site(argmax)));
    let central = sys.wavefunction(sys.dim() - 2).unwrap();
    let peak = central
        .probabilities
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    assert_eq!(sys.site(peak), 0);
}

#[test]
fn evolution_preserves_norm_and_energy() {
    let sys = build(default_params()).unwrap();
    let psi = StateVector::normalize(
        (0..sys.dim())
            .map(|s| {
                let j = sys.site(s) as f64;
                (-(j + 75.0).powi(2) / 200.0).exp().into()
            })
            .collect(),
    )
    .unwrap();
    let e0 = sys.hamiltonian().expectation(&psi).unwrap();
    for t in [0.1, 1.0, 10.0, 100.0] {
        let out = sys.spectrum().evolve(&psi, t).unwrap();
        assert!((out.norm() - 1.0).abs() <= 1e-10);
        let e = sys.hamiltonian().expectation(&out).unwrap();
        assert!((e - e0).abs() <= 1e-9 * e0.abs().max(1.0));
    }
}
