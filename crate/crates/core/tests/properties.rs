use hilbert_lattice::decomp::{
    canonical_partition, project_state, projected_weight, scramble, split_hamiltonian, Basis,
    Convention, Partition, Provenance, ScrambleSequence, Side,
};
use hilbert_lattice::linalg::{
    hermitian_eigendecompose, Complex64, ComplexMatrix, HermitianOperator, StateVector,
};
use hilbert_lattice::numtheory::factorize;
use proptest::prelude::*;

fn hermitian(dim: usize, entries: &[(f64, f64)]) -> HermitianOperator {
    let mut m = ComplexMatrix::zeros(dim);
    let mut k = 0;
    for i in 0..dim {
        m[(i, i)] = Complex64::new(entries[k].0, 0.0);
        k += 1;
        for j in i + 1..dim {
            let z = Complex64::new(entries[k].0, entries[k].1);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
            k += 1;
        }
    }
    HermitianOperator::new(m).unwrap()
}

fn hermitian_strategy(
    dims: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = HermitianOperator> {
    dims.prop_flat_map(|d| {
        prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), d * (d + 1) / 2)
            .prop_map(move |e| hermitian(d, &e))
    })
}

fn state(amps: &[(f64, f64)]) -> Option<StateVector> {
    StateVector::normalize(
        amps.iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect(),
    )
    .ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigendecomposition_reconstructs(h in hermitian_strategy(2..=64)) {
        let spec = hermitian_eigendecompose(&h).unwrap();
        let scale = h.matrix().max_abs().max(1.0);
        prop_assert!(spec.reconstruct().max_abs_diff(h.matrix()) <= 1e-10 * scale * h.dim() as f64);
        prop_assert!(spec.orthonormality_defect() <= 1e-12 * h.dim() as f64);
        prop_assert!(spec.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn evolution_is_unitary_group(
        h in hermitian_strategy(2..=12),
        raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 12),
        s in -3.0..3.0f64,
        t in -3.0..3.0f64,
    ) {
        let d = h.dim();
        let Some(psi) = state(&raw[..d]) else { return Ok(()) };
        let spec = hermitian_eigendecompose(&h).unwrap();
        let both = spec.evolve(&psi, s + t).unwrap();
        let stepped = spec.evolve(&spec.evolve(&psi, s).unwrap(), t).unwrap();
        let diff: f64 = both.amplitudes().iter().zip(stepped.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(diff <= 1e-9);
        prop_assert!((both.norm() - 1.0).abs() <= 1e-10);
    }


    #[test]
    fn scrambles_preserve_sizes_and_nest(l in 2usize..60, seed in any::<u64>(), frac in 0.0..1.0f64) {
        let base = canonical_partition(l).unwrap();
        let seq = ScrambleSequence::new(&base, seed).unwrap();
        let k = (frac * seq.max_swaps() as f64) as usize;
        let p = seq.partition_at(k).unwrap();
        prop_assert_eq!(p.m(), l);
        prop_assert!(!p.contains(Side::A, l));
        let moved_out = base.a_indices().iter().filter(|&&s| !p.contains(Side::A, s)).count();
        prop_assert_eq!(moved_out, k);
        prop_assert_eq!(&p, &scramble(&base, k, seed).unwrap());
        if k > 0 {
            let prev = seq.partition_at(k - 1).unwrap();
            let diff = (0..2 * l + 1).filter(|&s| prev.contains(Side::A, s) != p.contains(Side::A, s)).count();
            prop_assert_eq!(diff, 2);
        }
    }

    #[test]
    fn split_is_exactly_additive(
        h in hermitian_strategy(2..=24),
        mask in prop::collection::vec(any::<bool>(), 24),
    ) {
        let d = h.dim();
        let a: Vec<usize> = (0..d).filter(|&i| mask[i]).collect();
        let p = Partition::new(d, Basis::Energy, &a, Provenance::Canonical).unwrap();
        let split = split_hamiltonian(&h, &p).unwrap();
        let sum = &(split.h_a.matrix() + split.h_b.matrix()) + split.h_tunnel.matrix();
        prop_assert_eq!(&sum, h.matrix());
    }

    #[test]
    fn unit_projection_has_unit_norm(raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 9), k in 1usize..9) {
        let Some(psi) = state(&raw) else { return Ok(()) };
        let p = Partition::new(9, Basis::Phi { l: 4 }, &(0..k).collect::<Vec<_>>(), Provenance::Canonical).unwrap();
        let w = projected_weight(&psi, &p, Side::A);
        prop_assume!(w > 1e-12);
        let unit = project_state(&psi, &p, Side::A, Convention::Unit);
        let weighted = project_state(&psi, &p, Side::A, Convention::Weight);
        prop_assert!((unit.norm() - 1.0).abs() < 1e-12);
        prop_assert!((weighted.norm() - 1.0 / w.sqrt()).abs() < 1e-9 / w.sqrt());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn big_omega_is_completely_additive(m in 1u128..(1 << 36), n in 1u128..(1 << 36)) {
        let fm = factorize(m);
        let fnn = factorize(n);
        let fmn = factorize(m * n);
        prop_assert_eq!(fmn.big_omega(), fm.big_omega() + fnn.big_omega());
        prop_assert_eq!(fmn.product(), Some(m * n));
    }
}
