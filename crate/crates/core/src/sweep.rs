//! Experiment drivers: scrambling sweeps and eigenstate spread scans.
//! Both fan out over an [`Exec`] and return rows in input order.

use crate::decomp::{split_hamiltonian, Convention, Partition, ScrambleSequence};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::SpectralSystem;
use crate::locality::{projected_energy, tunnel_trace, tunneling_spread, SpreadRecord};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub n_swaps: usize,
    pub tunnel_trace: f64,
}

/// Tr(H_tunnel²) after each requested number of swaps along one seeded
/// swap sequence starting from `base`.
pub fn scramble_sweep<S: SpectralSystem + Sync + ?Sized>(
    system: &S,
    base: &Partition,
    counts: &[usize],
    seed: u64,
    exec: Exec,
) -> Result<Vec<SweepPoint>> {
    let seq = ScrambleSequence::new(base, seed)?;
    if let Some(&bad) = counts.iter().find(|&&k| k > seq.max_swaps()) {
        return Err(Error::TooManySwaps {
            requested: bad,
            max: seq.max_swaps(),
        });
    }
    exec.map(counts, |&k| {
        let p = seq.partition_at(k)?;
        let split = split_hamiltonian(system.hamiltonian(), &p)?;
        Ok(SweepPoint {
            n_swaps: k,
            tunnel_trace: tunnel_trace(&split),
        })
    })
    .into_iter()
    .collect()
}

/// Spread and projected energy of every energy eigenstate, for each
/// labelled partition. States with no support on A get empty fields.
pub fn spread_scan<S: SpectralSystem + Sync + ?Sized>(
    system: &S,
    partitions: &[(String, Partition)],
    convention: Convention,
    exec: Exec,
) -> Result<Vec<SpreadRecord>> {
    let splits: Vec<_> = exec
        .map(partitions, |(_, p)| {
            split_hamiltonian(system.hamiltonian(), p)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let dim = system.dim();
    let jobs: Vec<(usize, usize)> = (0..partitions.len())
        .flat_map(|pi| (1..=dim).map(move |n| (pi, n)))
        .collect();
    exec.map(&jobs, |&(pi, n)| {
        let (label, p) = &partitions[pi];
        let state = system.spectrum().eigenvector(n - 1);
        let optional = |r: Result<f64>| match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::ZeroProjection) => Ok(None),
            Err(e) => Err(e),
        };
        Ok(SpreadRecord {
            n,
            energy: system.spectrum().eigenvalues()[n - 1],
            spread: optional(tunneling_spread(&state, &splits[pi], p, convention))?,
            projected_energy: optional(projected_energy(n, system, p, convention))?,
            partition: label.clone(),
        })
    })
    .into_iter()
    .collect()
}
