//! Direct-sum decompositions H ≃ H_A ⊕ H_B spanned by disjoint subsets of an
//! operator's eigenbasis, and the block split of a Hamiltonian written in
//! that basis.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::gca::{site_index, site_label};
use crate::linalg::{Complex64, ComplexMatrix, HermitianOperator, StateVector};

/// Below this ⟨ψ|P|ψ⟩ a projection yields the null element.
pub const NULL_WEIGHT: f64 = 1e-30;

/// Which eigenbasis the partition splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// φ̂ eigenbasis on 2l + 1 sites, labelled j = −l..l.
    Phi { l: usize },
    /// Energy eigenbasis, labelled n = 1..N ascending.
    Energy,
}

impl Basis {
    pub fn tag(&self) -> &'static str {
        match self {
            Basis::Phi { .. } => "phi",
            Basis::Energy => "energy",
        }
    }

    pub fn label(&self, storage: usize) -> i64 {
        match *self {
            Basis::Phi { l } => site_label(l, storage),
            Basis::Energy => storage as i64 + 1,
        }
    }

    fn storage(&self, label: i64, dim: usize) -> Option<usize> {
        let s = match *self {
            Basis::Phi { l } => label + l as i64,
            Basis::Energy => label - 1,
        };
        usize::try_from(s).ok().filter(|&s| s < dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Canonical,
    Scrambled { seed: u64, n_swaps: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Normalization applied after projecting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Divide by ⟨ψ|P|ψ⟩.
    #[default]
    Weight,
    /// Divide by √⟨ψ|P|ψ⟩, giving a unit vector.
    Unit,
}

/// Two complementary index sets of an N-dimensional basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    dim: usize,
    basis: Basis,
    in_a: Vec<bool>,
    provenance: Provenance,
}

impl Partition {
    /// Partition with A given by storage indices (any order, no repeats).
    pub fn new(
        dim: usize,
        basis: Basis,
        a_indices: &[usize],
        provenance: Provenance,
    ) -> Result<Self> {
        if let Basis::Phi { l } = basis {
            if dim != 2 * l + 1 {
                return Err(Error::DimensionMismatch {
                    expected: 2 * l + 1,
                    found: dim,
                });
            }
        }
        let mut in_a = vec![false; dim];
        for &i in a_indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, len: dim });
            }
            if in_a[i] {
                return Err(Error::InvalidParams(format!("index {i} listed twice")));
            }
            in_a[i] = true;
        }
        Ok(Self {
            dim,
            basis,
            in_a,
            provenance,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn contains(&self, side: Side, storage: usize) -> bool {
        match side {
            Side::A => self.in_a[storage],
            Side::B => !self.in_a[storage],
        }
    }

    /// Storage indices of one side, ascending.
    pub fn indices(&self, side: Side) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.contains(side, i)).collect()
    }

    pub fn a_indices(&self) -> Vec<usize> {
        self.indices(Side::A)
    }

    pub fn b_indices(&self) -> Vec<usize> {
        self.indices(Side::B)
    }

    /// m = |A|.
    pub fn m(&self) -> usize {
        self.in_a.iter().filter(|&&a| a).count()
    }

    /// Logical labels of one side, ascending.
    pub fn labels(&self, side: Side) -> Vec<i64> {
        self.indices(side)
            .into_iter()
            .map(|s| self.basis.label(s))
            .collect()
    }

    /// Reads a `basis_tag;m;seed;n_swaps;A=<labels>` record. The dimension
    /// is not part of the record and must be supplied.
    pub fn parse(record: &str, dim: usize) -> Result<Self> {
        let bad = |msg: &str| Error::PartitionRecord(format!("{msg}: {record:?}"));
        let fields: Vec<&str> = record.trim().split(';').collect();
        let [tag, m, seed, n_swaps, a] = fields[..] else {
            return Err(bad("expected 5 ';'-separated fields"));
        };
        let basis = match tag {
            "phi" => {
                if dim.is_multiple_of(2) {
                    return Err(Error::EvenDimension(dim));
                }
                Basis::Phi { l: (dim - 1) / 2 }
            }
            "energy" => Basis::Energy,
            _ => return Err(bad("unknown basis tag")),
        };
        let m: usize = m.parse().map_err(|_| bad("bad m"))?;
        let n_swaps: usize = n_swaps.parse().map_err(|_| bad("bad n_swaps"))?;
        let provenance = match seed {
            "canonical" => Provenance::Canonical,
            s => Provenance::Scrambled {
                seed: s.parse().map_err(|_| bad("bad seed"))?,
                n_swaps,
            },
        };
        let list = a.strip_prefix("A=").ok_or_else(|| bad("missing A="))?;
        let mut storage = Vec::new();
        if !list.is_empty() {
            for item in list.split(',') {
                let label: i64 = item.parse().map_err(|_| bad("bad index"))?;
                storage.push(
                    basis
                        .storage(label, dim)
                        .ok_or_else(|| bad("index out of range"))?,
                );
            }
        }
        if storage.len() != m {
            return Err(bad("m does not match the number of A indices"));
        }
        Partition::new(dim, basis, &storage, provenance)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (seed, n_swaps) = match self.provenance {
            Provenance::Canonical => ("canonical".to_string(), 0),
            Provenance::Scrambled { seed, n_swaps } => (seed.to_string(), n_swaps),
        };
        let labels: Vec<String> = self.labels(Side::A).iter().map(i64::to_string).collect();
        write!(
            f,
            "{};{};{};{};A={}",
            self.basis.tag(),
            self.m(),
            seed,
            n_swaps,
            labels.join(",")
        )
    }
}

/// A = {−l..−1}, B = {0..l} in the φ basis.
pub fn canonical_partition(l: usize) -> Result<Partition> {
    if l == 0 {
        return Err(Error::InvalidParams("l must be at least 1".into()));
    }
    let a: Vec<usize> = (1..=l as i64).map(|k| site_index(l, -k)).collect();
    Partition::new(2 * l + 1, Basis::Phi { l }, &a, Provenance::Canonical)
}

/// A = the `m` lowest energy eigenstates.
pub fn energy_partition(dim: usize, m: usize) -> Result<Partition> {
    if m > dim {
        return Err(Error::IndexOutOfRange { index: m, len: dim });
    }
    let a: Vec<usize> = (0..m).collect();
    Partition::new(dim, Basis::Energy, &a, Provenance::Canonical)
}

/// The swap order for one seed. The partition after k swaps is always a
/// prefix of the one after k + 1.
#[derive(Debug, Clone)]
pub struct ScrambleSequence {
    base: Partition,
    seed: u64,
    /// A-side sites with j < 0, in swap order.
    from_a: Vec<usize>,
    /// B-side sites with j > 0, in swap order.
    from_b: Vec<usize>,
}

impl ScrambleSequence {
    /// The barrier site j = 0 never moves, so at most
    /// min(|A|, |B| − 1) swaps are available.
    pub fn new(base: &Partition, seed: u64) -> Result<Self> {
        let Basis::Phi { l } = base.basis else {
            return Err(Error::InvalidParams(
                "scrambling needs a phi-basis partition".into(),
            ));
        };
        if base.provenance != Provenance::Canonical {
            return Err(Error::InvalidParams(
                "scrambling starts from an unscrambled partition".into(),
            ));
        }
        let barrier = site_index(l, 0);
        let mut from_a: Vec<usize> = base
            .a_indices()
            .into_iter()
            .filter(|&s| site_label(l, s) < 0)
            .collect();
        let mut from_b: Vec<usize> = base
            .b_indices()
            .into_iter()
            .filter(|&s| s != barrier && site_label(l, s) > 0)
            .collect();
        let mut rng = SplitMix64::seed_from_u64(seed);
        from_a.shuffle(&mut rng);
        from_b.shuffle(&mut rng);
        Ok(Self {
            base: base.clone(),
            seed,
            from_a,
            from_b,
        })
    }

    pub fn max_swaps(&self) -> usize {
        self.from_a.len().min(self.from_b.len())
    }

    pub fn partition_at(&self, n_swaps: usize) -> Result<Partition> {
        let max = self.max_swaps();
        if n_swaps > max {
            return Err(Error::TooManySwaps {
                requested: n_swaps,
                max,
            });
        }
        let mut p = self.base.clone();
        for k in 0..n_swaps {
            p.in_a[self.from_a[k]] = false;
            p.in_a[self.from_b[k]] = true;
        }
        if n_swaps > 0 {
            p.provenance = Provenance::Scrambled {
                seed: self.seed,
                n_swaps,
            };
        }
        Ok(p)
    }
}

/// Exchanges `n_swaps` distinct (a < 0, b > 0) site pairs drawn without
/// replacement from a SplitMix64 stream seeded with `seed`.
pub fn scramble(p: &Partition, n_swaps: usize, seed: u64) -> Result<Partition> {
    ScrambleSequence::new(p, seed)?.partition_at(n_swaps)
}

/// Diagonal 0/1 projector onto one side.
pub fn projector(p: &Partition, side: Side) -> HermitianOperator {
    let diag: Vec<f64> = (0..p.dim)
        .map(|i| if p.contains(side, i) { 1.0 } else { 0.0 })
        .collect();
    HermitianOperator::from_real_diagonal(&diag)
}

/// H = H_A + H_B + H_tunnel, all stored at full size.
#[derive(Debug, Clone)]
pub struct HamiltonianSplit {
    pub h_a: HermitianOperator,
    pub h_b: HermitianOperator,
    pub h_tunnel: HermitianOperator,
}

impl HamiltonianSplit {
    pub fn block(&self, side: Side) -> &HermitianOperator {
        match side {
            Side::A => &self.h_a,
            Side::B => &self.h_b,
        }
    }
}

/// Masks `h` (written in the partition's basis) into A×A, B×B and the
/// off-diagonal A×B ∪ B×A blocks. Each entry lands in exactly one block,
/// so the three pieces add back to `h` bit for bit.
pub fn split_hamiltonian(h: &HermitianOperator, p: &Partition) -> Result<HamiltonianSplit> {
    let n = h.dim();
    if n != p.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            found: n,
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let m = h.matrix();
    let pick = |want_a: Option<bool>| {
        ComplexMatrix::from_fn(n, |i, j| {
            let (ai, aj) = (p.in_a[i], p.in_a[j]);
            let keep = match want_a {
                Some(side_a) => ai == side_a && aj == side_a,
                None => ai != aj,
            };
            if keep {
                m[(i, j)]
            } else {
                zero
            }
        })
    };
    Ok(HamiltonianSplit {
        h_a: HermitianOperator::from_exact(pick(Some(true))),
        h_b: HermitianOperator::from_exact(pick(Some(false))),
        h_tunnel: HermitianOperator::from_exact(pick(None)),
    })
}

/// ⟨ψ|P|ψ⟩ for one side.
pub fn projected_weight(psi: &StateVector, p: &Partition, side: Side) -> f64 {
    psi.amplitudes()
        .iter()
        .enumerate()
        .filter(|&(i, _)| p.contains(side, i))
        .map(|(_, z)| z.norm_sqr())
        .sum()
}

/// Pψ rescaled per `convention`, or the null element when ⟨ψ|P|ψ⟩ is
/// below [`NULL_WEIGHT`].
pub fn project_state(
    psi: &StateVector,
    p: &Partition,
    side: Side,
    convention: Convention,
) -> StateVector {
    let weight = projected_weight(psi, p, side);
    if weight < NULL_WEIGHT {
        return StateVector::null(psi.dim());
    }
    let scale = match convention {
        Convention::Weight => 1.0 / weight,
        Convention::Unit => 1.0 / weight.sqrt(),
    };
    let amps = psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            if p.contains(side, i) {
                z * scale
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    StateVector::new(amps).expect("scaled finite amplitudes stay finite")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_small() {
        let p = canonical_partition(2).unwrap();
        assert_eq!(p.labels(Side::A), vec![-2, -1]);
        assert_eq!(p.labels(Side::B), vec![0, 1, 2]);
        assert_eq!(p.basis().tag(), "phi");
        let big = canonical_partition(150).unwrap();
        assert_eq!((big.m(), big.b_indices().len()), (150, 151));
        assert!(big.labels(Side::B).contains(&0));
    }

    #[test]
    fn scramble_rules() {
        let p = canonical_partition(150).unwrap();
        assert_eq!(scramble(&p, 0, 9).unwrap().a_indices(), p.a_indices());
        let s1 = scramble(&p, 40, 17).unwrap();
        let s2 = scramble(&p, 40, 17).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.m(), 150);
        assert!(s1.labels(Side::B).contains(&0));
        let full = scramble(&p, 150, 3).unwrap();
        assert_eq!(full.labels(Side::A), (1..=150).collect::<Vec<i64>>());
        assert_eq!(
            scramble(&p, 151, 3),
            Err(Error::TooManySwaps {
                requested: 151,
                max: 150
            })
        );
        assert!(scramble(&s1, 1, 0).is_err());
    }

    #[test]
    fn scramble_prefix_property() {
        let p = canonical_partition(20).unwrap();
        let seq = ScrambleSequence::new(&p, 5).unwrap();
        for k in 0..20 {
            let a = seq.partition_at(k).unwrap();
            let b = seq.partition_at(k + 1).unwrap();
            let moved: Vec<usize> = (0..41).filter(|&i| a.in_a[i] != b.in_a[i]).collect();
            assert_eq!(moved.len(), 2);
        }
    }

    #[test]
    fn projector_algebra() {
        let p = scramble(&canonical_partition(5).unwrap(), 2, 1).unwrap();
        let pa = projector(&p, Side::A);
        let pb = projector(&p, Side::B);
        assert_eq!(pa.matrix().matmul(pa.matrix()), *pa.matrix());
        assert_eq!(pa.matrix().matmul(pb.matrix()), ComplexMatrix::zeros(11));
        assert_eq!(&(pa.matrix() + pb.matrix()), &ComplexMatrix::identity(11));
        assert_eq!(pa.matrix().trace().re, 5.0);
    }

    #[test]
    fn split_three_by_three() {
        let h = HermitianOperator::new(
            ComplexMatrix::from_real_rows(&[&[1., 2., 3.], &[2., 4., 5.], &[3., 5., 6.]]).unwrap(),
        )
        .unwrap();
        let p = Partition::new(3, Basis::Energy, &[0], Provenance::Canonical).unwrap();
        let s = split_hamiltonian(&h, &p).unwrap();
        assert_eq!(s.h_a.matrix()[(0, 0)].re, 1.0);
        assert_eq!(s.h_a.matrix().frobenius_norm(), 1.0);
        assert_eq!(s.h_tunnel.matrix()[(0, 1)].re, 2.0);
        assert_eq!(s.h_tunnel.matrix()[(2, 0)].re, 3.0);
        assert_eq!(s.h_tunnel.matrix()[(1, 2)].re, 0.0);
        assert_eq!(s.h_b.matrix()[(1, 2)].re, 5.0);
        let sum = &(s.h_a.matrix() + s.h_b.matrix()) + s.h_tunnel.matrix();
        assert_eq!(&sum, h.matrix());
        assert!(split_hamiltonian(&h, &energy_partition(4, 1).unwrap()).is_err());
    }

    #[test]
    fn projection_conventions() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let psi = StateVector::normalized(vec![
            Complex64::new(r, 0.0),
            Complex64::new(r, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let p = Partition::new(3, Basis::Energy, &[0], Provenance::Canonical).unwrap();
        let unit = project_state(&psi, &p, Side::A, Convention::Unit);
        assert!((unit.amplitudes()[0].re - 1.0).abs() < 1e-15);
        let weighted = project_state(&psi, &p, Side::A, Convention::Weight);
        assert!((weighted.amplitudes()[0].re - 2f64.sqrt()).abs() < 1e-15);
        assert!((weighted.norm() - 2f64.sqrt()).abs() < 1e-15);

        let inside = StateVector::basis(3, 0);
        for c in [Convention::Unit, Convention::Weight] {
            assert_eq!(project_state(&inside, &p, Side::A, c), inside);
        }
        let outside = StateVector::basis(3, 2);
        assert!(project_state(&outside, &p, Side::A, Convention::Weight).is_null());
    }

    #[test]
    fn record_round_trip() {
        let p = scramble(&canonical_partition(4).unwrap(), 2, 99).unwrap();
        let text = p.to_string();
        assert!(text.starts_with("phi;4;99;2;A="));
        assert_eq!(Partition::parse(&text, 9).unwrap(), p);
        let c = canonical_partition(2).unwrap();
        assert_eq!(c.to_string(), "phi;2;canonical;0;A=-2,-1");
        assert_eq!(Partition::parse("phi;2;canonical;0;A=-2,-1", 5).unwrap(), c);
        let e = energy_partition(4, 2).unwrap();
        assert_eq!(e.to_string(), "energy;2;canonical;0;A=1,2");
        assert_eq!(Partition::parse(&e.to_string(), 4).unwrap(), e);
        assert!(Partition::parse("phi;3;canonical;0;A=-2,-1", 5).is_err());
        assert!(Partition::parse("phi;1;canonical;0;A=7", 5).is_err());
        assert!(Partition::parse("phi;2;canonical;0", 5).is_err());
        assert!(Partition::parse("phi;2;x;0;A=-2,-1", 5).is_err());
    }
}
