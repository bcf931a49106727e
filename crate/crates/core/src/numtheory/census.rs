use std::collections::BTreeMap;

use super::factorize;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Ω and ω for one census member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaRow {
    pub n: u128,
    pub big_omega: u32,
    pub small_omega: u32,
}

/// Distribution of Ω(n) over the integers strictly between two bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusResult {
    pub range_lo: u128,
    pub range_hi: u128,
    pub count: u64,
    pub mean_omega: f64,
    /// Population standard deviation (divides by `count`).
    pub std_omega: f64,
    pub histogram: BTreeMap<u32, u64>,
}

impl CensusResult {
    /// Aggregates rows through the histogram, so the statistics depend only
    /// on the multiset of Ω values and never on row order.
    pub fn from_rows(range_lo: u128, range_hi: u128, rows: &[OmegaRow]) -> Self {
        let mut histogram = BTreeMap::new();
        for row in rows {
            *histogram.entry(row.big_omega).or_insert(0u64) += 1;
        }
        let count: u64 = histogram.values().sum();
        let total: f64 = histogram.iter().map(|(&k, &c)| k as f64 * c as f64).sum();
        let mean = total / count as f64;
        let var: f64 = histogram
            .iter()
            .map(|(&k, &c)| c as f64 * (k as f64 - mean).powi(2))
            .sum::<f64>()
            / count as f64;
        Self {
            range_lo,
            range_hi,
            count,
            mean_omega: mean,
            std_omega: var.sqrt(),
            histogram,
        }
    }

    /// How many standard deviations `omega` sits from the census mean.
    pub fn z_score(&self, omega: u32) -> f64 {
        (omega as f64 - self.mean_omega) / self.std_omega
    }
}

fn check_range(lo: u128, hi: u128) -> Result<usize> {
    match hi.checked_sub(lo) {
        Some(width) if width > 1 => usize::try_from(width - 1)
            .map_err(|_| Error::InvalidParams("census range too wide".into())),
        _ => Err(Error::EmptyRange { lo, hi }),
    }
}

/// Ω and ω for every n with `lo < n < hi`, ascending in n.
pub fn omega_table(lo: u128, hi: u128, exec: Exec) -> Result<Vec<OmegaRow>> {
    let len = check_range(lo, hi)?;
    Ok(exec.map_range(len, |offset| {
        let n = lo + 1 + offset as u128;
        let sig = factorize(n);
        OmegaRow {
            n,
            big_omega: sig.big_omega(),
            small_omega: sig.small_omega(),
        }
    }))
}

/// Census of Ω(n) over the open interval (lo, hi).
pub fn census(lo: u128, hi: u128) -> Result<CensusResult> {
    census_with(lo, hi, Exec::default())
}

pub fn census_with(lo: u128, hi: u128, exec: Exec) -> Result<CensusResult> {
    let rows = omega_table(lo, hi, exec)?;
    Ok(CensusResult::from_rows(lo, hi, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_range() {
        let c = census(1, 4).unwrap();
        assert_eq!(c.count, 2);
        assert_eq!(c.mean_omega, 1.0);
        assert_eq!(c.std_omega, 0.0);
        assert_eq!(c.histogram.get(&1), Some(&2));
    }

    #[test]
    fn empty_ranges_rejected() {
        assert_eq!(census(5, 6), Err(Error::EmptyRange { lo: 5, hi: 6 }));
        assert_eq!(census(5, 5), Err(Error::EmptyRange { lo: 5, hi: 5 }));
        assert_eq!(census(9, 2), Err(Error::EmptyRange { lo: 9, hi: 2 }));
    }

    #[test]
    fn invariants_small() {
        let c = census(1, 101).unwrap();
        assert_eq!(c.count, 99);
        assert_eq!(c.histogram.values().sum::<u64>(), c.count);
        // Ω over 2..=100 by direct trial division.
        let omegas: Vec<u32> = (2u32..=100)
            .map(|mut n| {
                let mut k = 0;
                let mut d = 2;
                while n > 1 {
                    while n % d == 0 {
                        n /= d;
                        k += 1;
                    }
                    d += 1;
                }
                k
            })
            .collect();
        let mean = omegas.iter().sum::<u32>() as f64 / 99.0;
        let var = omegas
            .iter()
            .map(|&k| (k as f64 - mean).powi(2))
            .sum::<f64>()
            / 99.0;
        assert!((c.mean_omega - mean).abs() < 1e-12);
        assert!((c.std_omega - var.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn partition_independent() {
        let lo = (1u128 << 64) - 400;
        let hi = (1u128 << 64) + 400;
        let a = census_with(lo, hi, Exec::Sequential).unwrap();
        let b = census_with(lo, hi, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mean_omega.to_bits(), b.mean_omega.to_bits());
    }
}
