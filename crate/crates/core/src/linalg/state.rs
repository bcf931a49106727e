use num_complex::Complex64;

use super::matrix::{inner, norm_sqr};
use crate::error::{Error, Result};

const UNIT_NORM_TOL: f64 = 1e-10;

/// A vector in the N-dimensional Hilbert space.
///
/// Physical states carry unit norm and the null element is the all-zero
/// vector. Projections that follow the unnormalized (divide by ⟨P⟩)
/// convention produce vectors of other norms, so the norm is not enforced
/// here; [`StateVector::normalized`] is the checked constructor for
/// physical states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParams(
                "state vector must be non-empty".into(),
            ));
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NotFinite("state vector"));
        }
        Ok(Self { amplitudes })
    }

    /// Accepts only unit-norm amplitudes (within 1e-10).
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let s = Self::new(amplitudes)?;
        if (s.norm() - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::InvalidParams(format!(
                "state norm {} is not 1",
                s.norm()
            )));
        }
        Ok(s)
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalize(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm_sqr(&amplitudes).sqrt();
        if n == 0.0 {
            return Err(Error::InvalidParams(
                "cannot normalize the null vector".into(),
            ));
        }
        Self::new(amplitudes.into_iter().map(|z| z / n).collect())
    }

    pub fn null(dim: usize) -> Self {
        Self {
            amplitudes: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// Basis vector `|e_k⟩` (storage index `k`).
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut s = Self::null(dim);
        s.amplitudes[k] = Complex64::new(1.0, 0.0);
        s
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amplitudes).sqrt()
    }

    pub fn is_null(&self) -> bool {
        self.amplitudes
            .iter()
            .all(|z| *z == Complex64::new(0.0, 0.0))
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_NORM_TOL
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }
}
