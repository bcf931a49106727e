//! Hermitian eigendecomposition and spectral functions.
//!
//! The solver reduces the Hermitian matrix to a complex tridiagonal form with
//! Householder reflectors, rotates the subdiagonal onto the positive reals
//! with a diagonal phase matrix, and diagonalizes the resulting real
//! symmetric tridiagonal matrix by implicit QL iteration. Everything is
//! deterministic: there is no pivoting and no randomized start.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::state::StateVector;
use crate::error::{Error, Result};

const HERMITIAN_REL_TOL: f64 = 1e-12;
const SWEEPS_PER_DIM: usize = 50;

/// A Hermitian matrix, checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    /// Accepts `matrix` if ‖M − M†‖_max ≤ 1e-12·‖M‖_max. The stored matrix is
    /// exactly Hermitian: the lower triangle is rebuilt from the upper one
    /// and the diagonal made real.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.check_finite()?;
        let deviation = matrix.hermiticity_defect();
        let allowed = HERMITIAN_REL_TOL * matrix.max_abs();
        if deviation > allowed {
            return Err(Error::NotHermitian { deviation, allowed });
        }
        let mut matrix = matrix;
        let n = matrix.dim();
        for i in 0..n {
            matrix[(i, i)] = Complex64::new(matrix[(i, i)].re, 0.0);
            for j in i + 1..n {
                matrix[(j, i)] = matrix[(i, j)].conj();
            }
        }
        Ok(Self { matrix })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diagonal(diag),
        }
    }

    pub(crate) fn from_exact(matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.hermiticity_defect(), 0.0);
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        check_dim(self.dim(), psi.dim())?;
        Ok(StateVector::from_raw(self.matrix.mul_vec(psi.amplitudes())))
    }

    /// ⟨ψ|H|ψ⟩ (real for Hermitian H).
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        let h_psi = self.apply(psi)?;
        Ok(psi.inner(&h_psi).re)
    }

    pub fn eigendecompose(&self) -> Result<SpectralData> {
        hermitian_eigendecompose(self)
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors, stored as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// Eigenvector `k` (0-based, ascending energy) as a state.
    pub fn eigenvector(&self, k: usize) -> StateVector {
        StateVector::from_raw(self.eigenvectors.column(k))
    }

    /// Spectral data of a diagonal operator in its own basis: the given
    /// values with identity eigenvectors. Values must already be ascending.
    pub fn diagonal(eigenvalues: Vec<f64>) -> Self {
        debug_assert!(eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let n = eigenvalues.len();
        Self {
            eigenvalues,
            eigenvectors: ComplexMatrix::identity(n),
        }
    }

    /// V · diag(f(λ)) · V†.
    pub fn function(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let weights: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            let vi = v.row(i);
            for j in 0..n {
                let vj = v.row(j);
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += vi[k] * weights[k] * vj[k].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `exp(i·s·H)` for the operator these data describe.
    pub fn exp_i(&self, s: f64) -> ComplexMatrix {
        self.function(|l| Complex64::from_polar(1.0, s * l))
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.function(|l| Complex64::new(l, 0.0))
    }

    /// exp(−iHt)|ψ₀⟩ computed as V · diag(e^{−iλt}) · V†ψ₀.
    pub fn evolve(&self, psi0: &StateVector, t: f64) -> Result<StateVector> {
        evolve(self, psi0, t)
    }

    /// max_k ‖H v_k − λ_k v_k‖₂ for the given operator.
    pub fn max_residual(&self, h: &HermitianOperator) -> f64 {
        (0..self.dim())
            .map(|k| {
                let v = self.eigenvectors.column(k);
                let hv = h.matrix().mul_vec(&v);
                hv.iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * self.eigenvalues[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// ‖V†V − I‖_max.
    pub fn orthonormality_defect(&self) -> f64 {
        self.eigenvectors.unitarity_defect()
    }

    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Time evolution through the spectral propagator.
pub fn evolve(spec: &SpectralData, psi0: &StateVector, t: f64) -> Result<StateVector> {
    check_dim(spec.dim(), psi0.dim())?;
    let v = &spec.eigenvectors;
    let n = spec.dim();
    let psi = psi0.amplitudes();
    // c = V†ψ₀, rotated by the phases.
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for (i, &p) in psi.iter().enumerate() {
        for (c, vik) in coeffs.iter_mut().zip(v.row(i)) {
            *c += vik.conj() * p;
        }
    }
    for (c, &l) in coeffs.iter_mut().zip(&spec.eigenvalues) {
        *c *= Complex64::from_polar(1.0, -l * t);
    }
    let out = (0..n)
        .map(|i| v.row(i).iter().zip(&coeffs).map(|(a, b)| a * b).sum())
        .collect();
    Ok(StateVector::from_raw(out))
}

/// max_k |λ_k|, the 2-norm of a Hermitian operator.
pub fn spectral_norm(h: &HermitianOperator) -> Result<f64> {
    Ok(hermitian_eigendecompose(h)?.spectral_norm())
}

/// Eigendecomposition of a Hermitian operator.
///
/// Eigenvalues come out ascending. Each eigenvector is rotated so that its
/// largest-magnitude component (first one on ties) is real and positive.
pub fn hermitian_eigendecompose(h: &HermitianOperator) -> Result<SpectralData> {
    let n = h.dim();
    if n == 0 {
        return Err(Error::InvalidParams("empty operator".into()));
    }
    let (diag, subdiag, q) = tridiagonalize(h.matrix());

    // Phase rotation D so that D† T D has a real, nonnegative subdiagonal.
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    let mut off = vec![0.0; n];
    for k in 0..n - 1 {
        let e = subdiag[k];
        let r = e.norm();
        off[k] = r;
        phases[k + 1] = if r > 0.0 {
            phases[k] * (e / r)
        } else {
            phases[k]
        };
    }

    let mut d = diag;
    let z = tql2(&mut d, &mut off)?;

    // Eigenvectors = Q · D · Z, with Z stored column-major.
    let mut qd = q;
    for i in 0..n {
        for k in 0..n {
            qd[(i, k)] *= phases[k];
        }
    }
    let mut vecs = ComplexMatrix::zeros(n);
    for i in 0..n {
        let qrow = qd.row(i);
        for col in 0..n {
            let zc = &z[col * n..(col + 1) * n];
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += qrow[k] * zc[k];
            }
            vecs[(i, col)] = acc;
        }
    }

    // Ascending order; stable sort keeps the solver's order on exact ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut pivot = 0;
        let mut best = -1.0;
        for i in 0..n {
            let m = vecs[(i, old_col)].norm();
            if m > best {
                best = m;
                pivot = i;
            }
        }
        let p = vecs[(pivot, old_col)];
        let rot = if p.norm() > 0.0 {
            p.conj() / p.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            eigenvectors[(i, new_col)] = vecs[(i, old_col)] * rot;
        }
        eigenvectors[(pivot, new_col)] = Complex64::new(eigenvectors[(pivot, new_col)].norm(), 0.0);
    }

    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
    })
}

/// Householder reduction `A = Q T Q†`. Returns the real diagonal of `T`, its
/// complex subdiagonal `T[k+1, k]`, and `Q`.
fn tridiagonalize(a: &ComplexMatrix) -> (Vec<f64>, Vec<Complex64>, ComplexMatrix) {
    let n = a.dim();
    let mut a = a.clone();
    let mut q = ComplexMatrix::identity(n);
    let zero = Complex64::new(0.0, 0.0);

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let alpha = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail = v[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if alpha == 0.0 || tail == 0.0 {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;

        // p = τ A22 v
        let mut p = vec![zero; m];
        for (r, pr) in p.iter_mut().enumerate() {
            let row = &a.row(k + 1 + r)[k + 1..];
            let mut acc = zero;
            for (x, y) in row.iter().zip(&v) {
                acc += x * y;
            }
            *pr = acc * tau;
        }
        // w = p − (τ/2)(v†p) v
        let vp: Complex64 = v.iter().zip(&p).map(|(x, y)| x.conj() * y).sum();
        let kfac = vp * (tau / 2.0);
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - kfac * vi).collect();
        // A22 ← A22 − v w† − w v†
        for r in 0..m {
            for c in 0..m {
                let upd = v[r] * w[c].conj() + w[r] * v[c].conj();
                a[(k + 1 + r, k + 1 + c)] -= upd;
            }
        }
        let beta = -phase * alpha;
        a[(k + 1, k)] = beta;
        a[(k, k + 1)] = beta.conj();
        for i in k + 2..n {
            a[(i, k)] = zero;
            a[(k, i)] = zero;
        }
        // Q ← Q H on columns k+1..n.
        for i in 0..n {
            let row = &q.row(i)[k + 1..];
            let mut qv = zero;
            for (x, y) in row.iter().zip(&v) {
                qv += x * y;
            }
            let s = qv * tau;
            for c in 0..m {
                q[(i, k + 1 + c)] -= s * v[c].conj();
            }
        }
    }

    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    let mut sub = vec![zero; n];
    for k in 0..n.saturating_sub(1) {
        sub[k] = a[(k + 1, k)];
    }
    (diag, sub, q)
}

/// Implicit QL iteration on a real symmetric tridiagonal matrix with diagonal
/// `d` and subdiagonal `e` (`e[k] = T[k+1, k]`, `e[n-1]` ignored). On return
/// `d` holds the eigenvalues (unsorted); the returned column-major matrix
/// holds the eigenvectors.
fn tql2(d: &mut [f64], e: &mut [f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    if n == 1 {
        return Ok(z);
    }
    e[n - 1] = 0.0;

    let cap = SWEEPS_PER_DIM * n;
    let mut total_iter = 0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            loop {
                total_iter += 1;
                if total_iter > cap {
                    return Err(Error::NoConvergence { iterations: cap });
                }
                // Shift from the leading 2×2 block.
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (left, right) = z.split_at_mut((i + 1) * n);
                    let col_i = &mut left[i * n..];
                    let col_i1 = &mut right[..n];
                    for (zi, zi1) in col_i.iter_mut().zip(col_i1.iter_mut()) {
                        let hh = *zi1;
                        *zi1 = s * *zi + c * hh;
                        *zi = c * *zi - s * hh;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(z)
}
