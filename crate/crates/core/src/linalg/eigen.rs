use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-10;
const OFF_DIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;
const PSD_TOL: f64 = -1e-10;

/// Spectrum of a Hermitian matrix: ascending eigenvalues and the unitary
/// whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V diag(f(λ)) V†`
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                if vik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    let (values, vectors) = jacobi(a, true)?;
    let vectors = vectors.expect("vectors requested");
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let mut sorted = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted[(row, new_col)] = vectors[row * n + old_col];
        }
    }
    Ok(EigenDecomposition { eigenvalues: order.iter().map(|&i| values[i]).collect(), eigenvectors: sorted })
}

/// Ascending eigenvalues only; skips accumulating the eigenvectors.
pub fn eigvals_hermitian(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let (mut values, _) = jacobi(a, false)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// `A^p` on the support of `A`: eigenvalues above `support_tol * λ_max` are
/// raised to `p`, the rest map to zero.
pub fn power_on_support(a: &ComplexMatrix, p: f64, support_tol: f64) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(a)?;
    let min = eig.eigenvalues[0];
    if min < PSD_TOL {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    let cutoff = support_tol * eig.max_eigenvalue().max(0.0);
    Ok(eig.map_spectrum(|l| if l > cutoff { l.powf(p) } else { 0.0 }))
}

fn check_hermitian(a: &ComplexMatrix) -> Result<()> {
    let residual = a.hermiticity_residual();
    let tolerance = HERMITIAN_TOL * a.frobenius_norm();
    if residual > tolerance {
        return Err(Error::NotHermitian { residual, tolerance });
    }
    Ok(())
}

fn off_diagonal_norm(m: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(a: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<Complex64>>)> {
    check_hermitian(a)?;
    let n = a.dim();
    let mut m = a.hermitian_part().as_slice().to_vec();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n).as_slice().to_vec());

    let norm = a.frobenius_norm();
    let target = OFF_DIAG_TOL * norm;
    // Entries below this are left alone; n of them still sit under `target`.
    let skip = target / (n as f64 * n as f64);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m, n);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                let r = apq.norm();
                if r <= skip {
                    continue;
                }
                rotate(&mut m, v.as_deref_mut(), n, p, q, apq, r);
            }
        }
    }

    let values = (0..n).map(|i| m[i * n + i].re).collect();
    Ok((values, v))
}

/// Annihilates `m[p][q]` with the unitary `G = D R`, where `D` strips the
/// phase of `m[p][q]` and `R` is the real Jacobi rotation; `m <- G† m G`.
fn rotate(m: &mut [Complex64], v: Option<&mut [Complex64]>, n: usize, p: usize, q: usize, apq: Complex64, r: f64) {
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    let phase = apq / r; // e^{iφ}

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    // Columns: p' = c p - s e^{-iφ} q, q' = s p + c e^{-iφ} q.
    let e_minus = phase.conj();
    let g_qp = -e_minus * s;
    let g_qq = e_minus * c;
    for row in 0..n {
        let mp = m[row * n + p];
        let mq = m[row * n + q];
        m[row * n + p] = mp * c + mq * g_qp;
        m[row * n + q] = mp * s + mq * g_qq;
    }
    // Rows: apply G† from the left.
    let h_qp = -phase * s; // conj(g_qp)
    let h_qq = phase * c; // conj(g_qq)
    for col in 0..n {
        let mp = m[p * n + col];
        let mq = m[q * n + col];
        m[p * n + col] = mp * c + mq * h_qp;
        m[q * n + col] = mp * s + mq * h_qq;
    }
    m[p * n + q] = Complex64::new(0.0, 0.0);
    m[q * n + p] = Complex64::new(0.0, 0.0);
    m[p * n + p].im = 0.0;
    m[q * n + q].im = 0.0;

    if let Some(v) = v {
        for row in 0..n {
            let vp = v[row * n + p];
            let vq = v[row * n + q];
            v[row * n + p] = vp * c + vq * g_qp;
            v[row * n + q] = vp * s + vq * g_qq;
        }
    }
}
