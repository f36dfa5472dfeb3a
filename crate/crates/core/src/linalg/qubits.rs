//! Qubit-index operations. Qubit 1 is the most significant bit of a basis
//! index, so the first tensor factor is the one traced out or transposed.

use super::ComplexMatrix;
use crate::error::{Error, Result};

fn check_qubit_dim(rho: &ComplexMatrix, n_qubits: usize) -> Result<usize> {
    if n_qubits == 0 || n_qubits > 16 {
        return Err(Error::BadQubitCount { n: n_qubits, reason: "must be in 1..=16" });
    }
    let expected = 1usize << n_qubits;
    if rho.dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: rho.dim() });
    }
    Ok(expected / 2)
}

/// Traces out qubit 1, leaving the state of qubits 2..=n.
pub fn partial_trace_first(rho: &ComplexMatrix, n_qubits: usize) -> Result<ComplexMatrix> {
    if n_qubits < 2 {
        return Err(Error::BadQubitCount { n: n_qubits, reason: "partial trace needs at least two qubits" });
    }
    let half = check_qubit_dim(rho, n_qubits)?;
    let mut out = ComplexMatrix::zeros(half);
    for j in 0..half {
        for l in 0..half {
            out[(j, l)] = rho[(j, l)] + rho[(half + j, half + l)];
        }
    }
    Ok(out)
}

/// Transposes the qubit-1 indices: the 2x2 grid of blocks is transposed
/// while each block is left as is.
pub fn partial_transpose_first(rho: &ComplexMatrix, n_qubits: usize) -> Result<ComplexMatrix> {
    let half = check_qubit_dim(rho, n_qubits)?;
    let mut out = ComplexMatrix::zeros(rho.dim());
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..half {
                for l in 0..half {
                    out[(k * half + j, i * half + l)] = rho[(i * half + j, k * half + l)];
                }
            }
        }
    }
    Ok(out)
}

/// Conjugates `rho` by the SWAP of qubits `a` and `b` (1-based).
pub fn swap_qubits(rho: &ComplexMatrix, n_qubits: usize, a: usize, b: usize) -> Result<ComplexMatrix> {
    check_qubit_dim(rho, n_qubits)?;
    if a == 0 || b == 0 || a > n_qubits || b > n_qubits {
        return Err(Error::BadParameter(format!("qubit labels ({a}, {b}) outside 1..={n_qubits}")));
    }
    let bit_a = n_qubits - a;
    let bit_b = n_qubits - b;
    let perm = |idx: usize| {
        let va = (idx >> bit_a) & 1;
        let vb = (idx >> bit_b) & 1;
        if va == vb {
            idx
        } else {
            idx ^ (1 << bit_a) ^ (1 << bit_b)
        }
    };
    let dim = rho.dim();
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(perm(i), perm(j))] = rho[(i, j)];
        }
    }
    Ok(out)
}
