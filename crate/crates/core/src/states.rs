//! W and GHZ states and the four noisy one-parameter families built on them.
//!
//! Basis index `Σ b_i 2^{N-i}`: qubit 1 is the most significant bit.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Largest qubit count accepted by default (dimension 256).
pub const DEFAULT_MAX_QUBITS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Normalizes `amplitudes`; the length must be a power of two.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::BadParameter(format!("state dimension {dim} is not a power of two >= 2")));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::BadParameter("state has zero or non-finite norm".into()));
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|a| a / norm).collect() })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }
}

fn check_pure_qubits(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BadQubitCount { n, reason: "W and GHZ states need at least two qubits" });
    }
    if n > 16 {
        return Err(Error::BadQubitCount { n, reason: "dense storage is limited to 16 qubits" });
    }
    Ok(())
}

/// Equal superposition of the `n` single-excitation basis states.
pub fn w_state(n: usize) -> Result<PureState> {
    check_pure_qubits(n)?;
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
    for k in 0..n {
        amplitudes[1 << k] = amp;
    }
    Ok(PureState { amplitudes })
}

/// `(|0...0> + |1...1>) / sqrt 2`
pub fn ghz_state(n: usize) -> Result<PureState> {
    check_pure_qubits(n)?;
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let dim = 1usize << n;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    amplitudes[0] = amp;
    amplitudes[dim - 1] = amp;
    Ok(PureState { amplitudes })
}

fn check_mixing(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::BadParameter(format!("noise parameter x = {x} outside [0, 1]")));
    }
    Ok(())
}

/// `(1-x)/(d-1) (I - |φ><φ|) + x |φ><φ|`
pub fn pseudopure(phi: &PureState, x: f64) -> Result<ComplexMatrix> {
    check_mixing(x)?;
    let d = phi.dim();
    let noise = (1.0 - x) / (d as f64 - 1.0);
    // noise*I + (x - noise) P, written out so that x = 1 is exactly P.
    let mut rho = phi.projector().scale(x - noise);
    for i in 0..d {
        rho[(i, i)] += noise;
    }
    Ok(rho)
}

/// `(1-x) I/d + x |φ><φ|`
pub fn werner_like(phi: &PureState, x: f64) -> Result<ComplexMatrix> {
    check_mixing(x)?;
    let d = phi.dim();
    let mut rho = phi.projector().scale(x);
    let noise = (1.0 - x) / d as f64;
    for i in 0..d {
        rho[(i, i)] += noise;
    }
    Ok(rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// Pseudopure W.
    PpW,
    /// Pseudopure GHZ.
    PpGhz,
    /// Werner-like W.
    WlW,
    /// Werner-like GHZ.
    WlGhz,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [FamilyKind::PpW, FamilyKind::PpGhz, FamilyKind::WlW, FamilyKind::WlGhz];

    pub fn is_pseudopure(self) -> bool {
        matches!(self, FamilyKind::PpW | FamilyKind::PpGhz)
    }

    pub fn is_ghz(self) -> bool {
        matches!(self, FamilyKind::PpGhz | FamilyKind::WlGhz)
    }

    /// Smallest qubit count for which the family is defined here.
    pub fn min_qubits(self) -> usize {
        if self.is_pseudopure() {
            3
        } else {
            2
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::PpW => "pp-w",
            FamilyKind::PpGhz => "pp-ghz",
            FamilyKind::WlW => "wl-w",
            FamilyKind::WlGhz => "wl-ghz",
        }
    }

    pub fn pure_state(self, n: usize) -> Result<PureState> {
        if self.is_ghz() {
            ghz_state(n)
        } else {
            w_state(n)
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pp-w" => Ok(FamilyKind::PpW),
            "pp-ghz" => Ok(FamilyKind::PpGhz),
            "wl-w" => Ok(FamilyKind::WlW),
            "wl-ghz" => Ok(FamilyKind::WlGhz),
            other => Err(Error::BadParameter(format!("unknown family '{other}'"))),
        }
    }
}

/// One member of a noisy family: kind, qubit count and noise parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateFamily {
    kind: FamilyKind,
    n_qubits: usize,
    x: f64,
}

impl StateFamily {
    pub fn new(kind: FamilyKind, n_qubits: usize, x: f64) -> Result<Self> {
        Self::with_cap(kind, n_qubits, x, DEFAULT_MAX_QUBITS)
    }

    pub fn with_cap(kind: FamilyKind, n_qubits: usize, x: f64, max_qubits: usize) -> Result<Self> {
        if n_qubits < kind.min_qubits() {
            let reason = if kind.is_pseudopure() {
                "pseudopure families need at least three qubits"
            } else {
                "Werner-like families need at least two qubits"
            };
            return Err(Error::BadQubitCount { n: n_qubits, reason });
        }
        if n_qubits > max_qubits {
            return Err(Error::BadQubitCount { n: n_qubits, reason: "exceeds the configured qubit cap" });
        }
        check_mixing(x)?;
        Ok(Self { kind, n_qubits, x })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn at(&self, x: f64) -> Result<Self> {
        check_mixing(x)?;
        Ok(Self { x, ..*self })
    }

    pub fn build(&self) -> Result<ComplexMatrix> {
        let phi = self.kind.pure_state(self.n_qubits)?;
        if self.kind.is_pseudopure() {
            pseudopure(&phi, self.x)
        } else {
            werner_like(&phi, self.x)
        }
    }
}

/// Convenience wrapper around [`StateFamily::build`].
pub fn build(kind: FamilyKind, n_qubits: usize, x: f64) -> Result<ComplexMatrix> {
    StateFamily::new(kind, n_qubits, x)?.build()
}
