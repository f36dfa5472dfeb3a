//! Closed-form sandwich spectra and separability bounds for the four
//! families, kept independent of the matrix code so they can serve as an
//! oracle for it.
//!
//! The eigenvalue blocks are transcribed term by term, including the
//! auxiliary quantities α, β, a and b. The geometric sums that appear in
//! them are written in closed form:
//! `Σ_{j=3}^{N} 2^{j-1} = 2^N - 4`, `Σ_{j=3}^{N} 2^{j-2} = 2^{N-1} - 2` and
//! `Σ_{j=1}^{N} 2^j = 2(2^N - 1)`.

use crate::error::{Error, Result};
use crate::states::FamilyKind;

/// Radicands down to this value are clamped to zero.
const RADICAND_CLAMP: f64 = -1e-12;

/// Eigenvalues with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichSpectrum {
    pub entries: Vec<(f64, usize)>,
}

impl SandwichSpectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// Every eigenvalue repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.entries.iter().flat_map(|&(v, m)| std::iter::repeat_n(v, m)).collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Entries sorted by eigenvalue.
    pub fn sorted_entries(&self) -> Vec<(f64, usize)> {
        let mut e = self.entries.clone();
        e.sort_by(|a, b| a.0.total_cmp(&b.0));
        e
    }

    /// `Σ m λ^q`
    pub fn power_sum(&self, q: f64) -> f64 {
        self.entries.iter().map(|&(v, m)| m as f64 * v.powf(q)).sum()
    }

    /// `(Σ λ^q - 1)/(1 - q)`
    pub fn cstre(&self, q: f64) -> f64 {
        (self.power_sum(q) - 1.0) / (1.0 - q)
    }
}

fn check_args(n: usize, x: f64, q: f64) -> Result<()> {
    if !(3..=30).contains(&n) {
        return Err(Error::BadQubitCount { n, reason: "closed forms hold for 3 <= N <= 30" });
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::BadParameter(format!("closed forms need x in [0, 1), got {x}")));
    }
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::BadParameter(format!("closed forms need finite q >= 1, got {q}")));
    }
    Ok(())
}

fn pow2(k: usize) -> f64 {
    (1u64 << k) as f64
}

/// `(p ± sqrt(radicand))` with the near-zero clamp; errors below it.
fn plus_minus(p: f64, radicand: f64) -> Result<(f64, f64)> {
    if radicand < RADICAND_CLAMP || radicand.is_nan() {
        return Err(Error::NegativeRadicand { radicand });
    }
    let root = radicand.max(0.0).sqrt();
    Ok((p + root, p - root))
}

/// Pseudopure W. `λ₄/₅` use the radicand exactly as it is usually printed,
/// `(αa + βb)² + 8N²(2^N - 1)x(x - 1)αβ`; see [`pp_w_sandwich_eigs_rederived`].
pub fn pp_w_sandwich_eigs(n: usize, x: f64, q: f64) -> Result<SandwichSpectrum> {
    pp_w_with_cross_coefficient(n, x, q, 8.0)
}

/// Pseudopure W with the cross term re-derived from the determinant of the
/// 2x2 block: the coefficient is 4, not 8.
pub fn pp_w_sandwich_eigs_rederived(n: usize, x: f64, q: f64) -> Result<SandwichSpectrum> {
    pp_w_with_cross_coefficient(n, x, q, 4.0)
}

fn pp_w_with_cross_coefficient(n: usize, x: f64, q: f64, cross: f64) -> Result<SandwichSpectrum> {
    check_args(n, x, q)?;
    let nf = n as f64;
    let e = (1.0 - q) / q;
    let two_n = pow2(n);
    let s = two_n - 4.0; // Σ_{j=3}^{N} 2^{j-1}
    let noise = (1.0 - x) / (two_n - 1.0);
    let denom = nf * (two_n - 1.0);

    let l1 = 2f64.powf(e) * noise.powf(1.0 / q);
    let l2 = noise * (((2.0 * nf - 1.0) + (s - 2.0 * (nf - 2.0)) * x) / denom).powf(e);
    let l3 = noise * (((nf + 1.0) + (s + (nf - 2.0) * (two_n - 2.0)) * x) / denom).powf(e);

    let alpha = (2.0 * nf - 1.0 + (s - 2.0 * (nf - 2.0)) * x).powf(e);
    let beta = (nf + 1.0 + (s + (nf - 2.0) * (two_n - 2.0)) * x).powf(e);
    let a = (nf - 1.0) + (s - nf + 4.0) * x;
    let b = 1.0 + (s + (nf - 2.0) * (two_n - 2.0) + nf) * x;

    let t = alpha * a + beta * b;
    let radicand = t * t + cross * nf * nf * (two_n - 1.0) * x * (x - 1.0) * alpha * beta;
    let (hi, lo) = plus_minus(t, radicand)?;
    let pre = denom.powf(-1.0 / q) * 0.5;

    Ok(SandwichSpectrum { entries: vec![(l1, (1 << n) - 4), (l2, 1), (l3, 1), (pre * hi, 1), (pre * lo, 1)] })
}

/// Pseudopure GHZ.
pub fn pp_ghz_sandwich_eigs(n: usize, x: f64, q: f64) -> Result<SandwichSpectrum> {
    check_args(n, x, q)?;
    let e = (1.0 - q) / q;
    let two_n = pow2(n);
    let noise = (1.0 - x) / (two_n - 1.0);
    let s_low = 2.0 * (1.0 - x) / (two_n - 1.0);
    let s_high = (3.0 + (two_n - 4.0) * x) / (2.0 * (two_n - 1.0));

    let l1 = noise * s_low.powf(e);
    let l2 = noise * s_high.powf(e);
    let l3 = x * s_high.powf(e);
    Ok(SandwichSpectrum { entries: vec![(l1, (1 << n) - 4), (l2, 3), (l3, 1)] })
}

/// Werner-like W.
pub fn wl_w_sandwich_eigs(n: usize, x: f64, q: f64) -> Result<SandwichSpectrum> {
    check_args(n, x, q)?;
    let nf = n as f64;
    let e = (1.0 - q) / q;
    let two_n = pow2(n);
    let half = pow2(n - 1);
    let s = half - 2.0; // Σ_{j=3}^{N} 2^{j-2}
    let noise = (1.0 - x) / two_n;
    let denom = nf * half;

    let l1 = noise * ((1.0 - x) / half).powf(e);
    let l2 = noise * ((nf + (s - (nf - 2.0)) * x) / denom).powf(e);
    let l3 = noise * ((nf + (s + (nf - 2.0) * (half - 1.0)) * x) / denom).powf(e);

    let alpha = (nf + (s - (nf - 2.0)) * x).powf(e);
    let beta = (nf + (s + (nf - 2.0) * (half - 1.0)) * x).powf(e);
    let a = nf + (s - (nf - 2.0) + half) * x;
    let b = nf + (s + half * (2.0 * nf - 3.0) - (nf - 2.0)) * x;

    let diff = alpha * a - beta * b;
    let radicand = diff * diff + pow2(2 * n + 2) * (nf - 1.0) * x * x * alpha * beta;
    let (hi, lo) = plus_minus(alpha * a + beta * b, radicand)?;
    let pre = 0.25 * denom.powf(-1.0 / q);

    Ok(SandwichSpectrum { entries: vec![(l1, (1 << n) - 4), (l2, 1), (l3, 1), (pre * hi, 1), (pre * lo, 1)] })
}

/// Werner-like GHZ.
pub fn wl_ghz_sandwich_eigs(n: usize, x: f64, q: f64) -> Result<SandwichSpectrum> {
    check_args(n, x, q)?;
    let e = (1.0 - q) / q;
    let two_n = pow2(n);
    let half = pow2(n - 1);
    let noise = (1.0 - x) / two_n;
    let s_low = (1.0 - x) / half;
    let s_high = (1.0 + (pow2(n - 2) - 1.0) * x) / half;

    let l1 = noise * s_low.powf(e);
    let l2 = noise * s_high.powf(e);
    let l3 = (1.0 + (two_n - 1.0) * x) / two_n * s_high.powf(e);
    Ok(SandwichSpectrum { entries: vec![(l1, (1 << n) - 4), (l2, 3), (l3, 1)] })
}

/// Dispatch to the closed-form block of `kind`.
pub fn sandwich_eigs(kind: FamilyKind, n: usize, x: f64, q: f64) -> Result<SandwichSpectrum> {
    match kind {
        FamilyKind::PpW => pp_w_sandwich_eigs(n, x, q),
        FamilyKind::PpGhz => pp_ghz_sandwich_eigs(n, x, q),
        FamilyKind::WlW => wl_w_sandwich_eigs(n, x, q),
        FamilyKind::WlGhz => wl_ghz_sandwich_eigs(n, x, q),
    }
}

fn check_bound_n(n: usize) -> Result<()> {
    if !(3..=60).contains(&n) {
        return Err(Error::BadQubitCount { n, reason: "bounds are stated for 3 <= N <= 60" });
    }
    Ok(())
}

/// `(N + sqrt(N-1)) / (N + 2^N sqrt(N-1))`
pub fn bound_pp_w(n: usize) -> Result<f64> {
    check_bound_n(n)?;
    let nf = n as f64;
    let r = (nf - 1.0).sqrt();
    Ok((nf + r) / (nf + pow2(n) * r))
}

/// `3 / (2^N + 2)`
pub fn bound_pp_ghz(n: usize) -> Result<f64> {
    check_bound_n(n)?;
    Ok(3.0 / (pow2(n) + 2.0))
}

/// `N / (N + 2^N sqrt(N-1))`
pub fn bound_wl_w(n: usize) -> Result<f64> {
    check_bound_n(n)?;
    let nf = n as f64;
    Ok(nf / (nf + pow2(n) * (nf - 1.0).sqrt()))
}

/// `1 / (2^{N-1} + 1)`
pub fn bound_wl_ghz(n: usize) -> Result<f64> {
    check_bound_n(n)?;
    Ok(1.0 / (pow2(n - 1) + 1.0))
}

pub fn bound(kind: FamilyKind, n: usize) -> Result<f64> {
    match kind {
        FamilyKind::PpW => bound_pp_w(n),
        FamilyKind::PpGhz => bound_pp_ghz(n),
        FamilyKind::WlW => bound_wl_w(n),
        FamilyKind::WlGhz => bound_wl_ghz(n),
    }
}

fn check_schmidt(u1: f64, u2: f64) -> Result<()> {
    if !(u1 <= 1.0 && u1 >= u2 && u2 >= 0.0) {
        return Err(Error::BadSchmidt { u1, u2 });
    }
    Ok(())
}

/// Pseudopure separability bound `(1 + u₁u₂) / (1 + d² u₁u₂)`.
pub fn vidal_tarrach_pp(u1: f64, u2: f64, d_sq: u64) -> Result<f64> {
    check_schmidt(u1, u2)?;
    let p = u1 * u2;
    Ok((1.0 + p) / (1.0 + d_sq as f64 * p))
}

/// Werner-like separability bound `1 / (d² u₁u₂ + 1)`.
pub fn vidal_tarrach_wl(u1: f64, u2: f64, d_sq: u64) -> Result<f64> {
    check_schmidt(u1, u2)?;
    Ok(1.0 / (d_sq as f64 * u1 * u2 + 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchmidtKind {
    W,
    Ghz,
}

/// Two largest Schmidt coefficients across the qubit-1 cut.
pub fn schmidt_coeffs(kind: SchmidtKind, n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::BadQubitCount { n, reason: "a bipartition needs at least two qubits" });
    }
    Ok(match kind {
        SchmidtKind::W => {
            let nf = n as f64;
            (((nf - 1.0) / nf).sqrt(), 1.0 / nf.sqrt())
        }
        SchmidtKind::Ghz => (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
    })
}

/// Vidal-Tarrach bound for a family, from its Schmidt coefficients and `d² = 2^N`.
pub fn vidal_tarrach_bound(kind: FamilyKind, n: usize) -> Result<f64> {
    let schmidt = if kind.is_ghz() { SchmidtKind::Ghz } else { SchmidtKind::W };
    let (u1, u2) = schmidt_coeffs(schmidt, n)?;
    let d_sq = 1u64 << n;
    if kind.is_pseudopure() {
        vidal_tarrach_pp(u1, u2, d_sq)
    } else {
        vidal_tarrach_wl(u1, u2, d_sq)
    }
}
