//! Entropic and spectral quantities across the qubit-1 : rest cut.
//!
//! Every function takes the full N-qubit state `rho` and conditions on the
//! reduced state of qubits 2..=N, `σ_B = Tr₁ ρ`. Sums of eigenvalue powers
//! are accumulated in log space so that large orders (q in the thousands)
//! neither overflow nor underflow.

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, eigvals_hermitian, kron, partial_trace_first, partial_transpose_first, power_on_support,
    ComplexMatrix, DEFAULT_SUPPORT_TOL,
};

/// Eigenvalues at or below this are dropped from entropy sums.
pub const EIGENVALUE_FLOOR: f64 = 1e-15;

/// Largest order accepted for finite-q criteria.
pub const MAX_ORDER: f64 = 1e6;

const SUPPORT_WEIGHT_TOL: f64 = 1e-10;

/// Tsallis order `q`, restricted to `1 < q <= 1e6`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropicOrder(f64);

impl EntropicOrder {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 1.0 && q <= MAX_ORDER) {
            return Err(Error::BadParameter(format!("entropic order q = {q} outside (1, {MAX_ORDER}]")));
        }
        Ok(Self(q))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Exponent `(1-q)/(2q)` applied on either side of the sandwich.
    pub fn sandwich_exponent(self) -> f64 {
        (1.0 - self.0) / (2.0 * self.0)
    }
}

/// `ln Σ λ^q` over eigenvalues above [`EIGENVALUE_FLOOR`]; `-inf` when none.
pub fn log_power_sum(eigenvalues: &[f64], q: f64) -> f64 {
    let logs: Vec<f64> = eigenvalues.iter().filter(|&&l| l > EIGENVALUE_FLOOR).map(|&l| q * l.ln()).collect();
    let Some(max) = logs.iter().copied().reduce(f64::max) else {
        return f64::NEG_INFINITY;
    };
    max + logs.iter().map(|&v| (v - max).exp()).sum::<f64>().ln()
}

/// `-Σ λ ln λ` in nats.
pub fn von_neumann_entropy(eigenvalues: &[f64]) -> f64 {
    -eigenvalues.iter().filter(|&&l| l > EIGENVALUE_FLOOR).map(|&l| l * l.ln()).sum::<f64>()
}

fn reduced(rho: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    partial_trace_first(rho, n)
}

fn sandwich(rho: &ComplexMatrix, n: usize, exponent: f64) -> Result<ComplexMatrix> {
    let sigma_b = reduced(rho, n)?;
    let side = kron(&ComplexMatrix::identity(2), &power_on_support(&sigma_b, exponent, DEFAULT_SUPPORT_TOL)?);
    Ok(side.matmul(rho).matmul(&side).hermitian_part())
}

/// `(I₂ ⊗ σ_B)^{(1-q)/2q} ρ (I₂ ⊗ σ_B)^{(1-q)/2q}`
pub fn sandwiched_matrix(rho: &ComplexMatrix, n: usize, q: EntropicOrder) -> Result<ComplexMatrix> {
    sandwich(rho, n, q.sandwich_exponent())
}

/// Ascending eigenvalues of [`sandwiched_matrix`].
pub fn sandwich_spectrum(rho: &ComplexMatrix, n: usize, q: EntropicOrder) -> Result<Vec<f64>> {
    eigvals_hermitian(&sandwiched_matrix(rho, n, q)?)
}

/// `ln Q̃_q`, where `Q̃_q = Σ λᵢ^q` over the sandwich spectrum.
pub fn log_sandwiched_quasi_entropy(rho: &ComplexMatrix, n: usize, q: EntropicOrder) -> Result<f64> {
    Ok(log_power_sum(&sandwich_spectrum(rho, n, q)?, q.value()))
}

/// Conditional sandwiched Tsallis relative entropy `(Q̃_q - 1)/(1 - q)`.
///
/// Negative values certify entanglement across the cut. For very large `q`
/// and strongly entangled states `Q̃_q` exceeds the `f64` range and the
/// result is `-inf`; use [`log_sandwiched_quasi_entropy`] when the sign is
/// all that matters.
pub fn cstre(rho: &ComplexMatrix, n: usize, q: EntropicOrder) -> Result<f64> {
    let quasi = log_sandwiched_quasi_entropy(rho, n, q)?.exp();
    Ok((quasi - 1.0) / (1.0 - q.value()))
}

/// `ln Tr σ_B^q - ln Tr ρ^q`; same sign as the AR conditional entropy.
pub fn ar_log_ratio(rho: &ComplexMatrix, n: usize, q: EntropicOrder) -> Result<f64> {
    let global = eigvals_hermitian(rho)?;
    let marginal = eigvals_hermitian(&reduced(rho, n)?)?;
    Ok(log_power_sum(&marginal, q.value()) - log_power_sum(&global, q.value()))
}

/// Abe-Rajagopal conditional Tsallis entropy `(1 - Tr ρ^q / Tr σ_B^q)/(q - 1)`.
pub fn ar_conditional(rho: &ComplexMatrix, n: usize, q: EntropicOrder) -> Result<f64> {
    let ratio = (-ar_log_ratio(rho, n, q)?).exp();
    Ok((1.0 - ratio) / (q.value() - 1.0))
}

/// `S(ρ) - S(σ_B)` in nats.
pub fn von_neumann_conditional(rho: &ComplexMatrix, n: usize) -> Result<f64> {
    let global = eigvals_hermitian(rho)?;
    let marginal = eigvals_hermitian(&reduced(rho, n)?)?;
    Ok(von_neumann_entropy(&global) - von_neumann_entropy(&marginal))
}

fn check_support(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: sigma.dim(), found: rho.dim() });
    }
    let eig = eig_hermitian(sigma)?;
    let cutoff = DEFAULT_SUPPORT_TOL * eig.max_eigenvalue().max(0.0);
    let kernel = eig.map_spectrum(|l| if l > cutoff { 0.0 } else { 1.0 });
    let weight = kernel.matmul(rho).trace().re;
    if weight > SUPPORT_WEIGHT_TOL {
        return Err(Error::SupportViolation { weight });
    }
    Ok(())
}

/// Sandwiched Tsallis relative entropy
/// `(Tr[(σ^{(1-q)/2q} ρ σ^{(1-q)/2q})^q] - 1)/(q - 1)`.
pub fn sandwiched_tsallis_relative(rho: &ComplexMatrix, sigma: &ComplexMatrix, q: EntropicOrder) -> Result<f64> {
    check_support(rho, sigma)?;
    let side = power_on_support(sigma, q.sandwich_exponent(), DEFAULT_SUPPORT_TOL)?;
    let inner = side.matmul(rho).matmul(&side).hermitian_part();
    let quasi = log_power_sum(&eigvals_hermitian(&inner)?, q.value()).exp();
    Ok((quasi - 1.0) / (q.value() - 1.0))
}

/// Tsallis relative entropy `(Tr[ρ^q σ^{1-q}] - 1)/(q - 1)`.
pub fn traditional_tsallis_relative(rho: &ComplexMatrix, sigma: &ComplexMatrix, q: EntropicOrder) -> Result<f64> {
    check_support(rho, sigma)?;
    let q = q.value();
    let rho_q = power_on_support(rho, q, DEFAULT_SUPPORT_TOL)?;
    let sigma_1mq = power_on_support(sigma, 1.0 - q, DEFAULT_SUPPORT_TOL)?;
    Ok((rho_q.matmul(&sigma_1mq).trace().re - 1.0) / (q - 1.0))
}

/// `1 - λ_max(σ_B^{-1/2} ρ σ_B^{-1/2})`: the sign the CSTRE takes as q → ∞.
pub fn cstre_infinity_margin(rho: &ComplexMatrix, n: usize) -> Result<f64> {
    let vals = eigvals_hermitian(&sandwich(rho, n, -0.5)?)?;
    Ok(1.0 - vals[vals.len() - 1])
}

/// `λ_max(σ_B) - λ_max(ρ)`: the sign the AR entropy takes as q → ∞.
pub fn ar_infinity_margin(rho: &ComplexMatrix, n: usize) -> Result<f64> {
    let global = eigvals_hermitian(rho)?;
    let marginal = eigvals_hermitian(&reduced(rho, n)?)?;
    Ok(marginal[marginal.len() - 1] - global[global.len() - 1])
}

/// Smallest eigenvalue of the partial transpose on qubit 1.
pub fn ppt_margin(rho: &ComplexMatrix, n: usize) -> Result<f64> {
    Ok(eigvals_hermitian(&partial_transpose_first(rho, n)?)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{build, FamilyKind};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(v: f64) -> EntropicOrder {
        EntropicOrder::new(v).unwrap()
    }

    fn mixed(n: usize) -> ComplexMatrix {
        let d = 1 << n;
        ComplexMatrix::identity(d).scale(1.0 / d as f64)
    }

    #[test]
    fn order_validation() {
        assert!(EntropicOrder::new(1.0).is_err());
        assert!(EntropicOrder::new(0.5).is_err());
        assert!(EntropicOrder::new(f64::NAN).is_err());
        assert!(EntropicOrder::new(2e6).is_err());
        assert!(EntropicOrder::new(1e6).is_ok());
    }

    #[test]
    fn log_power_sum_handles_extremes() {
        let v = [0.5, 0.5];
        assert!((log_power_sum(&v, 2.0) - 0.5f64.ln()).abs() < 1e-15);
        // 2 * 0.5^5000 underflows in linear space but not here.
        let l = log_power_sum(&v, 5000.0);
        assert!((l - (2f64.ln() + 5000.0 * 0.5f64.ln())).abs() < 1e-9);
        assert_eq!(log_power_sum(&[0.0, 1e-16], 2.0), f64::NEG_INFINITY);
    }

    #[test]
    fn sandwich_of_maximally_mixed_state() {
        for n in [2, 3, 4] {
            for qv in [1.5, 2.0, 7.0] {
                let s = sandwiched_matrix(&mixed(n), n, q(qv)).unwrap();
                let d = (1 << n) as f64;
                let expected = 2f64.powf((n as f64 - 1.0) * (qv - 1.0) / qv) / d;
                assert!(s.max_abs_diff(&ComplexMatrix::identity(1 << n).scale(expected)) < 1e-14);
            }
        }
    }

    #[test]
    fn sandwich_of_product_state() {
        // ρ = ρ_A ⊗ σ_B gives eigenvalues μᵢ νⱼ^{1/q}.
        let rho_a = ComplexMatrix::from_diag(&[0.8, 0.2]);
        let mut sigma_b = ComplexMatrix::from_real_rows(&[&[0.6, 0.1], &[0.1, 0.4]]);
        sigma_b[(0, 1)] = Complex64::new(0.1, 0.05);
        sigma_b[(1, 0)] = Complex64::new(0.1, -0.05);
        let nu = eigvals_hermitian(&sigma_b).unwrap();
        let rho = kron(&rho_a, &sigma_b);
        for qv in [1.5, 3.0, 20.0] {
            let got = sandwich_spectrum(&rho, 2, q(qv)).unwrap();
            let mut want: Vec<f64> =
                [0.8, 0.2].iter().flat_map(|m| nu.iter().map(move |v| m * v.powf(1.0 / qv))).collect();
            want.sort_by(f64::total_cmp);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-13, "q={qv}: {got:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn cstre_of_maximally_mixed_state() {
        for n in [2, 3, 5] {
            for qv in [1.5, 2.0, 10.0] {
                let got = cstre(&mixed(n), n, q(qv)).unwrap();
                let want = (2f64.powf(1.0 - qv) - 1.0) / (1.0 - qv);
                assert!((got - want).abs() < 1e-13);
                assert!(got > 0.0);
            }
        }
    }

    #[test]
    fn cstre_equals_ar_when_marginal_is_maximally_mixed() {
        // GHZ marginals are not maximally mixed, but at x = 0 every
        // Werner-like state is, and the two entropies coincide.
        for kind in [FamilyKind::WlW, FamilyKind::WlGhz] {
            for n in 3..=5 {
                let rho = build(kind, n, 0.0).unwrap();
                for qv in [1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0, 500.0, 2000.0] {
                    let a = cstre(&rho, n, q(qv)).unwrap();
                    let b = ar_conditional(&rho, n, q(qv)).unwrap();
                    assert!((a - b).abs() <= 1e-9, "{kind} n={n} q={qv}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn werner_pair_signs() {
        let bell = |x| build(FamilyKind::WlGhz, 2, x).unwrap();
        assert!(cstre(&bell(0.4), 2, q(2000.0)).unwrap() < 0.0);
        assert!(ar_conditional(&bell(1.0 / 3.0 + 1e-3), 2, q(1e4)).unwrap() < 0.0);
        assert!(ar_conditional(&bell(0.3), 2, q(1e4)).unwrap() > 0.0);
        assert!(von_neumann_conditional(&bell(0.74), 2).unwrap() > 0.0);
        assert!(von_neumann_conditional(&bell(0.755), 2).unwrap() < 0.0);
        let min_pt = ppt_margin(&bell(0.2), 2).unwrap();
        assert!((min_pt - (1.0 - 0.6) / 4.0).abs() < 1e-15);
        assert!(ar_infinity_margin(&bell(1.0 / 3.0), 2).unwrap().abs() < 1e-15);
    }

    #[test]
    fn ar_of_simple_states() {
        for n in [2, 3, 4] {
            for qv in [1.5, 2.0, 6.0] {
                let got = ar_conditional(&mixed(n), n, q(qv)).unwrap();
                let want = (1.0 - 2f64.powf(1.0 - qv)) / (qv - 1.0);
                assert!((got - want).abs() < 1e-14);
            }
        }
        let prod = ComplexMatrix::from_diag(&[0.0, 0.0, 1.0, 0.0]);
        assert!(ar_conditional(&prod, 2, q(3.0)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn von_neumann_simple_states() {
        let ln2 = std::f64::consts::LN_2;
        assert!((von_neumann_conditional(&mixed(3), 3).unwrap() - ln2).abs() < 1e-14);
        let ghz = build(FamilyKind::WlGhz, 3, 1.0).unwrap();
        assert!((von_neumann_conditional(&ghz, 3).unwrap() + ln2).abs() < 1e-14);
    }

    #[test]
    fn traditional_relative_entropy() {
        let rho = ComplexMatrix::from_diag(&[0.5, 0.5]);
        let sigma = ComplexMatrix::from_diag(&[0.75, 0.25]);
        assert!((traditional_tsallis_relative(&rho, &sigma, q(2.0)).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        assert!(traditional_tsallis_relative(&rho, &rho, q(2.5)).unwrap().abs() < 1e-14);
        assert!(sandwiched_tsallis_relative(&rho, &rho, q(2.5)).unwrap().abs() < 1e-14);
    }

    #[test]
    fn support_violation() {
        let rho = ComplexMatrix::from_diag(&[0.5, 0.5]);
        let sigma = ComplexMatrix::from_diag(&[1.0, 0.0]);
        assert!(matches!(traditional_tsallis_relative(&rho, &sigma, q(2.0)), Err(Error::SupportViolation { .. })));
        // Supported on σ's range: fine.
        let inside = ComplexMatrix::from_diag(&[1.0, 0.0]);
        assert!(traditional_tsallis_relative(&inside, &sigma, q(2.0)).unwrap().abs() < 1e-14);
    }

    fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let mut h = ComplexMatrix::zeros(n);
        for i in 0..n {
            h[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        eig_hermitian(&h).unwrap().eigenvectors
    }

    fn random_probabilities(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|p| p / total).collect()
    }

    #[test]
    fn commuting_pairs_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..100 {
            let n = [2, 3, 4, 8][trial % 4];
            let u = random_unitary(&mut rng, n);
            let conj = |p: &[f64]| u.matmul(&ComplexMatrix::from_diag(p)).matmul(&u.adjoint());
            let rho = conj(&random_probabilities(&mut rng, n));
            let sigma = conj(&random_probabilities(&mut rng, n));
            let qv = q(rng.gen_range(1.1..6.0));
            let a = sandwiched_tsallis_relative(&rho, &sigma, qv).unwrap();
            let b = traditional_tsallis_relative(&rho, &sigma, qv).unwrap();
            assert!((a - b).abs() <= 1e-9, "trial {trial}: {a} vs {b}");
        }
    }

    #[test]
    fn quasi_entropy_tends_to_one_near_q_one() {
        for kind in FamilyKind::ALL {
            let rho = build(kind, 3, 0.4).unwrap();
            let l = log_sandwiched_quasi_entropy(&rho, 3, q(1.0 + 1e-4)).unwrap();
            assert!((l.exp() - 1.0).abs() < 1e-3, "{kind}: {}", l.exp());
        }
    }

    #[test]
    fn infinity_margins_on_simple_states() {
        for n in [2, 3, 4] {
            assert!((cstre_infinity_margin(&mixed(n), n).unwrap() - 0.5).abs() < 1e-14);
            let d = (1u64 << n) as f64;
            let want = 2.0 / d - 1.0 / d;
            assert!((ar_infinity_margin(&mixed(n), n).unwrap() - want).abs() < 1e-15);
        }
        let ghz = build(FamilyKind::PpGhz, 3, 0.3).unwrap();
        assert!(cstre_infinity_margin(&ghz, 3).unwrap().abs() < 1e-12);
        let w = build(FamilyKind::PpW, 3, 0.5).unwrap();
        assert!(cstre_infinity_margin(&w, 3).unwrap() < 0.0);
        let w_ar = build(FamilyKind::PpW, 3, 4.0 / 11.0).unwrap();
        assert!(ar_infinity_margin(&w_ar, 3).unwrap().abs() < 1e-14);
    }

    #[test]
    fn ppt_margins() {
        let prod = kron(&ComplexMatrix::from_diag(&[0.3, 0.7]), &ComplexMatrix::from_diag(&[0.9, 0.1]));
        assert!(ppt_margin(&prod, 2).unwrap() >= 0.0);
        let w = build(FamilyKind::PpW, 3, 0.3083906).unwrap();
        assert!(ppt_margin(&w, 3).unwrap().abs() < 1e-6);
    }

    #[test]
    fn cstre_finite_on_family_grid() {
        for kind in FamilyKind::ALL {
            for n in 3..=5 {
                for step in 0..10 {
                    let rho = build(kind, n, step as f64 / 10.0).unwrap();
                    for qv in [1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0, 500.0] {
                        let v = cstre(&rho, n, q(qv)).unwrap();
                        assert!(v.is_finite(), "{kind} n={n} x={} q={qv}", step as f64 / 10.0);
                    }
                    let l = log_sandwiched_quasi_entropy(&rho, n, q(2000.0)).unwrap();
                    assert!(l.is_finite());
                }
            }
        }
    }
}
