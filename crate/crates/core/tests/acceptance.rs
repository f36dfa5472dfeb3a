//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepcheck::analytic;
use sepcheck::criteria::{self, verify, CheckStatus, Criterion, OrderedCriterion, DEFAULT_Q_GRID};
use sepcheck::entropy::{sandwich_spectrum, sandwiched_tsallis_relative, traditional_tsallis_relative, EntropicOrder};
use sepcheck::linalg::{eig_hermitian, eigvals_hermitian, kron, partial_transpose_first, ComplexMatrix};
use sepcheck::states::{self, FamilyKind};

const TABLE_TOL: f64 = 5e-4;
const CLOSED_FORM_TOL: f64 = 1e-8;
const IDENTITY_TOL: f64 = 1e-12;
const WERNER_TOL: f64 = 1e-6;
const WERNER_VN_TOL: f64 = 1e-3;
const SPECTRUM_TOL: f64 = 1e-9;
const LIMIT_TOL: f64 = 2e-3;
const KERNEL_TOL: f64 = 1e-10;
const COMMUTING_TOL: f64 = 1e-9;
const TABLE_ONE_BUDGET_SECS: f64 = 10.0;

// Reference rows: (N, [vN, AR-∞, CSTRE-∞, PPT]).
const TABLE_ONE: [(usize, [f64; 4]); 4] = [
    (3, [0.7390, 0.3636, 0.3083, 0.3083]),
    (4, [0.6963, 0.25, 0.1807, 0.1807]),
    (5, [0.6723, 0.1621, 0.1014, 0.1014]),
    (6, [0.6621, 0.1, 0.0552, 0.0552]),
];
const TABLE_TWO: [(usize, [f64; 4]); 4] = [
    (3, [0.7018, 0.2727, 0.2095, 0.2095]),
    (4, [0.6760, 0.2, 0.1261, 0.1261]),
    (5, [0.6618, 0.1351, 0.0724, 0.0724]),
    (6, [0.6567, 0.0857, 0.0402, 0.0402]),
];
const PP_GHZ_TEXT: [(usize, f64); 4] = [(3, 0.3), (4, 0.1666), (5, 0.0882), (6, 0.0454)];
const TABLE_COLUMNS: [Criterion; 4] = [Criterion::VonNeumann, Criterion::ArInf, Criterion::CstreInf, Criterion::Ppt];

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn x_star(kind: FamilyKind, n: usize, c: Criterion) -> Result<f64, String> {
    criteria::threshold(kind, n, c).map(|t| t.x_star).map_err(|e| format!("{kind} N={n} {c}: {e}"))
}

fn check_table(kind: FamilyKind, rows: &[(usize, [f64; 4])]) -> Outcome {
    let mut worst: f64 = 0.0;
    for &(n, expected) in rows {
        for (c, want) in TABLE_COLUMNS.iter().zip(expected) {
            let got = x_star(kind, n, *c)?;
            let dev = (got - want).abs();
            if dev > TABLE_TOL {
                return Err(format!("{kind} N={n} {c}: {got:.6} vs {want}"));
            }
            worst = worst.max(dev);
        }
    }
    Ok(format!("16 cells, max |dev| = {worst:.2e}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let detail = check_table(FamilyKind::PpW, &TABLE_ONE)?;
    let secs = start.elapsed().as_secs_f64();
    if secs > TABLE_ONE_BUDGET_SECS {
        return Err(format!("{detail}, but took {secs:.1}s"));
    }
    Ok(format!("{detail}, {secs:.1}s"))
}

fn criterion_2() -> Outcome {
    check_table(FamilyKind::WlW, &TABLE_TWO)
}

fn criterion_3() -> Outcome {
    for c in [Criterion::CstreInf, Criterion::ArInf, Criterion::Ppt] {
        for (n, want) in PP_GHZ_TEXT {
            let got = x_star(FamilyKind::PpGhz, n, c)?;
            if (got - want).abs() > TABLE_TOL {
                return Err(format!("N={n} {c}: {got:.6} vs {want}"));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let exact = 3.0 / (2f64.powi(n as i32) + 2.0);
        let dev = (x_star(FamilyKind::PpGhz, n, Criterion::CstreInf)? - exact).abs();
        if dev > CLOSED_FORM_TOL {
            return Err(format!("N={n}: |x* - 3/(2^N+2)| = {dev:.2e}"));
        }
        worst = worst.max(dev);
    }
    Ok(format!("text values within {TABLE_TOL:e}; closed form N=3..8 max |dev| = {worst:.2e}"))
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n6 = f64::NAN;
    for n in 3..=8 {
        let exact = 1.0 / (2f64.powi(n as i32 - 1) + 1.0);
        let got = x_star(FamilyKind::WlGhz, n, Criterion::CstreInf)?;
        let dev = (got - exact).abs();
        if dev > CLOSED_FORM_TOL {
            return Err(format!("N={n}: |x* - 1/(2^(N-1)+1)| = {dev:.2e}"));
        }
        worst = worst.max(dev);
        if n == 6 {
            n6 = got;
        }
    }
    if (n6 - 0.030303).abs() > 1e-6 {
        return Err(format!("N=6 gives {n6}"));
    }
    Ok(format!("N=3..8 max |dev| = {worst:.2e}; N=6 x* = {n6:.6}"))
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    for kind in FamilyKind::ALL {
        for n in 3..=12 {
            let b = analytic::bound(kind, n).map_err(|e| e.to_string())?;
            let vt = analytic::vidal_tarrach_bound(kind, n).map_err(|e| e.to_string())?;
            let dev = (b - vt).abs();
            if dev > IDENTITY_TOL {
                return Err(format!("{kind} N={n}: {b} vs {vt}"));
            }
            worst = worst.max(dev);
        }
    }
    Ok(format!("4 families, N=3..12, max |dev| = {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let ppt = x_star(FamilyKind::WlGhz, 2, Criterion::Ppt)?;
    let ar = x_star(FamilyKind::WlGhz, 2, Criterion::ArInf)?;
    let vn = x_star(FamilyKind::WlGhz, 2, Criterion::VonNeumann)?;
    let third = 1.0 / 3.0;
    if (ppt - third).abs() > WERNER_TOL || (ar - third).abs() > WERNER_TOL || (vn - 0.747).abs() > WERNER_VN_TOL {
        return Err(format!("ppt={ppt:.8} ar-inf={ar:.8} vn={vn:.6}"));
    }
    Ok(format!("ppt={ppt:.8} ar-inf={ar:.8} vn={vn:.6}"))
}

fn spectrum_deviation(
    kind: FamilyKind,
    closed: impl Fn(usize, f64, f64) -> sepcheck::Result<analytic::SandwichSpectrum>,
) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for n in 3..=6 {
        for x in [0.0, 0.1, 0.37, 0.8, 0.99] {
            for q in [1.5, 2.0, 7.0, 100.0] {
                let rho = states::build(kind, n, x).map_err(|e| e.to_string())?;
                let numeric = sandwich_spectrum(&rho, n, EntropicOrder::new(q).unwrap()).map_err(|e| e.to_string())?;
                let formula = closed(n, x, q).map_err(|e| format!("N={n} x={x} q={q}: {e}"))?.expanded();
                let dev = numeric.iter().zip(&formula).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                worst = worst.max(dev);
            }
        }
    }
    Ok(worst)
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for kind in [FamilyKind::PpGhz, FamilyKind::WlGhz] {
        let dev = spectrum_deviation(kind, |n, x, q| analytic::sandwich_eigs(kind, n, x, q))?;
        if dev > SPECTRUM_TOL {
            return Err(format!("{kind} deviates by {dev:.2e}"));
        }
        parts.push(format!("{kind} {dev:.1e}"));
    }

    // W families: either the formula matches, or verify reports it while the
    // tables (criteria 1 and 2) still come out of the numeric path.
    let report = verify(6).map_err(|e| e.to_string())?;
    for kind in [FamilyKind::PpW, FamilyKind::WlW] {
        match spectrum_deviation(kind, |n, x, q| analytic::sandwich_eigs(kind, n, x, q)) {
            Ok(dev) if dev <= SPECTRUM_TOL => parts.push(format!("{kind} {dev:.1e}")),
            mismatch => {
                let reported = (3..=5).all(|n| {
                    report
                        .entry(&format!("spectrum/{kind}/n{n}"))
                        .is_some_and(|e| e.status == CheckStatus::Warn && !e.mandatory)
                });
                let tables_ok = (3..=6).all(|n| {
                    let key = format!("table-{kind}/n{n}");
                    report.entry(&key).is_some_and(|e| e.status == CheckStatus::Pass)
                });
                if !(reported && tables_ok && report.passed()) {
                    return Err(format!("{kind} formula mismatch ({mismatch:?}) not reported by verify"));
                }
                parts.push(format!("{kind} discrepancy reported"));
            }
        }
    }
    let corrected = spectrum_deviation(FamilyKind::PpW, analytic::pp_w_sandwich_eigs_rederived)?;
    if corrected > SPECTRUM_TOL {
        return Err(format!("corrected pp-w block deviates by {corrected:.2e}"));
    }
    parts.push(format!("pp-w corrected {corrected:.1e}"));
    Ok(parts.join(", "))
}

fn criterion_8() -> Outcome {
    let mut parts = Vec::new();
    for (kind, limit) in [(FamilyKind::PpGhz, 3.0 / 66.0), (FamilyKind::WlGhz, 1.0 / 33.0)] {
        let solve = |c| -> Result<Vec<f64>, String> {
            criteria::curve(kind, 6, c, &DEFAULT_Q_GRID)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|p| p.x_star.ok_or_else(|| format!("{kind} {c:?} q={}: no root", p.q)))
                .collect()
        };
        let cstre = solve(OrderedCriterion::Cstre)?;
        let ar = solve(OrderedCriterion::Ar)?;
        for (i, q) in DEFAULT_Q_GRID.iter().enumerate() {
            if cstre[i] < ar[i] {
                return Err(format!("{kind} q={q}: cstre {} < ar {}", cstre[i], ar[i]));
            }
        }
        for (name, s) in [("cstre", &cstre), ("ar", &ar)] {
            if s.windows(2).any(|w| w[1] > w[0]) {
                return Err(format!("{kind} {name} increases somewhere: {s:?}"));
            }
            let end = s[s.len() - 1];
            if (end - limit).abs() > LIMIT_TOL {
                return Err(format!("{kind} {name} ends at {end}, limit {limit}"));
            }
        }
        parts.push(format!("{kind} ends {:.5}/{:.5} (limit {limit:.5})", cstre[9], ar[9]));
    }
    Ok(parts.join(", "))
}

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    m.hermitian_part()
}

fn eigensolver_bounds(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for dim in [2, 3, 5, 8, 16, 31, 32, 64] {
        let a = random_hermitian(rng, dim);
        let eig = eig_hermitian(&a).map_err(|e| e.to_string())?;
        let v = &eig.eigenvectors;
        let av = a.matmul(v);
        let vl = v.matmul(&ComplexMatrix::from_diag(&eig.eigenvalues));
        let residual = av.max_abs_diff(&vl) / a.frobenius_norm();
        let ortho = v.adjoint().matmul(v).max_abs_diff(&ComplexMatrix::identity(dim));
        if residual > KERNEL_TOL || ortho > KERNEL_TOL {
            return Err(format!("dim {dim}: residual {residual:.2e}, orthonormality {ortho:.2e}"));
        }
        if eig.eigenvalues.windows(2).any(|w| w[0] > w[1]) {
            return Err(format!("dim {dim}: eigenvalues not ascending"));
        }
        worst = worst.max(residual).max(ortho);
    }
    Ok(worst)
}

fn state_invariants() -> Result<usize, String> {
    let mut count = 0;
    for kind in FamilyKind::ALL {
        for n in kind.min_qubits()..=6 {
            for i in 0..=20 {
                let x = i as f64 / 20.0;
                let rho = states::build(kind, n, x).map_err(|e| e.to_string())?;
                let tr = rho.trace();
                let min = eigvals_hermitian(&rho).map_err(|e| e.to_string())?[0];
                if rho.hermiticity_residual() > KERNEL_TOL
                    || (tr.re - 1.0).abs() > KERNEL_TOL
                    || tr.im.abs() > KERNEL_TOL
                    || min < -KERNEL_TOL
                {
                    return Err(format!("{kind} N={n} x={x}: trace {tr}, min eigenvalue {min:.2e}"));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

fn partial_transpose_involution(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let a = random_hermitian(rng, 1 << n);
        let twice = partial_transpose_first(&partial_transpose_first(&a, n).unwrap(), n).unwrap();
        let dev = twice.max_abs_diff(&a);
        if dev != 0.0 {
            return Err(format!("N={n}: PT(PT(a)) differs by {dev:.2e}"));
        }
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// Density matrix diagonal in the basis `u` with the given weights.
fn in_basis(u: &ComplexMatrix, weights: &[f64]) -> ComplexMatrix {
    let total: f64 = weights.iter().sum();
    let d = ComplexMatrix::from_diag(&weights.iter().map(|w| w / total).collect::<Vec<_>>());
    u.matmul(&d).matmul(&u.adjoint()).hermitian_part()
}

fn commuting_equality(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for trial in 0..40 {
        let dim = [2, 4, 8][trial % 3];
        let u = eig_hermitian(&random_hermitian(rng, dim)).unwrap().eigenvectors;
        let wr: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.01..1.0)).collect();
        let ws: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.01..1.0)).collect();
        let (rho, sigma) = (in_basis(&u, &wr), in_basis(&u, &ws));
        let q = EntropicOrder::new(rng.gen_range(1.05..6.0)).unwrap();
        let sandwiched = sandwiched_tsallis_relative(&rho, &sigma, q).map_err(|e| e.to_string())?;
        let traditional = traditional_tsallis_relative(&rho, &sigma, q).map_err(|e| e.to_string())?;
        let dev = (sandwiched - traditional).abs();
        if dev > COMMUTING_TOL {
            return Err(format!("trial {trial}: {sandwiched} vs {traditional}"));
        }
        worst = worst.max(dev);
    }
    Ok(worst)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eb_c4ec);
    let eig = eigensolver_bounds(&mut rng)?;
    let states = state_invariants()?;
    let pt = partial_transpose_involution(&mut rng)?;
    let comm = commuting_equality(&mut rng)?;
    let kr = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(4));
    if kr.max_abs_diff(&ComplexMatrix::identity(8)) != 0.0 {
        return Err("I2 x I4 != I8".into());
    }
    Ok(format!(
        "eigensolver {eig:.1e}, {states} states valid, PT involution {pt:.1e}, commuting relative entropies {comm:.1e}"
    ))
}

fn main() {
    let criteria: [Check; 9] = [
        ("table 1 (pp-w)", criterion_1),
        ("table 2 (wl-w)", criterion_2),
        ("pp-ghz thresholds", criterion_3),
        ("wl-ghz thresholds", criterion_4),
        ("bound identities", criterion_5),
        ("two-qubit werner", criterion_6),
        ("oracle equivalence", criterion_7),
        ("convergence shape", criterion_8),
        ("numerical kernels", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {} {name}: {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL criterion {} {name}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
