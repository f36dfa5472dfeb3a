//! Separability thresholds: every criterion is reduced to a margin function
//! of the noise parameter that is positive where the criterion reports
//! "separable" and negative where it certifies entanglement. The threshold
//! is the sign change of that margin, bracketed by a uniform scan and
//! refined by bisection.

mod verify;

pub use verify::{
    verify, verify_with, CheckEntry, CheckStatus, VerificationReport, VerifyOptions, PP_GHZ_REFERENCE,
    TABLE_PP_W_REFERENCE, TABLE_WL_W_REFERENCE,
};

use std::fmt;

use rayon::prelude::*;

use crate::entropy::{self, EntropicOrder};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{FamilyKind, StateFamily, DEFAULT_MAX_QUBITS};

/// Orders used for convergence curves unless the caller supplies a grid.
pub const DEFAULT_Q_GRID: [f64; 10] = [1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0, 500.0, 2000.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// Conditional sandwiched Tsallis relative entropy at finite order.
    Cstre(EntropicOrder),
    /// Abe-Rajagopal conditional Tsallis entropy at finite order.
    Ar(EntropicOrder),
    VonNeumann,
    Ppt,
    /// CSTRE in the limit q → ∞.
    CstreInf,
    /// AR in the limit q → ∞.
    ArInf,
}

impl Criterion {
    /// Parses a criterion name; `cstre` and `ar` require an order.
    pub fn parse(name: &str, q: Option<f64>) -> Result<Self> {
        let needs_q = |q: Option<f64>| -> Result<EntropicOrder> {
            let q = q.ok_or_else(|| Error::BadParameter(format!("criterion '{name}' requires q")))?;
            EntropicOrder::new(q)
        };
        match name {
            "cstre" => Ok(Criterion::Cstre(needs_q(q)?)),
            "ar" => Ok(Criterion::Ar(needs_q(q)?)),
            "vn" => Ok(Criterion::VonNeumann),
            "ppt" => Ok(Criterion::Ppt),
            "cstre-inf" => Ok(Criterion::CstreInf),
            "ar-inf" => Ok(Criterion::ArInf),
            other => Err(Error::BadParameter(format!("unknown criterion '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Cstre(_) => "cstre",
            Criterion::Ar(_) => "ar",
            Criterion::VonNeumann => "vn",
            Criterion::Ppt => "ppt",
            Criterion::CstreInf => "cstre-inf",
            Criterion::ArInf => "ar-inf",
        }
    }

    pub fn order(&self) -> Option<f64> {
        match self {
            Criterion::Cstre(q) | Criterion::Ar(q) => Some(q.value()),
            _ => None,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order() {
            Some(q) => write!(f, "{}(q={q})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// Finite-order criteria that can be swept over q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderedCriterion {
    Cstre,
    Ar,
}

impl OrderedCriterion {
    pub fn at(self, q: f64) -> Result<Criterion> {
        let q = EntropicOrder::new(q)?;
        Ok(match self {
            OrderedCriterion::Cstre => Criterion::Cstre(q),
            OrderedCriterion::Ar => Criterion::Ar(q),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderedCriterion::Cstre => "cstre",
            OrderedCriterion::Ar => "ar",
        }
    }
}

impl std::str::FromStr for OrderedCriterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cstre" => Ok(OrderedCriterion::Cstre),
            "ar" => Ok(OrderedCriterion::Ar),
            other => Err(Error::BadParameter(format!("'{other}' has no finite-order curve (use cstre or ar)"))),
        }
    }
}

/// Margin of an arbitrary N-qubit state under `criterion`.
///
/// Finite-order entropies are replaced by sign-equivalent log forms:
/// `-ln Q̃_q` for the CSTRE and `ln Tr σ_B^q - ln Tr ρ^q` for AR.
pub fn margin_of_state(rho: &ComplexMatrix, n: usize, criterion: Criterion) -> Result<f64> {
    match criterion {
        Criterion::Cstre(q) => Ok(-entropy::log_sandwiched_quasi_entropy(rho, n, q)?),
        Criterion::Ar(q) => entropy::ar_log_ratio(rho, n, q),
        Criterion::VonNeumann => entropy::von_neumann_conditional(rho, n),
        Criterion::Ppt => entropy::ppt_margin(rho, n),
        Criterion::CstreInf => entropy::cstre_infinity_margin(rho, n),
        Criterion::ArInf => entropy::ar_infinity_margin(rho, n),
    }
}

/// Positive on the separable-detected side, negative on the entangled side.
pub fn margin(family: &StateFamily, criterion: Criterion) -> Result<f64> {
    margin_of_state(&family.build()?, family.n_qubits(), criterion)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdOptions {
    /// Bisection stops once the bracket is at most this wide.
    pub tol: f64,
    /// Number of points in the uniform bracketing scan.
    pub scan_points: usize,
    /// Right end of the scan; the pure endpoint x = 1 is excluded.
    pub scan_end: f64,
    pub max_qubits: usize,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self { tol: 1e-10, scan_points: 1001, scan_end: 1.0 - 1e-9, max_qubits: DEFAULT_MAX_QUBITS }
    }
}

/// Outcome of a scan-and-bisect root search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub x_star: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub family: FamilyKind,
    pub n_qubits: usize,
    pub criterion: Criterion,
    pub x_star: f64,
    /// Final bisection bracket.
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// Margin at `x_star`.
    pub residual: f64,
}

impl ThresholdResult {
    pub fn q(&self) -> Option<f64> {
        self.criterion.order()
    }
}

fn is_separable_side(m: f64) -> bool {
    m > 0.0
}

fn checked(x: f64, m: f64) -> Result<f64> {
    if m.is_nan() {
        return Err(Error::NonFiniteMargin { x });
    }
    Ok(m)
}

/// Locates the single sign change of `f` on `[0, scan_end]`.
///
/// The scan is evaluated in parallel; bisection is sequential, so the result
/// is bit-for-bit reproducible.
pub fn solve_threshold<F>(f: F, opts: &ThresholdOptions) -> Result<Bisection>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if opts.tol.is_nan() || opts.tol <= 0.0 || opts.scan_points < 2 || !(opts.scan_end > 0.0 && opts.scan_end <= 1.0) {
        return Err(Error::BadParameter(format!("invalid threshold options {opts:?}")));
    }
    let last = (opts.scan_points - 1) as f64;
    let grid: Vec<f64> = (0..opts.scan_points).map(|i| opts.scan_end * i as f64 / last).collect();
    let values: Vec<f64> = grid.par_iter().map(|&x| f(x).and_then(|m| checked(x, m))).collect::<Result<_>>()?;

    let changes: Vec<usize> =
        (0..values.len() - 1).filter(|&i| is_separable_side(values[i]) != is_separable_side(values[i + 1])).collect();
    let i = match changes.as_slice() {
        [] => return Err(Error::NoSignChange),
        [i] => *i,
        many => return Err(Error::MultipleRoots { count: many.len() }),
    };

    // `lo` stays on the side whose sign matches values[i].
    let left_side = is_separable_side(values[i]);
    let (mut lo, mut hi) = (grid[i], grid[i + 1]);
    let mut iterations = 0;
    while hi - lo > opts.tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let m = checked(mid, f(mid)?)?;
        if is_separable_side(m) == left_side {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let x_star = 0.5 * (lo + hi);
    let residual = checked(x_star, f(x_star)?)?;
    Ok(Bisection { x_star, bracket: (lo, hi), iterations, residual })
}

pub fn threshold(kind: FamilyKind, n: usize, criterion: Criterion) -> Result<ThresholdResult> {
    threshold_with(kind, n, criterion, &ThresholdOptions::default())
}

pub fn threshold_with(
    kind: FamilyKind,
    n: usize,
    criterion: Criterion,
    opts: &ThresholdOptions,
) -> Result<ThresholdResult> {
    let base = StateFamily::with_cap(kind, n, 0.0, opts.max_qubits)?;
    let phi = kind.pure_state(n)?;
    let f = |x: f64| -> Result<f64> {
        let rho = if kind.is_pseudopure() {
            crate::states::pseudopure(&phi, x)?
        } else {
            crate::states::werner_like(&phi, x)?
        };
        margin_of_state(&rho, base.n_qubits(), criterion)
    };
    let b = solve_threshold(f, opts)?;
    Ok(ThresholdResult {
        family: kind,
        n_qubits: n,
        criterion,
        x_star: b.x_star,
        bracket: b.bracket,
        iterations: b.iterations,
        residual: b.residual,
    })
}

/// One point of an implicit `criterion(x, q) = 0` curve; `x_star` is `None`
/// when the criterion does not change sign at that order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub q: f64,
    pub x_star: Option<f64>,
}

pub fn curve(kind: FamilyKind, n: usize, criterion: OrderedCriterion, q_grid: &[f64]) -> Result<Vec<CurvePoint>> {
    curve_with(kind, n, criterion, q_grid, &ThresholdOptions::default())
}

pub fn curve_with(
    kind: FamilyKind,
    n: usize,
    criterion: OrderedCriterion,
    q_grid: &[f64],
    opts: &ThresholdOptions,
) -> Result<Vec<CurvePoint>> {
    if q_grid.is_empty() {
        return Err(Error::BadParameter("q grid is empty".into()));
    }
    let criteria: Vec<Criterion> = q_grid.iter().map(|&q| criterion.at(q)).collect::<Result<_>>()?;
    criteria
        .par_iter()
        .zip(q_grid.par_iter())
        .map(|(&c, &q)| match threshold_with(kind, n, c, opts) {
            Ok(t) => Ok(CurvePoint { q, x_star: Some(t.x_star) }),
            Err(Error::NoSignChange) => Ok(CurvePoint { q, x_star: None }),
            Err(e) => Err(e),
        })
        .collect()
}
