use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use sepcheck::criteria::{self, OrderedCriterion, ThresholdOptions};
use sepcheck::entropy::{sandwich_spectrum, EntropicOrder};
use sepcheck::{analytic, states, Criterion, Error, FamilyKind};

use crate::format;
use crate::{CliError, CurveArgs, EigsArgs, Source, TableArgs, TableId, ThresholdArgs, VerifyArgs};

type CliResult = Result<(), CliError>;

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoSignChange => CliError::NoSignChange(e.to_string()),
            Error::BadQubitCount { .. } | Error::BadParameter(_) | Error::DimensionMismatch { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

fn write_csv(path: &Path, contents: &str) -> CliResult {
    std::fs::write(path, contents).map_err(|e| CliError::Failed(format!("cannot write {}: {e}", path.display())))
}

fn threshold_options(tol: f64) -> Result<ThresholdOptions, CliError> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {tol}")));
    }
    Ok(ThresholdOptions { tol, ..Default::default() })
}

pub fn threshold(a: ThresholdArgs) -> CliResult {
    let criterion = Criterion::parse(&a.criterion, a.q)?;
    let opts = threshold_options(a.tol)?;
    let t = criteria::threshold_with(a.family, a.n, criterion, &opts)?;
    let q = t.q().map(format::order).unwrap_or_default();
    println!("family,n,criterion,q,x_threshold");
    println!("{},{},{},{},{}", a.family, a.n, criterion.name(), q, format::significant(t.x_star, 10));
    Ok(())
}

/// Rows N = 3..=6 of a reference table.
const TABLE_ROWS: std::ops::RangeInclusive<usize> = 3..=6;
const TABLE_COLUMNS: [Criterion; 4] = [Criterion::VonNeumann, Criterion::ArInf, Criterion::CstreInf, Criterion::Ppt];

pub fn table_csv(id: TableId) -> Result<String, CliError> {
    let (kind, columns): (FamilyKind, &[Criterion]) = match id {
        TableId::PpW => (FamilyKind::PpW, &TABLE_COLUMNS),
        TableId::WlW => (FamilyKind::WlW, &TABLE_COLUMNS),
        TableId::PpGhz => (FamilyKind::PpGhz, &[Criterion::CstreInf]),
        TableId::WlGhz => (FamilyKind::WlGhz, &[Criterion::CstreInf]),
    };
    let cells: Vec<(usize, Criterion)> = TABLE_ROWS.flat_map(|n| columns.iter().map(move |&c| (n, c))).collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(n, c)| criteria::threshold(kind, n, c).map(|t| t.x_star))
        .collect::<Result<_, Error>>()?;

    let mut out = String::new();
    out.push_str(if columns.len() == 1 { "n,threshold\n" } else { "n,vn,ar,cstre,ppt\n" });
    for (row, n) in values.chunks(columns.len()).zip(TABLE_ROWS) {
        let cols: Vec<String> = row.iter().map(|&v| format::table_value(v)).collect();
        writeln!(out, "{n},{}", cols.join(",")).expect("writing to a String");
    }
    Ok(out)
}

pub fn table(a: TableArgs) -> CliResult {
    let csv = table_csv(a.id)?;
    write_csv(&a.out, &csv)
}

fn q_grid(q_min: f64, q_max: f64, steps: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if steps == 0 {
        return Err(CliError::Usage("--q-steps must be at least 1".into()));
    }
    if !(q_min > 1.0 && q_min.is_finite() && q_max.is_finite()) {
        return Err(CliError::Usage(format!("--q-min must be a finite order above 1, got {q_min}")));
    }
    if q_max < q_min {
        return Err(CliError::Usage(format!("--q-max {q_max} is below --q-min {q_min}")));
    }
    if steps == 1 {
        return Ok(vec![q_min]);
    }
    let last = (steps - 1) as f64;
    let grid = (0..steps)
        .map(|i| {
            let t = i as f64 / last;
            if i + 1 == steps {
                q_max
            } else if log {
                q_min * (q_max / q_min).powf(t)
            } else {
                q_min + (q_max - q_min) * t
            }
        })
        .collect();
    Ok(grid)
}

pub fn curve(a: CurveArgs) -> CliResult {
    let criteria: Vec<OrderedCriterion> = a.criterion.iter().map(|s| s.trim().parse()).collect::<Result<_, Error>>()?;
    let grid = q_grid(a.q_min, a.q_max, a.q_steps, a.log_spacing)?;
    states::StateFamily::new(a.family, a.n, 0.0)?;

    let mut out = String::from("criterion,q,x_threshold\n");
    for c in criteria {
        for p in criteria::curve(a.family, a.n, c, &grid)? {
            let x = p.x_star.map(|x| format::significant(x, 10)).unwrap_or_default();
            writeln!(out, "{},{},{x}", c.name(), format::order(p.q)).expect("writing to a String");
        }
    }
    write_csv(&a.out, &out)
}

pub fn eigs(a: EigsArgs) -> CliResult {
    let entries: Vec<(f64, usize)> = match a.source {
        // The usual PP-W cross coefficient gives a negative radicand; `verify`
        // reports that, here the corrected block is listed.
        Source::Analytic if a.family == FamilyKind::PpW => {
            analytic::pp_w_sandwich_eigs_rederived(a.n, a.x, a.q)?.sorted_entries()
        }
        Source::Analytic => analytic::sandwich_eigs(a.family, a.n, a.x, a.q)?.sorted_entries(),
        Source::Numeric => {
            let q = EntropicOrder::new(a.q)?;
            let rho = states::build(a.family, a.n, a.x)?;
            if a.x == 1.0 {
                eprintln!("warning: x = 1 is a pure state; reduced-state powers are taken on its support");
            }
            sandwich_spectrum(&rho, a.n, q)?.into_iter().map(|v| (v, 1)).collect()
        }
    };
    let mut out = String::from("eigenvalue,multiplicity\n");
    for (v, m) in entries {
        writeln!(out, "{},{m}", format::significant(v, 12)).expect("writing to a String");
    }
    print!("{out}");
    Ok(())
}

pub fn verify(a: VerifyArgs) -> CliResult {
    let report = criteria::verify_with(&criteria::VerifyOptions { n_max: a.n_max, inject_fault: a.inject_fault })?;
    print!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed("verification failed".into()))
    }
}
