//! Number formatting for CSV output. All of it is locale-free and
//! deterministic for a given `f64`.

/// `v` with `digits` significant digits; plain decimal notation for
/// magnitudes in `[1e-4, 1e15)`, scientific otherwise.
pub fn significant(v: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs();
    if (1e-4..1e15).contains(&mag) {
        let exponent = mag.log10().floor() as i32;
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        let s = format!("{v:.decimals$}");
        // Rounding can carry into a new leading digit (9.99 -> 10.0); redo
        // with one fewer decimal in that case.
        let carried = s.parse::<f64>().is_ok_and(|r| r.abs() >= 10f64.powi(exponent + 1));
        if carried && decimals > 0 {
            let decimals = decimals - 1;
            return format!("{v:.decimals$}");
        }
        s
    } else {
        let decimals = digits - 1;
        format!("{v:.decimals$e}")
    }
}

/// Four-decimal table value, truncated toward zero after snapping to eight
/// decimals so that a root found as 0.29999999995 prints as 0.3000.
pub fn table_value(v: f64) -> String {
    assert!(v >= 0.0 && v.is_finite(), "thresholds are non-negative");
    let snapped = (v * 1e8).round() as u64;
    let ten_thousandths = snapped / 10_000;
    format!("{}.{:04}", ten_thousandths / 10_000, ten_thousandths % 10_000)
}

/// Shortest round-trip representation of an order `q`.
pub fn order(q: f64) -> String {
    format!("{q}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(significant(0.30839062873, 10), "0.3083906287");
        assert_eq!(significant(1.0 / 3.0, 10), "0.3333333333");
        assert_eq!(significant(0.0303030303030, 10), "0.03030303030");
        assert_eq!(significant(0.99999999999, 10), "1.000000000");
        assert_eq!(significant(0.0, 10), "0");
        assert_eq!(significant(1.5e-7, 3), "1.50e-7");
    }

    #[test]
    fn table_truncation() {
        assert_eq!(table_value(0.7390969), "0.7390");
        assert_eq!(table_value(0.65675702), "0.6567");
        assert_eq!(table_value(0.29999999995), "0.3000");
        assert_eq!(table_value(0.25), "0.2500");
        assert_eq!(table_value(3.0 / 66.0), "0.0454");
        assert_eq!(table_value(3.0 / 18.0), "0.1666");
        assert_eq!(table_value(1.0), "1.0000");
    }

    #[test]
    fn order_formatting() {
        assert_eq!(order(2000.0), "2000");
        assert_eq!(order(1.5), "1.5");
    }
}
