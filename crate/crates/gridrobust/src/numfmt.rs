//! Float formatting for reports.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// `%g`-style with this many significant digits.
    Significant(usize),
    /// Shortest representation that round-trips.
    Full,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Significant(6)
    }
}

pub fn format_float(x: f64, precision: Precision) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    match precision {
        Precision::Full => format!("{x}"),
        Precision::Significant(digits) => significant(x, digits.max(1)),
    }
}

fn significant(x: f64, digits: usize) -> String {
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The value the formatted string denotes, for JSON output.
pub fn rounded(x: f64, precision: Precision) -> f64 {
    match precision {
        Precision::Full => x,
        Precision::Significant(_) if !x.is_finite() => x,
        Precision::Significant(_) => format_float(x, precision).parse().unwrap_or(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g6(x: f64) -> String {
        format_float(x, Precision::default())
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(g6(1.0 / 3.0), "0.333333");
        assert_eq!(g6(2.0 / 3.0), "0.666667");
        assert_eq!(g6(1.0), "1");
        assert_eq!(g6(0.5), "0.5");
        assert_eq!(g6(-0.0909090909), "-0.0909091");
        assert_eq!(g6(123456.7), "123457");
        assert_eq!(g6(1234567.0), "1.23457e6");
        assert_eq!(g6(0.0001), "0.0001");
        assert_eq!(g6(0.00001234), "1.234e-5");
        assert_eq!(g6(9.9999999), "10");
        assert_eq!(g6(-0.0), "0");
        assert_eq!(g6(f64::INFINITY), "inf");
    }

    #[test]
    fn full_precision_round_trips() {
        let x = 0.458_333_333_333_333_3_f64;
        let s = format_float(x, Precision::Full);
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }

    #[test]
    fn rounded_values() {
        assert_eq!(rounded(1.0 / 3.0, Precision::default()), 0.333333);
        assert_eq!(rounded(1.0 / 3.0, Precision::Full), 1.0 / 3.0);
    }
}
