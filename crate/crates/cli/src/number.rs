//! Numeric arguments: plain floats, `1e20`, and `10^20`.
//!
//! Positive values too large for a double are kept as their natural log.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Num {
    Value(f64),
    /// `ln x` of a positive `x` beyond the double range.
    Ln(f64),
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Value(v) => write!(f, "{}", crate::output::fmt_g(*v)),
            Num::Ln(l) => write!(f, "exp({})", crate::output::fmt_g(*l)),
        }
    }
}

fn plain(s: &str) -> Result<f64, String> {
    s.parse::<f64>()
        .map_err(|_| format!("invalid number '{s}'"))
}

/// Parses `s`, keeping the logarithm when the value overflows.
pub fn parse_num(s: &str) -> Result<Num, String> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if body.is_empty() {
        return Err(format!("invalid number '{s}'"));
    }
    let lower = body.to_ascii_lowercase();
    if lower.contains("inf") || lower.contains("nan") {
        return Err(format!("'{s}' is not a finite number"));
    }
    let (magnitude, ln) = if let Some((base, exp)) = body.split_once('^') {
        let (base, exp) = (plain(base)?, plain(exp)?);
        if base <= 0.0 {
            return Err(format!("power base in '{s}' must be positive"));
        }
        (base.powf(exp), exp * base.ln())
    } else {
        let v = plain(body)?;
        let ln = match lower.split_once('e') {
            Some((mant, exp)) if v.is_infinite() => {
                plain(mant)?.ln() + plain(exp)? * std::f64::consts::LN_10
            }
            _ => v.ln(),
        };
        (v, ln)
    };
    if magnitude.is_finite() {
        return Ok(Num::Value(if neg { -magnitude } else { magnitude }));
    }
    if neg || !ln.is_finite() {
        return Err(format!("'{s}' is outside the representable range"));
    }
    Ok(Num::Ln(ln))
}

/// A finite double; no log-domain fallback.
pub fn parse_f64(s: &str) -> Result<f64, String> {
    match parse_num(s)? {
        Num::Value(v) => Ok(v),
        Num::Ln(_) => Err(format!("'{s}' is outside the representable range")),
    }
}

pub fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("'{s}' must be positive"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_and_scientific() {
        assert_eq!(parse_num("1e20"), Ok(Num::Value(1e20)));
        assert_eq!(parse_num("-0.25"), Ok(Num::Value(-0.25)));
        assert_eq!(parse_num(".5"), Ok(Num::Value(0.5)));
        assert_eq!(parse_num("+3"), Ok(Num::Value(3.0)));
    }

    #[test]
    fn power_form() {
        assert_eq!(parse_num("10^20"), Ok(Num::Value(1e20)));
        assert_eq!(parse_num("-10^-3"), Ok(Num::Value(-1e-3)));
        assert_eq!(parse_num("2^0.5"), Ok(Num::Value(2f64.sqrt())));
    }

    #[test]
    fn overflow_keeps_the_log() {
        let Ok(Num::Ln(l)) = parse_num("10^500") else {
            panic!()
        };
        assert!((l - 500.0 * std::f64::consts::LN_10).abs() < 1e-10);
        let Ok(Num::Ln(l)) = parse_num("2.5e400") else {
            panic!()
        };
        assert!((l - (2.5f64.ln() + 400.0 * std::f64::consts::LN_10)).abs() < 1e-10);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "-", "abc", "1e", "inf", "NaN", "-10^500", "0^2", "1,2"] {
            assert!(parse_num(s).is_err(), "{s}");
        }
        assert!(parse_f64("10^500").is_err());
        assert!(parse_positive("0").is_err());
    }
}
