//! Exact scalars and their text encoding.
//!
//! Integral values print as plain decimal strings, everything else as
//! `num/den` in lowest terms. The parser additionally accepts finite decimal
//! literals such as `1.5` or `-0.125`, which are converted exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational used for every exact quantity in the crate.
pub type ExactScalar = BigRational;

pub fn int(n: impl Into<BigInt>) -> ExactScalar {
    BigRational::from_integer(n.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactScalar {
    BigRational::new(num.into(), den.into())
}

pub fn format_scalar(q: &ExactScalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_scalar(text: &str) -> Result<ExactScalar> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not an exact number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let denom = num_traits::pow(BigInt::from(10u32), frac.len());
    let value = BigRational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

pub fn to_f64(q: &ExactScalar) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back to a ratio of floats for values beyond the direct conversion.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Rounds to `digits` significant decimal digits; text output uses this so
/// that printed floats do not depend on the last few ulps.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_and_fractions() {
        assert_eq!(format_scalar(&int(42)), "42");
        assert_eq!(format_scalar(&int(-7)), "-7");
        assert_eq!(format_scalar(&ratio(6, 4)), "3/2");
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_scalar("1.5").unwrap(), ratio(3, 2));
        assert_eq!(parse_scalar("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_scalar("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse_scalar(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("10/4").unwrap(), ratio(5, 2));
    }

    #[test]
    fn significant_rounding() {
        assert_eq!(round_significant(2.0, 12), 2.0);
        assert_eq!(round_significant(0.1 + 0.2, 12), 0.3);
        assert_eq!(round_significant(123456.7891234567, 6), 123457.0);
        assert_eq!(round_significant(0.0, 12), 0.0);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1.2.3", "-", "1e5"] {
            assert!(parse_scalar(s).is_err(), "{s}");
        }
    }
}
