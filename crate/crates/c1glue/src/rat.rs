//! Exact rational scalars and their text forms.
//!
//! All interface data is exchanged as strings: either a plain decimal
//! (`"0.25"`, `"-3"`) when the value has a finite decimal expansion, or a
//! fraction (`"p/q"`) otherwise. Both forms are accepted on input; output
//! picks the decimal form whenever it is exact.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for small literal fractions.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"`, integer, decimal, or scientific notation exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| Error::Parse(format!("bad rational literal {s:?}")))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (sign, rest) = match s.as_bytes()[0] {
        b'-' => (-1, &s[1..]),
        b'+' => (1, &s[1..]),
        _ => (1, s),
    };
    let (mantissa, exp10) = match rest.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (rest, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .unwrap_or_else(|_| BigInt::zero());
    let shift = exp10 - frac_part.len() as i64;
    let base = BigInt::from(10);
    let value = if shift >= 0 {
        Rational::from_integer(digits * base.pow(shift as u32))
    } else {
        Rational::new(digits, base.pow((-shift) as u32))
    };
    Some(if sign < 0 { -value } else { value })
}

/// Renders a rational as a decimal string when exact, `"p/q"` otherwise.
pub fn rational_string(r: &Rational) -> String {
    let numer = r.numer();
    let denom = r.denom();
    if denom.is_one() {
        return numer.to_string();
    }
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut rest = denom.clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{numer}/{denom}");
    }
    let digits = twos.max(fives);
    let scaled = numer.abs() * two.pow(digits - twos) * five.pow(digits - fives);
    let ten_pow = BigInt::from(10).pow(digits);
    let int_part = &scaled / &ten_pow;
    let frac_part = &scaled % &ten_pow;
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits as usize);
    debug_assert!(!frac_str.ends_with('0'), "reduced fraction cannot end in 0");
    let sign = if numer.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_str}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational(" -7 / 2 ").unwrap(), rat(-7, 2));
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
    }

    #[test]
    fn parses_decimal_forms() {
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2").unwrap(), rat_int(2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("2.5e2").unwrap(), rat_int(250));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "a", "1.2.3", "--1", "1/二"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn formats_exact_decimals() {
        assert_eq!(rational_string(&rat(1, 4)), "0.25");
        assert_eq!(rational_string(&rat(-3, 2)), "-1.5");
        assert_eq!(rational_string(&rat_int(7)), "7");
        assert_eq!(rational_string(&rat(3, 20)), "0.15");
        assert_eq!(rational_string(&rat(1, 3)), "1/3");
        assert_eq!(rational_string(&rat(-133, 300)), "-133/300");
    }

    #[test]
    fn format_parse_roundtrip() {
        for (n, d) in [(1, 7), (22, 7), (-5, 16), (311, 125), (0, 1), (-1, 1000000)] {
            let r = rat(n, d);
            assert_eq!(parse_rational(&rational_string(&r)).unwrap(), r);
        }
    }
}
