//! Exact rational scalars.
//!
//! Every coordinate, generator component and predicate in this crate is an
//! arbitrary-precision rational kept in lowest terms. Midpoint splits halve
//! generators, so denominators are routinely powers of two.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always normalized (denominator > 0, zero is 0/1).
pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn half() -> Scalar {
    ratio(1, 2)
}

/// Parses `"n"` or `"n/d"` (optional leading sign on the numerator).
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = parse_int(num)?;
    let den: BigInt = match den {
        Some(d) => {
            // Denominator is written without a sign.
            if d.starts_with(['+', '-']) {
                return None;
            }
            parse_int(d)?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Scalar::new(num, den))
}

fn parse_int(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Decimal rendering for mesh export.
///
/// Terminating expansions (denominator of the form 2^a 5^b) are printed
/// exactly with the fewest digits; anything else is rounded to 17
/// significant digits.
pub fn to_decimal(s: &Scalar) -> String {
    let negative = s.is_negative();
    let abs = s.abs();
    let mut den = abs.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut places = 0usize;
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    let body = if den.is_one() {
        places += twos.max(fives);
        let scaled = abs.numer() * num_traits::pow(BigInt::from(10), places) / abs.denom();
        insert_point(&scaled.to_string(), places)
    } else {
        significant_digits(&abs, 17)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn insert_point(digits: &str, places: usize) -> String {
    if places == 0 {
        return digits.to_string();
    }
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac_part}")
    }
}

/// Rounds a positive non-terminating rational to `digits` significant digits.
fn significant_digits(abs: &Scalar, digits: usize) -> String {
    let ten = Scalar::from_integer(BigInt::from(10));
    // Find exponent e with 10^e <= abs < 10^(e+1).
    let mut exponent: i64 = 0;
    let mut probe = abs.clone();
    while probe >= ten {
        probe /= &ten;
        exponent += 1;
    }
    while probe < Scalar::one() {
        probe *= &ten;
        exponent -= 1;
    }
    let shift = digits as i64 - 1 - exponent;
    let scaled = if shift >= 0 {
        abs * Scalar::from_integer(num_traits::pow(BigInt::from(10), shift as usize))
    } else {
        abs / Scalar::from_integer(num_traits::pow(BigInt::from(10), (-shift) as usize))
    };
    let rounded = (scaled + half()).floor().to_integer();
    if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{rounded}{zeros}")
    } else {
        insert_point(&rounded.to_string(), shift as usize)
    }
}
