//! Exact rational helpers built on `num`'s `BigRational`.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses `-?digits`, `-?digits/digits`, or `-?digits.digits` exactly.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.parse().ok()?;
        let d: BigInt = den.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let whole: BigInt = int.parse().ok()?;
        let fpart: BigInt = frac.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let abs = whole.abs() * &scale + fpart;
        let signed = if int.starts_with('-') { -abs } else { abs };
        return Some(BigRational::new(signed, scale));
    }
    let n: BigInt = text.parse().ok()?;
    Some(BigRational::from(n))
}

/// Raises a rational to an integer power; negative powers require a nonzero base.
pub fn rat_pow(base: &BigRational, exp: i64) -> Result<BigRational> {
    if exp == 0 {
        return Ok(BigRational::one());
    }
    if exp < 0 && base.is_zero() {
        return Err(Error::NotInvertible);
    }
    let mag = u32::try_from(exp.unsigned_abs()).expect("exponent magnitude exceeds u32");
    let n = base.numer().pow(mag);
    let d = base.denom().pow(mag);
    Ok(if exp > 0 {
        BigRational::new(n, d)
    } else {
        BigRational::new(d, n)
    })
}

/// Exact `k`th root of a positive rational, if one exists in the rationals.
pub fn rat_nth_root(value: &BigRational, k: u32) -> Result<BigRational> {
    assert!(k > 0, "root degree must be positive");
    if !value.is_positive() {
        return Err(Error::NonPositiveMeasure { k });
    }
    let root_of = |part: &BigInt| -> Result<BigInt> {
        let r = part.nth_root(k);
        if r.pow(k) == *part {
            Ok(r)
        } else {
            Err(Error::MeasureNotPerfectPower {
                measure: value.to_string(),
                k,
            })
        }
    };
    Ok(BigRational::new(root_of(value.numer())?, root_of(value.denom())?))
}

/// Decimal approximation for display next to the exact value.
pub fn approx_decimal(value: &BigRational) -> String {
    match value.to_f64() {
        Some(f) => format!("{f}"),
        None => "overflow".to_string(),
    }
}

/// Converts a `BigInt` known to be small (witness components, ranks) to i64.
pub fn big_to_i64(value: &BigInt) -> i64 {
    value.to_i64().expect("value exceeds i64 range")
}

/// Sign-aware gcd over a slice, zero for an all-zero slice.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = num::integer::gcd(g, v.clone());
    }
    g
}

/// True when the rational is a negative number (sign normalized to numerator).
pub fn is_negative(value: &BigRational) -> bool {
    value.numer().sign() == Sign::Minus
}
