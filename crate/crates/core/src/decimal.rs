//! Exact scaled-integer decimals.
//!
//! All numeric values in this crate (beliefs, durations, areas, tolerances)
//! are decimals stored as integers at a declared scale. Nothing here ever
//! rounds; inputs with more fractional digits than the declared scale are
//! rejected.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecimalParseError {
    #[error("invalid decimal literal `{0}`")]
    Invalid(String),
    #[error("`{literal}` has {got} fractional digits; at most {max} are allowed")]
    TooManyFractionalDigits { literal: String, got: u32, max: u32 },
    #[error("decimal `{0}` out of range")]
    Overflow(String),
}

/// Parses a decimal literal into an integer scaled by `10^target_frac`.
///
/// Fails if the literal carries more than `max_frac` fractional digits
/// (trailing zeros count; `0.50` has two).
pub fn parse_decimal(s: &str, max_frac: u32, target_frac: u32) -> Result<i128, DecimalParseError> {
    debug_assert!(max_frac <= target_frac);
    let s = s.trim();
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(DecimalParseError::Invalid(s.to_string()));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(DecimalParseError::Invalid(s.to_string()));
    }
    let frac_len = frac_part.len() as u32;
    if frac_len > max_frac {
        return Err(DecimalParseError::TooManyFractionalDigits {
            literal: s.to_string(),
            got: frac_len,
            max: max_frac,
        });
    }
    let overflow = || DecimalParseError::Overflow(s.to_string());
    let mut raw: i128 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        raw = raw
            .checked_mul(10)
            .and_then(|r| r.checked_add((c as u8 - b'0') as i128))
            .ok_or_else(overflow)?;
    }
    let shift = target_frac - frac_len;
    raw = raw.checked_mul(pow10(shift)).ok_or_else(overflow)?;
    Ok(if neg { -raw } else { raw })
}

pub fn pow10(n: u32) -> i128 {
    10i128.pow(n)
}

/// Renders `raw / 10^frac` with trailing fractional zeros trimmed.
pub fn format_decimal(raw: i128, frac: u32) -> String {
    let neg = raw < 0;
    let abs = raw.unsigned_abs();
    let scale = pow10(frac) as u128;
    let int = abs / scale;
    let rem = abs % scale;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if rem != 0 {
        let mut frac_str = format!("{rem:0width$}", width = frac as usize);
        while frac_str.ends_with('0') {
            frac_str.pop();
        }
        out.push('.');
        out.push_str(&frac_str);
    }
    out
}

/// An exact decimal value: `raw / 10^frac`.
#[derive(Debug, Clone, Copy)]
pub struct ExactDecimal {
    pub raw: i128,
    pub frac: u32,
}

impl ExactDecimal {
    pub fn new(raw: i128, frac: u32) -> Self {
        Self { raw, frac }
    }
}

impl fmt::Display for ExactDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_decimal(self.raw, self.frac))
    }
}

impl PartialEq for ExactDecimal {
    fn eq(&self, other: &Self) -> bool {
        // compare raw * 10^other.frac against other.raw * 10^self.frac
        let common = self.frac.max(other.frac);
        self.raw * pow10(common - self.frac) == other.raw * pow10(common - other.frac)
    }
}

impl Eq for ExactDecimal {}
