use std::fmt;

use crate::decimal::{format_decimal, parse_decimal, pow10, DecimalParseError};

/// Internal storage scale for beliefs: all beliefs are integers over 10^9.
pub const BELIEF_FRAC_DIGITS: u32 = 9;

/// Scaled-integer value of belief 1.
pub const BELIEF_ONE_RAW: i128 = 1_000_000_000;

/// Default number of fractional digits accepted in belief literals.
pub const DEFAULT_BELIEF_PRECISION: u32 = 3;

/// A membership degree in (0, 1], stored exactly as an integer over 10^9.
///
/// Operations on beliefs only copy, min, or max existing values; no
/// arithmetic ever creates a new belief, so exact equality is always safe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Belief {
    raw: i128,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum BeliefError {
    #[error("belief {0} is out of range (must satisfy 0 < b <= 1)")]
    OutOfRange(String),
    #[error(transparent)]
    Parse(#[from] DecimalParseError),
}

impl Belief {
    pub const ONE: Belief = Belief { raw: BELIEF_ONE_RAW };

    /// Builds a belief from an integer over 10^9.
    pub fn from_raw(raw: i128) -> Result<Self, BeliefError> {
        if raw <= 0 || raw > BELIEF_ONE_RAW {
            return Err(BeliefError::OutOfRange(format_decimal(raw, BELIEF_FRAC_DIGITS)));
        }
        Ok(Self { raw })
    }

    /// Parses a decimal literal with at most `precision` fractional digits.
    pub fn parse(s: &str, precision: u32) -> Result<Self, BeliefError> {
        let raw = parse_decimal(s, precision.min(BELIEF_FRAC_DIGITS), BELIEF_FRAC_DIGITS)?;
        Self::from_raw(raw)
    }

    pub fn raw(self) -> i128 {
        self.raw
    }

    pub fn is_one(self) -> bool {
        self.raw == BELIEF_ONE_RAW
    }

    /// Convenience constructor for tests: belief from thousandths (0.001 units).
    pub fn from_millis(millis: u32) -> Result<Self, BeliefError> {
        Self::from_raw(millis as i128 * pow10(BELIEF_FRAC_DIGITS - 3))
    }
}

impl fmt::Display for Belief {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_decimal(self.raw, BELIEF_FRAC_DIGITS))
    }
}
