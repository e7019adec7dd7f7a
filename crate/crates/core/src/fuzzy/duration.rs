use crate::decimal::{format_decimal, parse_decimal, DecimalParseError};

/// A non-negative activity duration, stored as a scaled integer.
///
/// The decimal scale (how many fractional digits a raw unit represents) is
/// declared once per network; `Duration` itself only carries the raw
/// integer, so addition and max are closed and exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Duration {
    raw: u64,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DurationError {
    #[error("duration {0} is negative")]
    Negative(String),
    #[error(transparent)]
    Parse(#[from] DecimalParseError),
    #[error("duration overflow")]
    Overflow,
}

impl Duration {
    pub const ZERO: Duration = Duration { raw: 0 };

    pub fn from_raw(raw: u64) -> Self {
        Self { raw }
    }

    /// Parses a decimal literal at the network's declared scale.
    pub fn parse(s: &str, scale: u32) -> Result<Self, DurationError> {
        let raw = parse_decimal(s, scale, scale)?;
        if raw < 0 {
            return Err(DurationError::Negative(s.trim().to_string()));
        }
        let raw = u64::try_from(raw).map_err(|_| DurationError::Overflow)?;
        Ok(Self { raw })
    }

    pub fn raw(self) -> u64 {
        self.raw
    }

    pub fn checked_add(self, other: Duration) -> Result<Duration, DurationError> {
        self.raw
            .checked_add(other.raw)
            .map(Duration::from_raw)
            .ok_or(DurationError::Overflow)
    }

    pub fn format(self, scale: u32) -> String {
        format_decimal(self.raw as i128, scale)
    }
}
