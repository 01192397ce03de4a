//! Exact fixed-point mutation times.
//!
//! A time written as a decimal in a tree file is stored as an integer count of
//! ticks, one tick being 10⁻⁶ of a time unit. Arithmetic on ticks is exact, so
//! every distance engine produces the same integer.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Number of ticks in one time unit.
pub const TICKS_PER_UNIT: u64 = 1_000_000;

/// Maximum number of fractional digits accepted in a decimal time.
pub const MAX_FRACTION_DIGITS: usize = 6;

/// A nonnegative mutation time measured in ticks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TimeTicks(pub u64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TimeParseError {
    #[error("empty time")]
    Empty,
    #[error("negative time")]
    Negative,
    #[error("more than {MAX_FRACTION_DIGITS} fractional digits")]
    TooManyFractionDigits,
    #[error("time does not fit in 64-bit ticks")]
    OutOfRange,
    #[error("invalid character {0:?} in time")]
    InvalidChar(char),
}

impl TimeTicks {
    pub const ZERO: TimeTicks = TimeTicks(0);

    pub fn ticks(self) -> u64 {
        self.0
    }

    /// Whole time units, i.e. `units * 10⁶` ticks.
    pub fn from_units(units: u64) -> Option<TimeTicks> {
        units.checked_mul(TICKS_PER_UNIT).map(TimeTicks)
    }

    pub fn abs_diff(self, other: TimeTicks) -> u64 {
        self.0.abs_diff(other.0)
    }

    /// Parses `digits ["." 1-6 digits]`. Extra fractional digits are rejected,
    /// never rounded.
    pub fn parse_decimal(text: &str) -> Result<TimeTicks, TimeParseError> {
        if text.is_empty() {
            return Err(TimeParseError::Empty);
        }
        if text.starts_with('-') {
            return Err(TimeParseError::Negative);
        }
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, Some(f)),
            None => (text, None),
        };
        if int_part.is_empty() {
            return Err(TimeParseError::Empty);
        }
        let mut ticks: u64 = 0;
        for c in int_part.chars() {
            let d = c.to_digit(10).ok_or(TimeParseError::InvalidChar(c))?;
            ticks = ticks
                .checked_mul(10)
                .and_then(|t| t.checked_add(u64::from(d)))
                .ok_or(TimeParseError::OutOfRange)?;
        }
        ticks = ticks
            .checked_mul(TICKS_PER_UNIT)
            .ok_or(TimeParseError::OutOfRange)?;
        if let Some(frac) = frac_part {
            if frac.is_empty() {
                return Err(TimeParseError::Empty);
            }
            if let Some(c) = frac.chars().find(|c| !c.is_ascii_digit()) {
                return Err(TimeParseError::InvalidChar(c));
            }
            if frac.len() > MAX_FRACTION_DIGITS {
                return Err(TimeParseError::TooManyFractionDigits);
            }
            let mut scale = TICKS_PER_UNIT;
            let mut frac_ticks = 0u64;
            for c in frac.chars() {
                scale /= 10;
                frac_ticks += u64::from(c.to_digit(10).unwrap()) * scale;
            }
            ticks = ticks
                .checked_add(frac_ticks)
                .ok_or(TimeParseError::OutOfRange)?;
        }
        Ok(TimeTicks(ticks))
    }
}

impl FromStr for TimeTicks {
    type Err = TimeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TimeTicks::parse_decimal(s)
    }
}

/// Shortest decimal: no trailing fractional zeros, no decimal point for whole units.
impl fmt::Display for TimeTicks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ticks(u128::from(self.0)))
    }
}

/// Formats a tick count in time units with the shortest exact decimal.
pub fn format_ticks(ticks: u128) -> String {
    let per = u128::from(TICKS_PER_UNIT);
    let whole = ticks / per;
    let frac = ticks % per;
    if frac == 0 {
        return whole.to_string();
    }
    let digits = format!("{frac:06}");
    format!("{whole}.{}", digits.trim_end_matches('0'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_whole_and_fractional() {
        assert_eq!("2.0".parse::<TimeTicks>().unwrap(), TimeTicks(2_000_000));
        assert_eq!("0.5".parse::<TimeTicks>().unwrap(), TimeTicks(500_000));
        assert_eq!("7".parse::<TimeTicks>().unwrap(), TimeTicks(7_000_000));
        assert_eq!("0.000001".parse::<TimeTicks>().unwrap(), TimeTicks(1));
    }

    #[test]
    fn rejects_bad_times() {
        assert_eq!(
            TimeTicks::parse_decimal("1.0000001"),
            Err(TimeParseError::TooManyFractionDigits)
        );
        assert_eq!(TimeTicks::parse_decimal("-1"), Err(TimeParseError::Negative));
        assert_eq!(TimeTicks::parse_decimal("1."), Err(TimeParseError::Empty));
        assert_eq!(TimeTicks::parse_decimal(".5"), Err(TimeParseError::Empty));
        assert_eq!(
            TimeTicks::parse_decimal("99999999999999999999"),
            Err(TimeParseError::OutOfRange)
        );
        assert_eq!(
            TimeTicks::parse_decimal("1e3"),
            Err(TimeParseError::InvalidChar('e'))
        );
    }

    #[test]
    fn shortest_decimal() {
        assert_eq!(TimeTicks(500_000).to_string(), "0.5");
        assert_eq!(TimeTicks(2_000_000).to_string(), "2");
        assert_eq!(TimeTicks(1_250_000).to_string(), "1.25");
        assert_eq!(TimeTicks(1).to_string(), "0.000001");
        assert_eq!(TimeTicks(0).to_string(), "0");
    }
}
