//! Calendar dates and UTC timestamps without a platform clock.

use core::fmt;
use core::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Date {
    year: i32,
    month: u8,
    day: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DateError {
    #[error("expected an ISO-8601 date YYYY-MM-DD")]
    Format,
    #[error("no such calendar day")]
    OutOfRange,
    #[error("window starts after it ends")]
    InvertedWindow,
}

fn is_leap(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

fn days_in_month(year: i32, month: u8) -> u8 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap(year) => 29,
        2 => 28,
        _ => 0,
    }
}

impl Date {
    pub fn new(year: i32, month: u8, day: u8) -> Result<Self, DateError> {
        if !(1..=12).contains(&month) || day == 0 || day > days_in_month(year, month) {
            return Err(DateError::OutOfRange);
        }
        Ok(Date { year, month, day })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    pub fn day(&self) -> u8 {
        self.day
    }

    /// Parses `YYYY-MM-DD`.
    pub fn parse(s: &str) -> Result<Self, DateError> {
        let b = s.trim().as_bytes();
        if b.len() != 10 || b[4] != b'-' || b[7] != b'-' {
            return Err(DateError::Format);
        }
        let num = |range: core::ops::Range<usize>| -> Result<u32, DateError> {
            b[range].iter().try_fold(0u32, |acc, &c| {
                if c.is_ascii_digit() {
                    Ok(acc * 10 + u32::from(c - b'0'))
                } else {
                    Err(DateError::Format)
                }
            })
        };
        let year = num(0..4)? as i32;
        let month = num(5..7)? as u8;
        let day = num(8..10)? as u8;
        Date::new(year, month, day)
    }

    /// Days since 1970-01-01 (proleptic Gregorian).
    pub fn days_since_epoch(&self) -> i64 {
        let y = i64::from(self.year) - i64::from(self.month <= 2);
        let era = if y >= 0 { y } else { y - 399 } / 400;
        let yoe = y - era * 400;
        let m = i64::from(self.month);
        let mp = if m > 2 { m - 3 } else { m + 9 };
        let doy = (153 * mp + 2) / 5 + i64::from(self.day) - 1;
        let doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
        era * 146_097 + doe - 719_468
    }

    pub fn from_days_since_epoch(days: i64) -> Self {
        let z = days + 719_468;
        let era = if z >= 0 { z } else { z - 146_096 } / 146_097;
        let doe = z - era * 146_097;
        let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
        let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
        let mp = (5 * doy + 2) / 153;
        let day = (doy - (153 * mp + 2) / 5 + 1) as u8;
        let month = if mp < 10 { mp + 3 } else { mp - 9 } as u8;
        let year = (yoe + era * 400 + i64::from(month <= 2)) as i32;
        Date { year, month, day }
    }
}

impl FromStr for Date {
    type Err = DateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Date::parse(s)
    }
}

impl fmt::Display for Date {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

/// Inclusive observation window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DateWindow {
    start: Date,
    end: Date,
}

impl DateWindow {
    pub fn new(start: Date, end: Date) -> Result<Self, DateError> {
        if start > end {
            return Err(DateError::InvertedWindow);
        }
        Ok(DateWindow { start, end })
    }

    /// 2020-01-15 to 2020-02-24, the sampling window of the COVID-19 corpus.
    pub fn covid19_default() -> Self {
        DateWindow {
            start: Date {
                year: 2020,
                month: 1,
                day: 15,
            },
            end: Date {
                year: 2020,
                month: 2,
                day: 24,
            },
        }
    }

    pub fn start(&self) -> Date {
        self.start
    }

    pub fn end(&self) -> Date {
        self.end
    }

    pub fn contains(&self, date: Date) -> bool {
        self.start <= date && date <= self.end
    }
}

/// Seconds since the Unix epoch, UTC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Timestamp(pub i64);

impl Timestamp {
    pub fn date(&self) -> Date {
        Date::from_days_since_epoch(self.0.div_euclid(86_400))
    }

    /// Parses `YYYY-MM-DDTHH:MM:SSZ`.
    pub fn parse_rfc3339(s: &str) -> Result<Self, DateError> {
        let s = s.trim();
        let b = s.as_bytes();
        if b.len() != 20 || b[10] != b'T' || b[13] != b':' || b[16] != b':' || b[19] != b'Z' {
            return Err(DateError::Format);
        }
        let date = Date::parse(&s[..10])?;
        let field = |r: core::ops::Range<usize>, max: i64| -> Result<i64, DateError> {
            let v: i64 = s[r].parse().map_err(|_| DateError::Format)?;
            if (0..=max).contains(&v) {
                Ok(v)
            } else {
                Err(DateError::OutOfRange)
            }
        };
        let secs = field(11..13, 23)? * 3600 + field(14..16, 59)? * 60 + field(17..19, 59)?;
        Ok(Timestamp(date.days_since_epoch() * 86_400 + secs))
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let secs = self.0.rem_euclid(86_400);
        write!(
            f,
            "{}T{:02}:{:02}:{:02}Z",
            self.date(),
            secs / 3600,
            (secs / 60) % 60,
            secs % 60
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_and_validates() {
        let d = Date::parse("2020-02-29").unwrap();
        assert_eq!((d.year(), d.month(), d.day()), (2020, 2, 29));
        assert_eq!(Date::parse("2019-02-29"), Err(DateError::OutOfRange));
        assert_eq!(Date::parse("2020-2-01"), Err(DateError::Format));
        assert_eq!(Date::parse("2020-13-01"), Err(DateError::OutOfRange));
        assert_eq!(Date::parse("20x0-01-01"), Err(DateError::Format));
    }

    #[test]
    fn epoch_days_round_trip() {
        assert_eq!(Date::parse("1970-01-01").unwrap().days_since_epoch(), 0);
        assert_eq!(
            Date::parse("2020-02-24").unwrap().days_since_epoch(),
            18_316
        );
        for days in [-800_000i64, -1, 0, 59, 18_316, 2_932_896] {
            assert_eq!(Date::from_days_since_epoch(days).days_since_epoch(), days);
        }
    }

    #[test]
    fn timestamp_formatting() {
        let ts = Timestamp::parse_rfc3339("2020-02-24T13:05:09Z").unwrap();
        assert_eq!(ts.to_string(), "2020-02-24T13:05:09Z");
        assert_eq!(Timestamp(0).to_string(), "1970-01-01T00:00:00Z");
        assert!(Timestamp::parse_rfc3339("2020-02-24 13:05:09").is_err());
    }

    #[test]
    fn window_membership_is_inclusive() {
        let w = DateWindow::covid19_default();
        assert!(w.contains(Date::parse("2020-01-15").unwrap()));
        assert!(w.contains(Date::parse("2020-02-24").unwrap()));
        assert!(!w.contains(Date::parse("2020-03-01").unwrap()));
        assert_eq!(
            DateWindow::new(w.end(), w.start()),
            Err(DateError::InvertedWindow)
        );
    }
}
