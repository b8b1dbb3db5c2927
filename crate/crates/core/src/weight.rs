//! Exact nonnegative rational weights.
//!
//! Weights enter the library as integers or decimal strings and are kept as
//! reduced fractions so that scaling to a common integer grid is exact. All
//! solver arithmetic happens on the scaled integers; this type only covers
//! parsing, comparison and printing.

/// A nonnegative rational `num / den` in lowest terms.
///
/// Denominators are always of the form `2^a * 5^b` because values are only
/// ever constructed from integers or finite decimal strings, so every weight
/// has an exact decimal rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weight {
    num: u64,
    den: u64,
}

/// Why a weight literal was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightParseError {
    Malformed,
    Negative,
    /// Representable as a rational but too large for exact 64-bit arithmetic.
    TooLarge,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm_checked(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

impl Weight {
    pub fn from_integer(value: u64) -> Self {
        Weight { num: value, den: 1 }
    }

    fn reduced(num: u64, den: u64) -> Self {
        debug_assert!(den > 0);
        if num == 0 {
            return Weight { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        Weight {
            num: num / g,
            den: den / g,
        }
    }

    /// Parses a decimal literal: optional sign, digits, optional `.` fraction.
    ///
    /// Accepts `"3"`, `"1.25"`, `"+0.5"`; rejects empty strings, exponents,
    /// bare dots and anything with other characters.
    pub fn parse_decimal(text: &str) -> Result<Self, WeightParseError> {
        let mut rest = text;
        let mut negative = false;
        if let Some(stripped) = rest.strip_prefix('-') {
            negative = true;
            rest = stripped;
        } else if let Some(stripped) = rest.strip_prefix('+') {
            rest = stripped;
        }
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(WeightParseError::Malformed);
        }
        if rest.contains('.') && frac_part.is_empty() {
            return Err(WeightParseError::Malformed);
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(WeightParseError::Malformed);
        }

        let mut num: u64 = 0;
        for c in int_part.chars().chain(frac_part.chars()) {
            num = num
                .checked_mul(10)
                .and_then(|v| v.checked_add((c as u8 - b'0') as u64))
                .ok_or(WeightParseError::TooLarge)?;
        }
        let mut den: u64 = 1;
        for _ in 0..frac_part.len() {
            den = den.checked_mul(10).ok_or(WeightParseError::TooLarge)?;
        }
        if negative && num != 0 {
            return Err(WeightParseError::Negative);
        }
        Ok(Weight::reduced(num, den))
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Exact scaled value `self * scale`; `scale` must be a multiple of the
    /// denominator.
    pub(crate) fn scaled(&self, scale: u64) -> u128 {
        debug_assert!(scale.is_multiple_of(self.den));
        (self.num as u128) * ((scale / self.den) as u128)
    }

    /// Exact decimal rendering, e.g. `5/4` prints as `1.25`.
    pub fn to_decimal_string(&self) -> String {
        if self.den == 1 {
            return self.num.to_string();
        }
        let mut den = self.den;
        let mut twos = 0u32;
        while den.is_multiple_of(2) {
            den /= 2;
            twos += 1;
        }
        let mut fives = 0u32;
        while den.is_multiple_of(5) {
            den /= 5;
            fives += 1;
        }
        debug_assert_eq!(den, 1, "weight denominators are always 2^a * 5^b");
        let digits = twos.max(fives);
        let pow: u128 = 10u128.pow(digits);
        let scaled = (self.num as u128) * pow / (self.den as u128);
        let s = scaled.to_string();
        let d = digits as usize;
        if s.len() <= d {
            format!("0.{}{}", "0".repeat(d - s.len()), s)
        } else {
            format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
        }
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = (self.num as u128) * (other.den as u128);
        let rhs = (other.num as u128) * (self.den as u128);
        lhs.cmp(&rhs)
    }
}
