//! Exact integer and rational arithmetic plus certified intervals.
//!
//! Everything downstream works over [`Int`] (arbitrary-precision integers)
//! and [`Rat`] (reduced fractions with positive denominator, as maintained
//! by `num-rational`). Comparisons between rationals are exact
//! cross-multiplications, so strict inequalities proved elsewhere in the
//! crate never depend on a tolerance. [`Enclosure`] is a closed rational
//! interval certifying `lo <= value <= hi` for some real quantity.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = BigRational;

/// Shorthand for `n/d` as a reduced rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Shorthand for an integer-valued rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// `10^n` as an integer.
pub fn pow10(n: usize) -> Int {
    num::pow(Int::from(10), n)
}

/// Greatest integer `<= r`.
pub fn floor_part(r: &Rat) -> Int {
    r.numer().div_floor(r.denom())
}

/// Fractional part `r - floor(r)`, always in `[0, 1)`.
pub fn frac_part(r: &Rat) -> Rat {
    r - Rat::from_integer(floor_part(r))
}

/// Correctly rounded decimal rendering with `digits` fractional digits.
///
/// Rounding is round-half-to-even on the exact scaled value, so output is
/// deterministic across platforms. With `digits == 0` the rounded integer
/// is rendered without a decimal point.
pub fn decimal_render(r: &Rat, digits: usize) -> String {
    decimal_render_parts(r.numer(), r.denom(), digits)
}

/// Same as [`decimal_render`] but on a raw `num/den` pair (`den > 0`).
///
/// The pair does not need to be reduced, which lets bulk scans render
/// values without paying a gcd per row.
pub fn decimal_render_parts(num: &Int, den: &Int, digits: usize) -> String {
    debug_assert!(den.is_positive());
    let scale = pow10(digits);
    let (q, rem) = (num * &scale).div_mod_floor(den);
    // div_mod_floor leaves 0 <= rem < den; ties round to the even neighbour.
    let rounded = match (&rem + &rem).cmp(den) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1
            } else {
                q
            }
        }
    };
    let negative = rounded.is_negative();
    let magnitude = rounded.abs();
    if digits == 0 {
        return format!("{}{}", if negative { "-" } else { "" }, magnitude);
    }
    let (int_part, frac_part) = magnitude.div_rem(&scale);
    format!(
        "{}{}.{:0>width$}",
        if negative { "-" } else { "" },
        int_part,
        frac_part.to_string(),
        width = digits
    )
}

/// Serializes a rational as `num/den`, the exact on-disk format used by the
/// CSV outputs (always slashed, even for integers).
pub fn rat_csv(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a/b`, integer, or decimal/scientific notation (`1.5`, `1e-30`)
/// into an exact rational.
pub fn parse_rational(input: &str) -> Result<Rat> {
    let s = input.trim();
    let err = || Error::ParseRational {
        input: input.to_string(),
    };
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let numer: Int = n.trim().parse().map_err(|_| err())?;
        let denom: Int = d.trim().parse().map_err(|_| err())?;
        if denom.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(numer, denom));
    }
    // decimal with optional exponent
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| err())?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_text, frac_text) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_text.is_empty() && frac_text.is_empty() {
        return Err(err());
    }
    let negative = int_text.starts_with('-');
    let int_digits = int_text.trim_start_matches(['+', '-']);
    if !int_digits.chars().all(|c| c.is_ascii_digit())
        || !frac_text.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{}{}", int_digits, frac_text);
    let digits = if digits.is_empty() { "0".into() } else { digits };
    let numer: Int = digits.parse().map_err(|_| err())?;
    let numer = if negative { -numer } else { numer };
    let shift = exponent - frac_text.len() as i64;
    let value = if shift >= 0 {
        Rat::from_integer(numer * pow10(shift as usize))
    } else {
        Rat::new(numer, pow10((-shift) as usize))
    };
    Ok(value)
}

/// Table of factorials `0! ..= n!`.
pub fn factorials(n: usize) -> Vec<Int> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(Int::one());
    for i in 1..=n {
        let next = table.last().unwrap() * Int::from(i);
        table.push(next);
    }
    table
}

/// Row `C(n, 0) ..= C(n, n)` of the Pascal triangle.
pub fn binomial_row(n: usize) -> Vec<Int> {
    let mut row = Vec::with_capacity(n + 1);
    row.push(Int::one());
    for i in 0..n {
        // C(n, i+1) = C(n, i) * (n - i) / (i + 1), exact division
        let next = (row.last().unwrap() * Int::from(n - i)) / Int::from(i + 1);
        row.push(next);
    }
    row
}

/// Floor of the integer square root.
pub fn isqrt(n: u128) -> u128 {
    use num::integer::Roots;
    n.sqrt()
}

/// Rational approximation of `sqrt(v)` with `|result - sqrt(v)| <= sqrt(v) * 10^-guard_digits`,
/// computed by exact integer Newton iteration on a scaled radicand.
pub fn sqrt_approx(v: &Rat, guard_digits: usize) -> Result<Rat> {
    if !v.is_positive() {
        return Err(Error::NonPositivePoint {
            value: v.to_string(),
        });
    }
    // sqrt(n/d) = sqrt(n*d)/d; a few extra digits absorb the floor error.
    let scale = pow10(guard_digits + 3);
    let radicand = v.numer() * v.denom() * &scale * &scale;
    let root = radicand.sqrt();
    Ok(Rat::new(root, v.denom() * scale))
}

/// Closed rational interval `[lo, hi]` certified to contain a real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rat,
    hi: Rat,
}

impl Enclosure {
    /// Builds `[lo, hi]`. Panics if `lo > hi`; callers construct enclosures
    /// from ordered data.
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Self { lo, hi }
    }

    /// Degenerate interval `[r, r]`.
    pub fn point(r: Rat) -> Self {
        Self {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn is_subset_of(&self, other: &Enclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        if lo <= hi {
            Some(Enclosure::new(lo.clone(), hi.clone()))
        } else {
            None
        }
    }

    /// Widens both endpoints outward by `slack >= 0`.
    pub fn widen(&self, slack: &Rat) -> Enclosure {
        debug_assert!(!slack.is_negative());
        Enclosure::new(&self.lo - slack, &self.hi + slack)
    }

    /// Interval product with a nonnegative scalar.
    pub fn mul_nonneg(&self, r: &Rat) -> Enclosure {
        debug_assert!(!r.is_negative());
        Enclosure::new(&self.lo * r, &self.hi * r)
    }

    /// Interval translation by `-r`.
    pub fn sub_rat(&self, r: &Rat) -> Enclosure {
        Enclosure::new(&self.lo - r, &self.hi - r)
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// True when `0` is certifiably outside the interval.
    pub fn excludes_zero(&self) -> bool {
        self.strictly_positive() || self.strictly_negative()
    }

    /// `max(|lo|, |hi|)`, an upper bound on the magnitude of the enclosed value.
    pub fn abs_upper(&self) -> Rat {
        let la = self.lo.abs();
        let ha = self.hi.abs();
        if la >= ha {
            la
        } else {
            ha
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Sign of an integer as -1/0/+1, used by interval quotient logic.
pub fn int_sign(n: &Int) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
