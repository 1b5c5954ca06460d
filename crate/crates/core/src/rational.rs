//! Exact fractions for every threshold in the crate.
//!
//! Degree thresholds like `alpha * (n - 2)` are never evaluated in floating
//! point: a count `d` clears the bar iff `d * den >= num * (n - 2)`.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// `num / den` as an exact fraction.
pub fn frac(num: i128, den: i128) -> Rational {
    Ratio::new(num, den)
}

pub fn int(v: i128) -> Rational {
    Ratio::from_integer(v)
}

/// Parses `"0.33"`, `".799"`, `"1/3"` or `"2"` into an exact fraction.
pub fn parse_fraction(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 0,
        msg: format!("not a fraction: {s:?}"),
    };
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(frac(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, decimals) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && decimals.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(decimals.chars()).all(|c| c.is_ascii_digit()) || decimals.len() > 30 {
        return Err(bad());
    }
    let whole: i128 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
    let mut num = whole;
    let mut den: i128 = 1;
    for c in decimals.chars() {
        num = num * 10 + (c as u8 - b'0') as i128;
        den *= 10;
    }
    let r = frac(num, den);
    Ok(if neg { -r } else { r })
}

/// `count >= alpha * total`, exactly.
pub fn at_least(count: u64, alpha: &Rational, total: u64) -> bool {
    // count * den >= num * total
    (count as i128) * alpha.denom() >= alpha.numer() * (total as i128)
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Checks `0 < x < 1`.
pub fn in_open_unit(x: &Rational) -> bool {
    x > &Rational::zero() && x < &Rational::one()
}

/// `C(k, 2)` for counts.
pub fn choose2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// `C(k, 3)` for counts.
pub fn choose3(k: u64) -> u64 {
    if k < 3 {
        0
    } else {
        k * (k - 1) * (k - 2) / 6
    }
}
