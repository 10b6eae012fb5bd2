//! Exact, totally ordered matrix entries.
//!
//! Input entries are exact rationals. The certifier also needs entries that
//! sit strictly below every entry of the matrix it was derived from, ordered
//! among themselves by a layer level first and by the entry they replace
//! second. Numerically those are `-M - j + q/M` for a large enough `M`; here
//! they are represented symbolically by a tier, so no constant is ever chosen
//! and nesting the construction needs no re-scaling.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::Error;

/// Tier of every value read from an input matrix.
pub const ORIGINAL_TIER: i32 = 1;

/// A totally ordered exact entry value.
///
/// Values compare lexicographically by `(tier, primary, secondary)`.
/// Originals have tier 1 and no secondary part. A transformed value of tier
/// `t <= 0` carries an integer level as primary and the value it replaces as
/// secondary; it is below every value of a higher tier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EntryValue {
    Original(BigRational),
    Transformed {
        tier: i32,
        level: i64,
        inner: Box<EntryValue>,
    },
}

impl EntryValue {
    pub fn from_rational(q: BigRational) -> Self {
        EntryValue::Original(q)
    }

    pub fn from_integer(v: i64) -> Self {
        EntryValue::Original(BigRational::from_integer(BigInt::from(v)))
    }

    /// Single transformation of an original entry into tier 0.
    pub fn transformed(level: i64, original: &EntryValue) -> Result<Self, Error> {
        match original {
            EntryValue::Original(_) => Ok(EntryValue::Transformed {
                tier: 0,
                level,
                inner: Box::new(original.clone()),
            }),
            EntryValue::Transformed { .. } => Err(Error::Precondition(
                "transformed() takes an original entry; use transformed_in_tier for nested values"
                    .into(),
            )),
        }
    }

    /// Transformation into an explicit tier, used when the source matrix
    /// already holds transformed entries. `tier` must lie strictly below the
    /// tier of `inner`.
    pub fn transformed_in_tier(tier: i32, level: i64, inner: &EntryValue) -> Result<Self, Error> {
        if tier >= inner.tier() {
            return Err(Error::Precondition(format!(
                "target tier {tier} is not below the tier {} of the replaced value",
                inner.tier()
            )));
        }
        Ok(EntryValue::Transformed {
            tier,
            level,
            inner: Box::new(inner.clone()),
        })
    }

    pub fn tier(&self) -> i32 {
        match self {
            EntryValue::Original(_) => ORIGINAL_TIER,
            EntryValue::Transformed { tier, .. } => *tier,
        }
    }

    pub fn is_original(&self) -> bool {
        matches!(self, EntryValue::Original(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            EntryValue::Original(q) => Some(q),
            EntryValue::Transformed { .. } => None,
        }
    }
}

impl Ord for EntryValue {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        match (self, other) {
            (EntryValue::Original(a), EntryValue::Original(b)) => a.cmp(b),
            (
                EntryValue::Transformed {
                    tier: ta,
                    level: la,
                    inner: ia,
                },
                EntryValue::Transformed {
                    tier: tb,
                    level: lb,
                    inner: ib,
                },
            ) => ta.cmp(tb).then(la.cmp(lb)).then_with(|| ia.cmp(ib)),
            _ => self.tier().cmp(&other.tier()),
        }
    }
}

impl PartialOrd for EntryValue {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for EntryValue {
    fn from(v: i64) -> Self {
        EntryValue::from_integer(v)
    }
}

impl fmt::Display for EntryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntryValue::Original(q) => write!(f, "{}", format_rational(q)),
            EntryValue::Transformed { tier, level, inner } => {
                write!(f, "<t{tier}:{level}:{inner}>")
            }
        }
    }
}

impl FromStr for EntryValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(EntryValue::Original)
    }
}

/// Integers print bare, everything else as `p/q` in lowest terms.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `7`, `-3/4`, `2.50`, `-.5` or `1e-3` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Value(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Largest absolute value among original entries, zero if there are none.
pub fn max_abs_original<'a>(values: impl IntoIterator<Item = &'a EntryValue>) -> BigRational {
    values
        .into_iter()
        .filter_map(EntryValue::as_rational)
        .map(|q| q.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn constructors() {
        let v = EntryValue::from_rational(q(3, 2));
        assert_eq!(v.tier(), 1);
        assert_eq!(v.as_rational(), Some(&q(3, 2)));
        assert_eq!(EntryValue::from_integer(0), EntryValue::Original(q(0, 1)));
        assert_eq!(EntryValue::from_integer(-5).as_rational(), Some(&q(-5, 1)));
    }

    #[test]
    fn transformed_layout_and_order() {
        let t = EntryValue::transformed(-3, &EntryValue::from_integer(7)).unwrap();
        assert_eq!(
            t,
            EntryValue::Transformed {
                tier: 0,
                level: -3,
                inner: Box::new(EntryValue::from_integer(7))
            }
        );
        assert!(t < EntryValue::from_integer(-100));
        let t2 = EntryValue::transformed(-3, &EntryValue::from_integer(2)).unwrap();
        assert!(t > t2);
        let t3 = EntryValue::transformed(-2, &EntryValue::from_integer(-50)).unwrap();
        assert!(t3 > t);
    }

    #[test]
    fn double_transformation_needs_explicit_tier() {
        let t = EntryValue::transformed(-1, &EntryValue::from_integer(4)).unwrap();
        assert!(EntryValue::transformed(-2, &t).is_err());
        assert!(EntryValue::transformed_in_tier(0, -2, &t).is_err());
        let tt = EntryValue::transformed_in_tier(-1, -2, &t).unwrap();
        assert!(tt < t);
        assert!(tt < EntryValue::transformed(-9, &EntryValue::from_integer(-9)).unwrap());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("6/8").unwrap(), q(3, 4));
        assert_eq!(parse_rational("2.50").unwrap(), q(5, 2));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("+1.25e2").unwrap(), q(125, 1));
        assert_eq!(parse_rational("1e-3").unwrap(), q(1, 1000));
        for bad in ["", "x", "1/0", "1.2.3", "--1", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "-5", "3/2", "-7/3"] {
            let v: EntryValue = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }
}
