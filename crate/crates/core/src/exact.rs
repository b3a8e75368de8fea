//! Exact rational arithmetic helpers.
//!
//! Every quantity in the toolkit is a [`Q`] (an arbitrary-precision rational).
//! Hot loops over triples and quadruples run on a common-denominator integer
//! view when the values are small enough, and fall back to [`Q`] otherwise;
//! both instantiations go through the same generic kernels via [`Scalar`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational.
pub type Q = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn half(x: &Q) -> Q {
    x / qi(2)
}

pub fn min_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if a >= b {
        a
    } else {
        b
    }
}

/// Canonical `"num/den"` form: lowest terms, positive denominator, integers
/// written with `/1`.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"num/den"` or a bare integer `"num"`. The denominator must be a
/// positive integer; non-reduced fractions are normalized.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let valid_int = |t: &str, signed: bool| {
        let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) if valid_int(d, false) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Serde adapter writing a rational as its canonical string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QStr(pub Q);

impl Serialize for QStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for QStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map(QStr).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for QStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_q(&self.0))
    }
}

/// Ordered additive scalar used by the generic checking kernels.
pub trait Scalar: Clone + Ord + Send + Sync {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn double(&self) -> Self {
        self.add(self)
    }
    fn mul(&self, o: &Self) -> Self;
    fn is_zero_val(&self) -> bool;
    fn is_neg(&self) -> bool;
}

impl Scalar for i128 {
    #[inline]
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    #[inline]
    fn is_zero_val(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn is_neg(&self) -> bool {
        *self < 0
    }
}

impl Scalar for Q {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

// Scaled magnitudes stay below 2^60 so that sums of up to 64 terms fit in i128.
const SCALE_LIMIT_BITS: u64 = 60;

/// Rescales several slices by one common positive factor (the lcm of all
/// denominators) into machine integers. Returns `None` when any scaled value
/// would exceed the safe range; callers then fall back to exact rationals.
///
/// Positive scaling preserves every linear (in)equality the kernels test.
pub fn common_scale(slices: &[&[Q]]) -> Option<Vec<Vec<i128>>> {
    common_scale_bits(slices, SCALE_LIMIT_BITS)
}

/// [`common_scale`] with an explicit magnitude limit, for kernels that
/// multiply values (squared-form comparisons need about 4x headroom).
pub fn common_scale_bits(slices: &[&[Q]], limit: u64) -> Option<Vec<Vec<i128>>> {
    let mut lcm = BigInt::one();
    for s in slices {
        for x in s.iter() {
            lcm = lcm.lcm(x.denom());
            if lcm.bits() > limit {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(slices.len());
    for s in slices {
        let mut v = Vec::with_capacity(s.len());
        for x in s.iter() {
            let scaled = x.numer() * (&lcm / x.denom());
            if scaled.abs().bits() > limit {
                return None;
            }
            v.push(scaled.to_i128()?);
        }
        out.push(v);
    }
    Some(out)
}

/// Runs `$body` with each named binding bound to a slice of a [`Scalar`]
/// type: `&[i128]` when the inputs admit a common small scale, `&[Q]`
/// otherwise. The body must be generic over the scalar type.
#[macro_export]
macro_rules! exact_dispatch {
    ([$($src:expr),+ $(,)?], |$($name:ident),+| $body:expr) => {
        $crate::exact_dispatch!(@bits 60, [$($src),+], |$($name),+| $body)
    };
    (@bits $bits:expr, [$($src:expr),+ $(,)?], |$($name:ident),+| $body:expr) => {{
        match $crate::exact::common_scale_bits(&[$(&$src[..]),+], $bits) {
            Some(scaled) => {
                let mut _it = scaled.iter();
                $(let $name: &[i128] = _it.next().expect("arity");)+
                $body
            }
            None => {
                $(let $name: &[$crate::exact::Q] = &$src[..];)+
                $body
            }
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("2/4").unwrap(), q(1, 2));
        assert_eq!(parse_q("-3").unwrap(), qi(-3));
        assert_eq!(format_q(&q(-6, 4)), "-3/2");
        assert_eq!(format_q(&qi(0)), "0/1");
        for bad in ["1/0", "", "a/2", "1/-2", "1.5", "--1", "1/", "/2"] {
            assert!(parse_q(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn scaling_preserves_order() {
        let a = vec![q(1, 3), q(1, 2), q(-5, 6)];
        let b = vec![q(7, 4)];
        let s = common_scale(&[&a, &b]).unwrap();
        assert_eq!(s[0], vec![4, 6, -10]);
        assert_eq!(s[1], vec![21]);
    }

    #[test]
    fn scaling_gives_up_on_huge_values() {
        let big = Q::from_integer(BigInt::from(1u8) << 70usize);
        assert!(common_scale(&[&[big]]).is_none());
    }
}
