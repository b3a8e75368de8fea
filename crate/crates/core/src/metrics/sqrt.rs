//! Square roots of nonnegative rationals, compared exactly by squaring.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{format_q, Scalar, Q};
use crate::ordermaps::PairMap;

/// `√r` for a rational `r >= 0`, stored as `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtValue {
    radicand: Q,
}

impl SqrtValue {
    pub fn new(radicand: Q) -> Result<Self> {
        if radicand < Q::zero() {
            return Err(Error::OutOfDomain(format!("sqrt({})", format_q(&radicand))));
        }
        Ok(SqrtValue { radicand })
    }

    /// `√(q²)` for `q >= 0`.
    pub fn of(q: &Q) -> Result<Self> {
        if *q < Q::zero() {
            return Err(Error::OutOfDomain(format_q(q)));
        }
        Ok(SqrtValue { radicand: q * q })
    }

    pub fn radicand(&self) -> &Q {
        &self.radicand
    }

    /// `self <= b + c`.
    pub fn le_sum(&self, b: &SqrtValue, c: &SqrtValue) -> bool {
        sqrt_le_sum(&self.radicand, &b.radicand, &c.radicand)
    }
}

impl Ord for SqrtValue {
    fn cmp(&self, o: &Self) -> Ordering {
        self.radicand.cmp(&o.radicand)
    }
}

impl PartialOrd for SqrtValue {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for SqrtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({})", format_q(&self.radicand))
    }
}

/// `√a <= √b + √c` for `a, b, c >= 0`: squaring once gives
/// `a - b - c <= 2√(bc)`, trivially true when the left side is `<= 0`.
#[inline]
pub fn sqrt_le_sum<S: Scalar>(a: &S, b: &S, c: &S) -> bool {
    let d = a.sub(b).sub(c);
    if d.is_neg() || d.is_zero_val() {
        return true;
    }
    d.mul(&d) <= b.mul(c).double().double()
}

/// `lhs <= 2√delta`.
#[inline]
pub fn le_two_sqrt<S: Scalar>(lhs: &S, delta: &S) -> bool {
    if lhs.is_neg() || lhs.is_zero_val() {
        return true;
    }
    !delta.is_neg() && lhs.mul(lhs) <= delta.double().double()
}

/// A matrix of [`SqrtValue`]s held as its radicands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtMatrix {
    radicands: PairMap,
}

impl SqrtMatrix {
    pub fn new(radicands: PairMap) -> Result<Self> {
        if let Some(v) = radicands.values().iter().find(|v| **v < Q::zero()) {
            return Err(Error::OutOfDomain(format!("sqrt({})", format_q(v))));
        }
        Ok(SqrtMatrix { radicands })
    }

    pub fn len(&self) -> usize {
        self.radicands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radicands.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> SqrtValue {
        SqrtValue { radicand: self.radicands.get(x, y).clone() }
    }

    pub fn radicands(&self) -> &PairMap {
        &self.radicands
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn squared_form_triangle() {
        // √4 <= √1 + √1 holds with equality.
        assert!(sqrt_le_sum(&qi(4), &qi(1), &qi(1)));
        assert!(!sqrt_le_sum(&qi(5), &qi(1), &qi(1)));
        assert!(sqrt_le_sum(&2i128, &1, &1));
        assert!(!sqrt_le_sum(&9i128, &2, &2));
        // √8 <= √2 + √2 exactly.
        assert!(sqrt_le_sum(&8i128, &2, &2));
        assert!(le_two_sqrt(&qi(2), &qi(1)));
        assert!(!le_two_sqrt(&qi(3), &qi(2)));
        assert!(le_two_sqrt(&qi(-3), &qi(0)));
    }

    #[test]
    fn ordering_and_display() {
        let a = SqrtValue::new(qi(3)).unwrap();
        let b = SqrtValue::of(&qi(2)).unwrap();
        assert!(a < b);
        assert_eq!(a.to_string(), "sqrt(3/1)");
        assert!(SqrtValue::new(qi(-1)).is_err());
        assert!(b.le_sum(&a, &SqrtValue::new(qi(1)).unwrap()));
    }
}
