use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{fmt_frac, half, one, zero, Rational};

/// A closed subinterval `[lo, hi]` of `[0, 1]` with exact endpoints.
///
/// Degenerate intervals (`lo == hi`) are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalQ {
    lo: Rational,
    hi: Rational,
}

impl IntervalQ {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi || lo < zero() || hi > one() {
            return Err(Error::InvalidInterval(Box::new((lo, hi))));
        }
        Ok(Self { lo, hi })
    }

    /// The closed hull of two points, in either order.
    pub fn hull(a: &Rational, b: &Rational) -> Result<Self> {
        if a <= b {
            Self::new(a.clone(), b.clone())
        } else {
            Self::new(b.clone(), a.clone())
        }
    }

    pub fn point(x: Rational) -> Result<Self> {
        Self::new(x.clone(), x)
    }

    pub fn unit() -> Self {
        Self { lo: zero(), hi: one() }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        half(&self.lo, &self.hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_unit(&self) -> bool {
        self.lo == zero() && self.hi == one()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `lo < x < hi`.
    pub fn contains_interior(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &IntervalQ) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &IntervalQ) -> Option<IntervalQ> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(IntervalQ { lo, hi })
    }

    /// True when the intersection holds at most one point.
    pub fn almost_disjoint(&self, other: &IntervalQ) -> bool {
        self.intersect(other).is_none_or(|i| i.is_degenerate())
    }

    /// True when every common point is an endpoint of `self`.
    pub fn meets_only_at_endpoints_of(&self, other: &IntervalQ) -> bool {
        match other.intersect(self) {
            None => true,
            Some(i) => i.is_degenerate() && (i.lo == self.lo || i.lo == self.hi),
        }
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_frac(&self.lo), fmt_frac(&self.hi))
    }
}

/// Shorthand for tests and fixtures: `iv(q(1,4), q(1,2))`.
pub fn iv(lo: Rational, hi: Rational) -> IntervalQ {
    IntervalQ::new(lo, hi).expect("valid interval")
}
