use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Sub};

/// A non-negative extended real: a finite `f64` or `+∞`.
///
/// NaN and negative values are rejected at construction, which makes the
/// ordering total.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Cost(f64);

impl Cost {
    pub const ZERO: Cost = Cost(0.0);
    pub const ONE: Cost = Cost(1.0);
    pub const INFINITY: Cost = Cost(f64::INFINITY);

    /// Panics on NaN or negative input.
    #[track_caller]
    pub fn new(value: f64) -> Cost {
        Cost::try_new(value).unwrap_or_else(|| panic!("invalid cost {value}"))
    }

    pub fn try_new(value: f64) -> Option<Cost> {
        if value.is_nan() || value < 0.0 {
            None
        } else {
            // normalises -0.0
            Some(Cost(value + 0.0))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// `self - rhs`, clamped at zero.
    #[inline]
    pub fn saturating_sub(self, rhs: Cost) -> Cost {
        Cost((self.0 - rhs.0).max(0.0))
    }
}

impl Eq for Cost {}

impl PartialOrd for Cost {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Hash for Cost {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state)
    }
}

impl Add for Cost {
    type Output = Cost;
    #[inline]
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl AddAssign for Cost {
    #[inline]
    fn add_assign(&mut self, rhs: Cost) {
        self.0 += rhs.0;
    }
}

/// Panics (in debug builds) when the difference would be negative; use
/// [`Cost::saturating_sub`] when that can happen.
impl Sub for Cost {
    type Output = Cost;
    #[inline]
    fn sub(self, rhs: Cost) -> Cost {
        debug_assert!(self.0 >= rhs.0, "negative cost {} - {}", self.0, rhs.0);
        Cost((self.0 - rhs.0).max(0.0))
    }
}

impl Mul<f64> for Cost {
    type Output = Cost;
    #[inline]
    fn mul(self, rhs: f64) -> Cost {
        debug_assert!(rhs >= 0.0);
        Cost(self.0 * rhs)
    }
}

impl Div<f64> for Cost {
    type Output = Cost;
    #[inline]
    fn div(self, rhs: f64) -> Cost {
        debug_assert!(rhs > 0.0);
        Cost(self.0 / rhs)
    }
}

impl From<u32> for Cost {
    fn from(v: u32) -> Cost {
        Cost(v as f64)
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A closed bracket `[low, high]` of costs with `low <= high`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CostInterval {
    pub low: Cost,
    pub high: Cost,
}

impl CostInterval {
    #[track_caller]
    pub fn new(low: Cost, high: Cost) -> CostInterval {
        assert!(low <= high, "empty interval [{low}, {high}]");
        CostInterval { low, high }
    }

    /// `[low, +∞]`
    pub fn at_least(low: Cost) -> CostInterval {
        CostInterval { low, high: Cost::INFINITY }
    }

    pub fn contains(&self, c: Cost) -> bool {
        self.low <= c && c <= self.high
    }

    pub fn is_point(&self) -> bool {
        self.low == self.high
    }

    /// Intersection of two brackets, or `None` when they are disjoint.
    pub fn intersect(&self, other: &CostInterval) -> Option<CostInterval> {
        let low = self.low.max(other.low);
        let high = self.high.min(other.high);
        (low <= high).then_some(CostInterval { low, high })
    }
}

impl fmt::Display for CostInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.low, self.high)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nan_and_negatives() {
        assert!(Cost::try_new(f64::NAN).is_none());
        assert!(Cost::try_new(-1.0).is_none());
        assert_eq!(Cost::try_new(-0.0), Some(Cost::ZERO));
    }

    #[test]
    fn infinity_is_greatest() {
        assert!(Cost::INFINITY > Cost::new(f64::MAX));
        assert_eq!(Cost::INFINITY.max(Cost::new(3.0)), Cost::INFINITY);
    }

    #[test]
    fn intersect_disjoint_is_none() {
        let a = CostInterval::new(Cost::new(1.0), Cost::new(2.0));
        let b = CostInterval::at_least(Cost::new(3.0));
        assert_eq!(a.intersect(&b), None);
        let c = CostInterval::at_least(Cost::new(1.5));
        assert_eq!(a.intersect(&c), Some(CostInterval::new(Cost::new(1.5), Cost::new(2.0))));
    }
}
