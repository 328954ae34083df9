//! Traversal costs in meters with an absorbing infinity.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

/// A nonnegative traversal cost in meters, or infinity.
///
/// Infinity compares greater than every finite cost and absorbs finite
/// addends. Adding two infinities has no meaning in the planners and panics;
/// use [`Cost::checked_add`] where that can legitimately happen.
#[derive(Clone, Copy, PartialEq)]
pub struct Cost(f64);

impl Cost {
    pub const ZERO: Cost = Cost(0.0);
    pub const INFINITE: Cost = Cost(f64::INFINITY);

    /// Wraps a finite, nonnegative number of meters.
    ///
    /// # Panics
    /// If `meters` is negative, NaN or infinite.
    pub fn new(meters: f64) -> Self {
        assert!(
            meters.is_finite() && meters >= 0.0,
            "cost must be finite and nonnegative, got {meters}"
        );
        Cost(meters + 0.0)
    }

    pub fn meters(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        !self.0.is_finite()
    }

    /// `None` when both operands are infinite.
    pub fn checked_add(self, rhs: Cost) -> Option<Cost> {
        if self.is_infinite() && rhs.is_infinite() {
            None
        } else {
            Some(Cost(self.0 + rhs.0))
        }
    }

    pub fn min(self, other: Cost) -> Cost {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        self.checked_add(rhs)
            .expect("sum of two infinite costs is undefined")
    }
}

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("Cost(inf)")
        } else {
            write!(f, "Cost({} m)", self.0)
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}
