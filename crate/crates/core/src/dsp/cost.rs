use std::fmt;

/// Placement cost extended with an absorbing `+inf` sentinel.
///
/// `INFINITY` marks a forbidden position: it compares greater than every
/// finite value and `a.plus(INFINITY) == INFINITY` for every `a`.
pub trait Cost: Copy + PartialOrd + fmt::Debug + Send + Sync + 'static {
    const ZERO: Self;
    const INFINITY: Self;

    fn is_infinite(self) -> bool;

    /// Absorbing addition. Never overflows: sums that do not fit saturate to
    /// `INFINITY`.
    fn plus(self, rhs: Self) -> Self;

    /// True for finite non-negative values and for the sentinel.
    fn is_admissible(self) -> bool;

    #[inline]
    fn is_finite(self) -> bool {
        !self.is_infinite()
    }
}

impl Cost for u64 {
    const ZERO: Self = 0;
    const INFINITY: Self = u64::MAX;

    #[inline]
    fn is_infinite(self) -> bool {
        self == u64::MAX
    }

    #[inline]
    fn plus(self, rhs: Self) -> Self {
        self.saturating_add(rhs)
    }

    #[inline]
    fn is_admissible(self) -> bool {
        true
    }
}

impl Cost for i64 {
    const ZERO: Self = 0;
    const INFINITY: Self = i64::MAX;

    #[inline]
    fn is_infinite(self) -> bool {
        self == i64::MAX
    }

    #[inline]
    fn plus(self, rhs: Self) -> Self {
        // Both operands are non-negative, so only the upper bound can saturate.
        self.saturating_add(rhs)
    }

    #[inline]
    fn is_admissible(self) -> bool {
        self >= 0
    }
}

impl Cost for f64 {
    const ZERO: Self = 0.0;
    const INFINITY: Self = f64::INFINITY;

    #[inline]
    fn is_infinite(self) -> bool {
        self == f64::INFINITY
    }

    #[inline]
    fn plus(self, rhs: Self) -> Self {
        self + rhs
    }

    #[inline]
    fn is_admissible(self) -> bool {
        self >= 0.0
    }
}
