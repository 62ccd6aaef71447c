use serde::{Deserialize, Serialize};

/// Pixel counts and brightness totals of the two classes: class 0 is the
/// background (gaps), class 1 the fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClassStats {
    pub q0: u64,
    pub q1: u64,
    pub s0: u64,
    pub s1: u64,
}

impl ClassStats {
    /// Stats for `q1` field pixels of total brightness `s1` in an image of
    /// `total_pixels` pixels and `total_brightness`.
    pub fn from_fields(total_pixels: u64, total_brightness: u64, q1: u64, s1: u64) -> Self {
        debug_assert!(q1 <= total_pixels && s1 <= total_brightness);
        Self {
            q0: total_pixels - q1,
            q1,
            s0: total_brightness - s1,
            s1,
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            q0: self.q1,
            q1: self.q0,
            s0: self.s1,
            s1: self.s0,
        }
    }

    /// Signed between-class variance, see [`signed_dispersion`].
    pub fn dispersion(&self) -> f64 {
        signed_dispersion(self)
    }
}

/// Otsu's between-class variance multiplied by the sign of `μ0 - μ1`:
/// `ω0·ω1·(μ0 - μ1)·|μ0 - μ1|`.
///
/// Large when the background is bright and the fields are dark. Returns 0
/// when either class is empty.
pub fn signed_dispersion(stats: &ClassStats) -> f64 {
    if stats.q0 == 0 || stats.q1 == 0 {
        return 0.0;
    }
    let (q0, q1) = (stats.q0 as f64, stats.q1 as f64);
    let total = q0 + q1;
    let diff = stats.s0 as f64 / q0 - stats.s1 as f64 / q1;
    (q0 / total) * (q1 / total) * diff * diff.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_means_give_zero() {
        let s = ClassStats { q0: 10, q1: 10, s0: 500, s1: 500 };
        assert_eq!(signed_dispersion(&s), 0.0);
    }

    #[test]
    fn direct_evaluation() {
        let s = ClassStats { q0: 4, q1: 4, s0: 800, s1: 400 };
        assert_eq!(signed_dispersion(&s), 2500.0);
        assert_eq!(signed_dispersion(&s.swapped()), -2500.0);
    }

    #[test]
    fn empty_class_gives_zero() {
        assert_eq!(signed_dispersion(&ClassStats { q0: 0, q1: 5, s0: 0, s1: 100 }), 0.0);
        assert_eq!(signed_dispersion(&ClassStats { q0: 5, q1: 0, s0: 100, s1: 0 }), 0.0);
    }

    #[test]
    fn strictly_decreasing_in_field_brightness() {
        // fixed class volumes and image total: V falls as s1 grows
        let (total_px, total_b) = (192u64, 192 * 128);
        for q1 in [1u64, 17, 96, 150, 191] {
            let max_s1 = (q1 * 255).min(total_b);
            let min_s1 = total_b.saturating_sub((total_px - q1) * 255);
            let mut prev = f64::INFINITY;
            let mut s1 = min_s1;
            while s1 <= max_s1 {
                let v = ClassStats::from_fields(total_px, total_b, q1, s1).dispersion();
                assert!(v < prev, "q1={q1} s1={s1}: {v} !< {prev}");
                prev = v;
                s1 += 7;
            }
        }
    }
}
