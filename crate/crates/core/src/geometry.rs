use serde::{Deserialize, Serialize};

/// Axis-aligned pixel rectangle `[x, x + w) × [y, y + h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

impl Rect {
    pub const fn new(x: usize, y: usize, w: usize, h: usize) -> Self {
        Self { x, y, w, h }
    }

    /// Rectangle spanning `[left, right) × [top, bottom)`.
    pub fn from_edges(left: usize, top: usize, right: usize, bottom: usize) -> Self {
        debug_assert!(left <= right && top <= bottom);
        Self::new(left, top, right - left, bottom - top)
    }

    pub fn right(&self) -> usize {
        self.x + self.w
    }

    pub fn bottom(&self) -> usize {
        self.y + self.h
    }

    pub fn area(&self) -> usize {
        self.w * self.h
    }

    pub fn is_empty(&self) -> bool {
        self.w == 0 || self.h == 0
    }

    pub fn fits_in(&self, width: usize, height: usize) -> bool {
        self.right() <= width && self.bottom() <= height
    }

    pub fn intersection_area(&self, other: &Rect) -> usize {
        let w = self.right().min(other.right()).saturating_sub(self.x.max(other.x));
        let h = self.bottom().min(other.bottom()).saturating_sub(self.y.max(other.y));
        w * h
    }

    /// Intersection over union. Two empty rectangles count as a perfect match.
    pub fn iou(&self, other: &Rect) -> f64 {
        let inter = self.intersection_area(other);
        let union = self.area() + other.area() - inter;
        if union == 0 {
            if self.is_empty() && other.is_empty() {
                1.0
            } else {
                0.0
            }
        } else {
            inter as f64 / union as f64
        }
    }
}
