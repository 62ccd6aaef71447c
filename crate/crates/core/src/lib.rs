//! Interval-constrained placement of sequential parts, and two OCR
//! segmentation pipelines built on it.
//!
//! * [`dsp`]: the linear-time placement solver plus reference solvers.
//! * [`imaging`]: grayscale rasters, PGM I/O, integral images, morphology
//!   and the signed inter-class dispersion objective.
//! * [`viz`]: row/field extraction for document inspection zones.
//! * [`plate`]: symbol box localisation on licence plates.
//! * [`testkit`]: seeded synthetic images with ground truth, and metrics.
//! * [`bench`]: solver timing.

pub mod bench;
pub mod dsp;
pub mod geometry;
pub mod imaging;
pub mod plate;
pub mod testkit;
pub mod viz;

pub use geometry::Rect;
