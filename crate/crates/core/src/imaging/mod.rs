//! Grayscale rasters and the image operations the segmenters need.

mod dispersion;
mod image;
mod integral;
mod morphology;
mod ops;
mod pgm;
mod preprocess;

pub use dispersion::{signed_dispersion, ClassStats};
pub use image::GrayImage;
pub use integral::{integral, IntegralImage};
pub use morphology::{closing, dilate, erode, opening};
pub use ops::{autocontrast, invert, subtract};
pub use pgm::{load_pgm, read_pgm_file, save_pgm, write_pgm_file};
pub use preprocess::{preprocess_viz, PreprocessParams};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ImagingError {
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),
    #[error("unsupported PGM maxval {0} (only 255 is supported)")]
    UnsupportedMaxval(usize),
    #[error("PGM raster truncated: expected {expected} bytes, got {got}")]
    TruncatedData { expected: usize, got: usize },
    #[error("image dimensions must be positive")]
    EmptyImage,
    #[error("pixel buffer has {got} bytes, expected {expected}")]
    BufferSize { expected: usize, got: usize },
    #[error("window ({x}, {y}, {w}, {h}) exceeds {width}x{height} image")]
    OutOfBounds {
        x: usize,
        y: usize,
        w: usize,
        h: usize,
        width: usize,
        height: usize,
    },
    #[error("structuring element {se_w}x{se_h} must have odd positive sides")]
    EvenStructuringElement { se_w: usize, se_h: usize },
    #[error("image sizes differ: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
