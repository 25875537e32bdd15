//! Moment files and image import/export.

#[cfg(feature = "image-io")]
mod image_io;
mod momentfile;

#[cfg(feature = "image-io")]
pub use image_io::{load_image, save_image, to_gray, to_u8};
pub use momentfile::{format_moments, load_moments, parse_moments, save_moments};
