use std::path::Path;

use image::{DynamicImage, ImageFormat, ImageReader};

use crate::error::{MomentError, Result};
use crate::image::GrayImage;

fn format_of(path: &Path) -> Result<ImageFormat> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
    match ext.as_str() {
        "png" => Ok(ImageFormat::Png),
        "bmp" => Ok(ImageFormat::Bmp),
        "pgm" | "pnm" | "ppm" => Ok(ImageFormat::Pnm),
        _ => Err(MomentError::UnsupportedFormat(format!("'{}'", path.display()))),
    }
}

/// Luma `0.299 R + 0.587 G + 0.114 B` (unrounded); gray images pass through.
pub fn to_gray(img: &DynamicImage) -> Result<GrayImage> {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let pixels: Vec<f64> = match img {
        DynamicImage::ImageLuma8(g) => g.pixels().map(|p| p.0[0] as f64).collect(),
        DynamicImage::ImageLumaA8(g) => g.pixels().map(|p| p.0[0] as f64).collect(),
        DynamicImage::ImageLuma16(g) => g.pixels().map(|p| p.0[0] as f64 / 257.0).collect(),
        DynamicImage::ImageLumaA16(g) => g.pixels().map(|p| p.0[0] as f64 / 257.0).collect(),
        other => other
            .to_rgb8()
            .pixels()
            .map(|p| 0.299 * p.0[0] as f64 + 0.587 * p.0[1] as f64 + 0.114 * p.0[2] as f64)
            .collect(),
    };
    GrayImage::new(w, h, pixels)
}

pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let format = format_of(path)?;
    let reader = ImageReader::open(path)?.with_guessed_format()?;
    match reader.format() {
        Some(ImageFormat::Png | ImageFormat::Bmp | ImageFormat::Pnm) | None => {}
        Some(other) => return Err(MomentError::UnsupportedFormat(format!("{other:?}"))),
    }
    let mut reader = reader;
    if reader.format().is_none() {
        reader.set_format(format);
    }
    let img = reader.decode().map_err(|e| MomentError::Decode(e.to_string()))?;
    to_gray(&img)
}

/// Min-max normalized 8-bit samples, rounded half up; constant images map to 128.
pub fn to_u8(img: &GrayImage) -> Vec<u8> {
    img.normalized_0_255().pixels().map(|v| (v + 0.5).floor().clamp(0.0, 255.0) as u8).collect()
}

/// Writes an 8-bit grayscale PNG or binary PGM, chosen by extension.
pub fn save_image(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let format = match format_of(path)? {
        f @ (ImageFormat::Png | ImageFormat::Pnm) => f,
        _ => return Err(MomentError::UnsupportedFormat(format!("cannot write '{}'", path.display()))),
    };
    let buf = image::GrayImage::from_raw(img.width() as u32, img.height() as u32, to_u8(img))
        .ok_or_else(|| MomentError::Encode("buffer size mismatch".into()))?;
    buf.save_with_format(path, format).map_err(|e| MomentError::Encode(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::{Rgb, RgbImage};

    #[test]
    fn white_and_red() {
        let dir = tempfile::tempdir().unwrap();
        let white = dir.path().join("w.png");
        RgbImage::from_pixel(2, 2, Rgb([255, 255, 255])).save(&white).unwrap();
        assert!(load_image(&white).unwrap().pixels().all(|v| (v - 255.0).abs() < 1e-9));
        let red = dir.path().join("r.png");
        RgbImage::from_pixel(1, 1, Rgb([255, 0, 0])).save(&red).unwrap();
        assert!((load_image(&red).unwrap().get(0, 0) - 76.245).abs() < 1e-9);
    }

    #[test]
    fn gray_bmp_is_identity() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.bmp");
        let raw: Vec<u8> = (0..12).map(|i| (i * 20) as u8).collect();
        image::GrayImage::from_raw(4, 3, raw.clone()).unwrap().save(&path).unwrap();
        let back = load_image(&path).unwrap();
        assert_eq!(back.to_vec(), raw.iter().map(|&v| v as f64).collect::<Vec<_>>());
    }

    #[test]
    fn save_rules() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.pgm");
        save_image(&GrayImage::filled(3, 2, 9.0), &path).unwrap();
        assert!(load_image(&path).unwrap().pixels().all(|v| v == 128.0));

        let ramp = GrayImage::from_fn(256, 1, |c, _| c as f64);
        let path = dir.path().join("ramp.png");
        save_image(&ramp, &path).unwrap();
        assert_eq!(load_image(&path).unwrap(), ramp);

        assert!(matches!(save_image(&ramp, dir.path().join("x.jpg")), Err(MomentError::UnsupportedFormat(_))));
        assert!(matches!(load_image(dir.path().join("x.gif")), Err(MomentError::UnsupportedFormat(_))));
    }

    #[test]
    fn garbage_fails_to_decode() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.png");
        std::fs::write(&path, b"definitely not a png").unwrap();
        assert!(load_image(&path).is_err());
    }
}
