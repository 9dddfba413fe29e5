//! Image file I/O: PGM (P2 ASCII, P5 binary) and 8-bit PNG.
//!
//! PGM parsing is done here; PNG codecs come from the `image` crate. The
//! container is picked by file magic on read, so extensions never matter.

use std::path::Path;

use crate::error::{Error, Result};
use crate::image::{Image, RgbImage};

/// On-disk format for [`save_image`] / [`save_rgb_image`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    /// PGM "P2", ASCII samples.
    PgmAscii,
    /// PGM "P5", binary samples.
    PgmBinary,
    /// 8-bit PNG, grayscale or RGB, no alpha.
    Png,
}

impl ImageFormat {
    /// Picks a format from a path extension: `.png` is PNG, anything else
    /// falls back to binary PGM.
    pub fn from_path(path: &Path) -> ImageFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("png") => ImageFormat::Png,
            _ => ImageFormat::PgmBinary,
        }
    }
}

/// Result of [`load_image`]: single-channel sources decode to `Gray`,
/// 3-channel sources to `Rgb`.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedImage {
    Gray(Image),
    Rgb(RgbImage),
}

impl LoadedImage {
    /// The grayscale view: `Gray` as-is, `Rgb` through [`RgbImage::to_gray`].
    pub fn into_gray(self) -> Image {
        match self {
            LoadedImage::Gray(img) => img,
            LoadedImage::Rgb(img) => img.to_gray(),
        }
    }
}

/// Loads a PGM or PNG file, dispatching on its magic bytes.
pub fn load_image(path: &Path) -> Result<LoadedImage> {
    let bytes = std::fs::read(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::FileNotFound(path.to_path_buf())
        } else {
            Error::Io(e)
        }
    })?;
    if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        parse_pgm(&bytes).map(LoadedImage::Gray)
    } else if bytes.starts_with(&[0x89, b'P', b'N', b'G']) {
        parse_png(&bytes)
    } else {
        Err(Error::MalformedFile(
            "bad magic: expected PGM (P2/P5) or PNG".into(),
        ))
    }
}

/// Writes a grayscale image. Unit-domain images are quantized via
/// [`Image::to_byte`] first.
pub fn save_image(img: &Image, path: &Path, format: ImageFormat) -> Result<()> {
    let byte_img;
    let img = match img.as_bytes() {
        Ok(_) => img,
        Err(_) => {
            byte_img = img.to_byte()?;
            &byte_img
        }
    };
    let samples = img.as_bytes()?;
    match format {
        ImageFormat::PgmAscii => std::fs::write(path, encode_p2(img.width(), img.height(), samples))?,
        ImageFormat::PgmBinary => std::fs::write(path, encode_p5(img.width(), img.height(), samples))?,
        ImageFormat::Png => {
            image::save_buffer_with_format(
                path,
                samples,
                dim_u32(img.width())?,
                dim_u32(img.height())?,
                image::ExtendedColorType::L8,
                image::ImageFormat::Png,
            )
            .map_err(png_write_error)?;
        }
    }
    Ok(())
}

/// Writes an RGB image. Only PNG can hold 3 channels here.
pub fn save_rgb_image(img: &RgbImage, path: &Path, format: ImageFormat) -> Result<()> {
    match format {
        ImageFormat::Png => {
            let flat: Vec<u8> = img.samples().iter().flatten().copied().collect();
            image::save_buffer_with_format(
                path,
                &flat,
                dim_u32(img.width())?,
                dim_u32(img.height())?,
                image::ExtendedColorType::Rgb8,
                image::ImageFormat::Png,
            )
            .map_err(png_write_error)
        }
        ImageFormat::PgmAscii | ImageFormat::PgmBinary => Err(Error::DomainMismatch(
            "PGM is single-channel; write RGB images as PNG".into(),
        )),
    }
}

fn dim_u32(d: usize) -> Result<u32> {
    u32::try_from(d).map_err(|_| Error::InvalidGeometry(format!("dimension {d} exceeds u32")))
}

fn png_write_error(e: image::ImageError) -> Error {
    match e {
        image::ImageError::IoError(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(other.to_string())),
    }
}

fn parse_png(bytes: &[u8]) -> Result<LoadedImage> {
    let decoded = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)
        .map_err(|e| Error::MalformedFile(format!("PNG decode failed: {e}")))?;
    match decoded {
        image::DynamicImage::ImageLuma8(buf) => {
            let (w, h) = (buf.width() as usize, buf.height() as usize);
            Ok(LoadedImage::Gray(Image::new_byte(w, h, buf.into_raw())?))
        }
        image::DynamicImage::ImageRgb8(buf) => {
            let (w, h) = (buf.width() as usize, buf.height() as usize);
            let samples = buf.into_raw().chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
            Ok(LoadedImage::Rgb(RgbImage::new(w, h, samples)?))
        }
        image::DynamicImage::ImageLumaA8(_) | image::DynamicImage::ImageRgba8(_) => Err(
            Error::UnsupportedDepth("PNG alpha channels are not supported".into()),
        ),
        _ => Err(Error::UnsupportedDepth(
            "only 8-bit grayscale or RGB PNG is supported".into(),
        )),
    }
}

/// PGM header/token reader: whitespace-separated fields with `#` comments.
struct PgmCursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> PgmCursor<'a> {
    fn skip_separators(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' | 0x0b | 0x0c => self.pos += 1,
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => return,
            }
        }
    }

    fn next_token(&mut self) -> Result<&'a str> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.data.len() && !self.data[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedFile("truncated PGM header or payload".into()));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .map_err(|_| Error::MalformedFile("non-ASCII bytes in PGM text field".into()))
    }

    fn next_number(&mut self, what: &str) -> Result<usize> {
        let tok = self.next_token()?;
        tok.parse()
            .map_err(|_| Error::MalformedFile(format!("bad {what}: {tok:?}")))
    }
}

fn parse_pgm(bytes: &[u8]) -> Result<Image> {
    let magic = &bytes[..2];
    let mut cur = PgmCursor { data: bytes, pos: 2 };
    let width = cur.next_number("width")?;
    let height = cur.next_number("height")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedFile(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }
    let maxval = cur.next_number("maxval")?;
    if maxval == 0 {
        return Err(Error::MalformedFile("maxval must be positive".into()));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedDepth(format!(
            "PGM maxval {maxval} needs more than 8 bits"
        )));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::InvalidGeometry(format!("{width}x{height} overflows")))?;
    let samples = if magic == b"P2" {
        let mut samples = Vec::with_capacity(count);
        for _ in 0..count {
            let v = cur.next_number("sample")?;
            if v > maxval {
                return Err(Error::MalformedFile(format!(
                    "sample {v} exceeds maxval {maxval}"
                )));
            }
            samples.push(v as u8);
        }
        samples
    } else {
        // Exactly one whitespace byte separates the header from raw samples.
        if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() {
            return Err(Error::MalformedFile("missing separator after maxval".into()));
        }
        let start = cur.pos + 1;
        let payload = bytes
            .get(start..start + count)
            .ok_or_else(|| Error::MalformedFile("truncated P5 payload".into()))?;
        if let Some(&v) = payload.iter().find(|&&v| usize::from(v) > maxval) {
            return Err(Error::MalformedFile(format!(
                "sample {v} exceeds maxval {maxval}"
            )));
        }
        payload.to_vec()
    };
    Image::new_byte(width, height, samples)
}

fn encode_p2(width: usize, height: usize, samples: &[u8]) -> Vec<u8> {
    let mut out = format!("P2\n{width} {height}\n255\n");
    // Plain PGM asks writers to keep lines at 70 characters or fewer.
    let mut line_len = 0;
    for (i, &s) in samples.iter().enumerate() {
        let tok = s.to_string();
        if line_len == 0 {
            out.push_str(&tok);
            line_len = tok.len();
        } else if line_len + 1 + tok.len() > 70 {
            out.push('\n');
            out.push_str(&tok);
            line_len = tok.len();
        } else {
            out.push(' ');
            out.push_str(&tok);
            line_len += 1 + tok.len();
        }
        if i + 1 == samples.len() {
            out.push('\n');
        }
    }
    out.into_bytes()
}

fn encode_p5(width: usize, height: usize, samples: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(samples);
    out
}
