//! 8-bit grayscale PNG support via the `png` crate.

use super::Grayscale8Image;
use crate::error::{Error, Result};

pub(super) const SIGNATURE: &[u8] = &[0x89, b'P', b'N', b'G', 0x0d, 0x0a, 0x1a, 0x0a];

pub(super) fn decode_png(bytes: &[u8]) -> Result<Grayscale8Image> {
    let decoder = png::Decoder::new(std::io::Cursor::new(bytes));
    let mut reader = decoder.read_info().map_err(|e| Error::Png(e.to_string()))?;
    let info = reader.info();
    if info.color_type != png::ColorType::Grayscale || info.bit_depth != png::BitDepth::Eight {
        return Err(Error::Png(format!(
            "only 8-bit grayscale is supported, got {:?} at {:?}",
            info.color_type, info.bit_depth
        )));
    }
    let (width, height) = (info.width as usize, info.height as usize);
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::Png("image too large".into()))?;
    let mut buf = vec![0; size];
    let frame = reader.next_frame(&mut buf).map_err(|e| Error::Png(e.to_string()))?;
    let mut pixels = Vec::with_capacity(width * height);
    for row in buf[..frame.buffer_size()].chunks(frame.line_size) {
        pixels.extend_from_slice(&row[..width]);
    }
    Grayscale8Image::new(width, height, pixels)
}

pub(super) fn encode_png(image: &Grayscale8Image) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, image.width() as u32, image.height() as u32);
        encoder.set_color(png::ColorType::Grayscale);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header().map_err(|e| Error::Png(e.to_string()))?;
        writer
            .write_image_data(image.pixels())
            .map_err(|e| Error::Png(e.to_string()))?;
    }
    Ok(out)
}
