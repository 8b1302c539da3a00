//! Binary PPM (P6, 8-bit) images and pixel feature vectors.

use std::path::Path;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::labels::ClusterLabels;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpmImage {
    pub width: usize,
    pub height: usize,
    /// Row-major RGB triples.
    pub rgb: Vec<u8>,
}

impl PpmImage {
    /// One `(x, y, R, G, B)` point per pixel in row-major order, unscaled.
    pub fn to_dataset(&self) -> Result<Dataset> {
        let mut coords = Vec::with_capacity(self.width * self.height * 5);
        for y in 0..self.height {
            for x in 0..self.width {
                let p = 3 * (y * self.width + x);
                coords.extend_from_slice(&[
                    x as f64,
                    y as f64,
                    f64::from(self.rgb[p]),
                    f64::from(self.rgb[p + 1]),
                    f64::from(self.rgb[p + 2]),
                ]);
            }
        }
        Dataset::from_flat(coords, 5)
    }
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space(&mut self) {
        loop {
            match self.bytes.get(self.pos) {
                Some(b) if b.is_ascii_whitespace() => self.pos += 1,
                Some(b'#') => {
                    while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                        self.pos += 1;
                    }
                }
                _ => return,
            }
        }
    }

    fn number(&mut self, what: &str) -> std::result::Result<usize, String> {
        self.skip_space();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("missing or invalid {what} in header"))
    }
}

fn parse_ppm(bytes: &[u8]) -> std::result::Result<PpmImage, String> {
    if bytes.len() < 2 || &bytes[..2] != b"P6" {
        return Err("not a binary PPM (expected magic `P6`)".into());
    }
    let mut header = Header { bytes, pos: 2 };
    let width = header.number("width")?;
    let height = header.number("height")?;
    let maxval = header.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(format!("maxval {maxval} unsupported; only 8-bit channels are accepted"));
    }
    if width == 0 || height == 0 {
        return Err("image has no pixels".into());
    }
    match bytes.get(header.pos) {
        Some(b) if b.is_ascii_whitespace() => header.pos += 1,
        _ => return Err("missing whitespace after header".into()),
    }
    let expected = width * height * 3;
    let payload = &bytes[header.pos..];
    if payload.len() < expected {
        return Err(format!("truncated payload: {} bytes, expected {expected}", payload.len()));
    }
    Ok(PpmImage {
        width,
        height,
        rgb: payload[..expected].to_vec(),
    })
}

pub fn read_ppm(path: impl AsRef<Path>) -> Result<PpmImage> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_ppm(&bytes).map_err(|reason| Error::parse(path, reason))
}

/// Reads a P6 image and returns one 5-D point per pixel along with the image itself.
pub fn load_image_ppm(path: impl AsRef<Path>) -> Result<(Dataset, PpmImage)> {
    let image = read_ppm(path)?;
    Ok((image.to_dataset()?, image))
}

pub fn write_ppm(path: impl AsRef<Path>, image: &PpmImage) -> Result<()> {
    let path = path.as_ref();
    if image.rgb.len() != image.width * image.height * 3 {
        return Err(Error::LengthMismatch {
            left: image.rgb.len(),
            right: image.width * image.height * 3,
        });
    }
    let mut out = format!("P6\n{} {}\n255\n", image.width, image.height).into_bytes();
    out.extend_from_slice(&image.rgb);
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

const PALETTE: [[u8; 3]; 16] = [
    [230, 25, 75],
    [60, 180, 75],
    [255, 225, 25],
    [0, 130, 200],
    [245, 130, 48],
    [145, 30, 180],
    [70, 240, 240],
    [240, 50, 230],
    [210, 245, 60],
    [250, 190, 212],
    [0, 128, 128],
    [220, 190, 255],
    [170, 110, 40],
    [255, 250, 200],
    [128, 0, 0],
    [170, 255, 195],
];

/// Colour for a cluster id; NOISE (any negative id) is black.
pub fn palette_color(id: i64) -> [u8; 3] {
    if id < 0 {
        return [0, 0, 0];
    }
    if let Some(c) = PALETTE.get(id as usize) {
        return *c;
    }
    // splitmix64 finalizer; keep every channel away from black.
    let mut z = (id as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    [(z as u8) | 0x40, (z >> 8) as u8 | 0x40, (z >> 16) as u8 | 0x40]
}

/// Renders a segmentation: each cluster gets its palette colour, NOISE is black.
pub fn labels_to_image(labels: &ClusterLabels, width: usize, height: usize, path: impl AsRef<Path>) -> Result<()> {
    if labels.len() != width * height {
        return Err(Error::LengthMismatch {
            left: labels.len(),
            right: width * height,
        });
    }
    let rgb = labels.as_slice().iter().flat_map(|&l| palette_color(l)).collect();
    write_ppm(path, &PpmImage { width, height, rgb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::NOISE;

    fn temp_image(bytes: &[u8]) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(f.path(), bytes).unwrap();
        f
    }

    #[test]
    fn two_by_two() {
        let mut bytes = b"P6\n# comment\n2 2\n255\n".to_vec();
        bytes.extend_from_slice(&[255, 0, 0, 0, 255, 0, 0, 0, 255, 9, 9, 9]);
        let f = temp_image(&bytes);
        let (d, img) = load_image_ppm(f.path()).unwrap();
        assert_eq!((d.len(), d.dim()), (4, 5));
        assert_eq!((img.width, img.height), (2, 2));
        assert_eq!(d.point(1), &[1.0, 0.0, 0.0, 255.0, 0.0]);
        assert_eq!(d.point(2), &[0.0, 1.0, 0.0, 0.0, 255.0]);
    }

    #[test]
    fn black_image_differs_only_in_position() {
        let img = PpmImage {
            width: 3,
            height: 2,
            rgb: vec![0; 18],
        };
        let d = img.to_dataset().unwrap();
        assert!(d.points().all(|p| p[2..] == [0.0, 0.0, 0.0]));
        assert_eq!(d.point(5)[..2], [2.0, 1.0]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(read_ppm(temp_image(b"P3\n1 1\n255\n0 0 0").path()).is_err());
        let err = read_ppm(temp_image(b"P6\n2 2\n255\n\x00\x00\x00").path()).unwrap_err().to_string();
        assert!(err.contains("truncated"), "{err}");
        assert!(read_ppm(temp_image(b"P6\n1 1\n65535\n\x00\x00\x00\x00\x00\x00").path()).is_err());
    }

    #[test]
    fn label_rendering() {
        let f = tempfile::NamedTempFile::new().unwrap();
        labels_to_image(&ClusterLabels::new(vec![0; 6]).unwrap(), 3, 2, f.path()).unwrap();
        let img = read_ppm(f.path()).unwrap();
        assert_eq!(img.rgb.len(), 18);
        assert!(img.rgb.chunks(3).all(|c| c == palette_color(0)));

        labels_to_image(&ClusterLabels::all_noise(4), 2, 2, f.path()).unwrap();
        assert!(read_ppm(f.path()).unwrap().rgb.iter().all(|&b| b == 0));

        assert!(labels_to_image(&ClusterLabels::all_noise(5), 2, 2, f.path()).is_err());
    }

    #[test]
    fn palette_never_black_for_clusters() {
        assert_eq!(palette_color(NOISE), [0, 0, 0]);
        for id in 0..500 {
            assert_ne!(palette_color(id), [0, 0, 0]);
        }
    }
}
