//! Binary file formats: pattern sequences, grayscale frame stacks, and
//! network checkpoints.
//!
//! All multi-byte integers are little-endian and all round-trips are
//! byte-deterministic. Decoders validate before allocating and never
//! construct an invariant-violating domain object; arbitrary input bytes
//! produce errors, not panics.
//!
//! ```text
//! sequence file:  "SEQA1" | N: u32 | T: u32 | periodic: u8 | N·T payload bytes
//!                 payload row t = pattern t, one byte per entry (0x00 ↦ −1, 0x01 ↦ +1)
//! checkpoint:     "SATN1" | N: u32 | M: u32 | U (M×N) | V (N×M) | P (M×N)
//!                 | bias_hidden (M) | bias_visible (N) | crc32: u32
//!                 matrices and biases as f64 little-endian, row-major;
//!                 the checksum covers every preceding byte
//! frame stack:    one or more concatenated binary graymaps, each
//!                 "P5" | whitespace/comments | width height maxval | raw bytes
//! ```

use crate::core_dynamics::{BipolarVector, HiddenNetwork, Matrix, PatternSequence};
use crate::error::{Error, Result};
use std::io::Write;
use std::path::Path;

const SEQUENCE_MAGIC: &[u8; 5] = b"SEQA1";
const CHECKPOINT_MAGIC: &[u8; 5] = b"SATN1";

// ------------------------------------------------------------------
// Checksum
// ------------------------------------------------------------------

/// CRC-32 (IEEE 802.3 polynomial, reflected, init and xor-out 0xFFFFFFFF).
pub fn crc32_ieee(bytes: &[u8]) -> u32 {
    let mut crc: u32 = 0xFFFF_FFFF;
    for &b in bytes {
        crc ^= u32::from(b);
        for _ in 0..8 {
            let mask = (crc & 1).wrapping_neg();
            crc = (crc >> 1) ^ (0xEDB8_8320 & mask);
        }
    }
    !crc
}

// ------------------------------------------------------------------
// Byte-cursor helpers
// ------------------------------------------------------------------

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Cursor { bytes, pos: 0 }
    }

    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        let available = self.bytes.len() - self.pos;
        if available < len {
            return Err(Error::Format(format!(
                "truncated {what}: expected {len} bytes at offset {}, got {available}",
                self.pos
            )));
        }
        let slice = &self.bytes[self.pos..self.pos + len];
        self.pos += len;
        Ok(slice)
    }

    fn u32_le(&mut self, what: &str) -> Result<u32> {
        let b = self.take(4, what)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }
}

fn expect_magic(cursor: &mut Cursor<'_>, magic: &[u8; 5], kind: &str) -> Result<()> {
    let found = cursor.take(magic.len(), "magic")?;
    if found != magic {
        return Err(Error::Format(format!(
            "not a {kind} file: expected magic {:?}, found {:?}",
            String::from_utf8_lossy(magic),
            String::from_utf8_lossy(found)
        )));
    }
    Ok(())
}

// ------------------------------------------------------------------
// Sequence files
// ------------------------------------------------------------------

/// Serializes a sequence to the `SEQA1` byte format.
pub fn encode_sequence(seq: &PatternSequence) -> Vec<u8> {
    let n = seq.dim();
    let t = seq.len();
    let mut out = Vec::with_capacity(14 + n * t);
    out.extend_from_slice(SEQUENCE_MAGIC);
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend_from_slice(&(t as u32).to_le_bytes());
    out.push(u8::from(seq.periodic()));
    for pattern in seq.patterns() {
        out.extend(pattern.entries().iter().map(|&e| u8::from(e == 1)));
    }
    out
}

/// Parses the `SEQA1` byte format into a validated sequence.
pub fn decode_sequence(bytes: &[u8]) -> Result<PatternSequence> {
    let mut cursor = Cursor::new(bytes);
    expect_magic(&mut cursor, SEQUENCE_MAGIC, "sequence")?;
    let n = cursor.u32_le("N")? as usize;
    let t = cursor.u32_le("T")? as usize;
    let periodic = match cursor.take(1, "periodic flag")?[0] {
        0 => false,
        1 => true,
        other => {
            return Err(Error::Format(format!(
                "periodic flag must be 0 or 1, found {other:#04x}"
            )))
        }
    };
    let expected = (n as u64) * (t as u64);
    if cursor.remaining() as u64 != expected {
        return Err(Error::Format(format!(
            "payload length mismatch: expected {expected} bytes for {t} patterns of dimension {n}, got {}",
            cursor.remaining()
        )));
    }
    let header_len = cursor.pos;
    let payload = cursor.take(expected as usize, "payload")?;
    let mut patterns = Vec::with_capacity(t);
    for row in 0..t {
        let mut entries = Vec::with_capacity(n);
        for col in 0..n {
            let idx = row * n + col;
            entries.push(match payload[idx] {
                0x00 => -1,
                0x01 => 1,
                other => {
                    return Err(Error::Format(format!(
                        "illegal payload byte {other:#04x} at file offset {}",
                        header_len + idx
                    )))
                }
            });
        }
        patterns.push(BipolarVector::new(entries)?);
    }
    PatternSequence::new(patterns, periodic)
}

/// Writes a sequence file.
pub fn save_sequence(seq: &PatternSequence, path: &Path) -> Result<()> {
    write_atomic(path, &encode_sequence(seq))
}

/// Reads a sequence file.
pub fn load_sequence(path: &Path) -> Result<PatternSequence> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_sequence(&bytes)
}

// ------------------------------------------------------------------
// Checkpoints
// ------------------------------------------------------------------

fn push_f64s(out: &mut Vec<u8>, values: &[f64]) {
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
}

/// Serializes a network to the `SATN1` byte format (checksum included).
pub fn encode_checkpoint(net: &HiddenNetwork) -> Vec<u8> {
    let (n, m) = (net.n(), net.m());
    let floats = 2 * m * n + n * m + m + n;
    let mut out = Vec::with_capacity(13 + 8 * floats + 4);
    out.extend_from_slice(CHECKPOINT_MAGIC);
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend_from_slice(&(m as u32).to_le_bytes());
    push_f64s(&mut out, net.u().data());
    push_f64s(&mut out, net.v().data());
    push_f64s(&mut out, net.p().data());
    push_f64s(&mut out, net.bias_hidden());
    push_f64s(&mut out, net.bias_visible());
    let crc = crc32_ieee(&out);
    out.extend_from_slice(&crc.to_le_bytes());
    out
}

fn read_f64s(cursor: &mut Cursor<'_>, count: usize, what: &str) -> Result<Vec<f64>> {
    let bytes = cursor.take(8 * count, what)?;
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes([c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7]]))
        .collect())
}

/// Parses and validates the `SATN1` byte format.
pub fn decode_checkpoint(bytes: &[u8]) -> Result<HiddenNetwork> {
    if bytes.len() < 17 {
        return Err(Error::Format(format!(
            "checkpoint too short: {} bytes cannot hold header and checksum",
            bytes.len()
        )));
    }
    let (body, trailer) = bytes.split_at(bytes.len() - 4);
    let stored = u32::from_le_bytes([trailer[0], trailer[1], trailer[2], trailer[3]]);
    let computed = crc32_ieee(body);
    if stored != computed {
        return Err(Error::Format(format!(
            "checksum mismatch: stored {stored:#010x}, computed {computed:#010x}"
        )));
    }
    let mut cursor = Cursor::new(body);
    expect_magic(&mut cursor, CHECKPOINT_MAGIC, "checkpoint")?;
    let n = cursor.u32_le("N")? as usize;
    let m = cursor.u32_le("M")? as usize;
    let expected = 8u64 * (3 * (m as u64) * (n as u64) + m as u64 + n as u64);
    if cursor.remaining() as u64 != expected {
        return Err(Error::Format(format!(
            "checkpoint body length mismatch: expected {expected} bytes for N={n}, M={m}, got {}",
            cursor.remaining()
        )));
    }
    let u = Matrix::from_vec(m, n, read_f64s(&mut cursor, m * n, "U")?)?;
    let v = Matrix::from_vec(n, m, read_f64s(&mut cursor, n * m, "V")?)?;
    let p = Matrix::from_vec(m, n, read_f64s(&mut cursor, m * n, "P")?)?;
    let bias_hidden = read_f64s(&mut cursor, m, "bias_hidden")?;
    let bias_visible = read_f64s(&mut cursor, n, "bias_visible")?;
    HiddenNetwork::from_parts(u, v, p, bias_hidden, bias_visible)
}

/// Writes a checkpoint file.
pub fn save_checkpoint(net: &HiddenNetwork, path: &Path) -> Result<()> {
    write_atomic(path, &encode_checkpoint(net))
}

/// Reads and validates a checkpoint file.
pub fn load_checkpoint(path: &Path) -> Result<HiddenNetwork> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_checkpoint(&bytes)
}

// ------------------------------------------------------------------
// Grayscale frames
// ------------------------------------------------------------------

/// One grayscale image, row-major, one byte per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl Frame {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidValue(format!(
                "frame dimensions must be >= 1, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::shape(
                "Frame::new",
                format!("{} pixels ({width}x{height})", width * height),
                format!("{} pixels", pixels.len()),
            ));
        }
        Ok(Frame {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }
}

/// Serializes frames as concatenated binary graymaps.
pub fn encode_frames(frames: &[Frame]) -> Vec<u8> {
    let mut out = Vec::new();
    for f in frames {
        out.extend_from_slice(format!("P5\n{} {}\n255\n", f.width, f.height).as_bytes());
        out.extend_from_slice(&f.pixels);
    }
    out
}

/// Skips graymap whitespace and `#` comments; returns true if any
/// whitespace was consumed.
fn skip_pgm_space(cursor: &mut Cursor<'_>) -> bool {
    let start = cursor.pos;
    while cursor.pos < cursor.bytes.len() {
        match cursor.bytes[cursor.pos] {
            b' ' | b'\t' | b'\r' | b'\n' => cursor.pos += 1,
            b'#' => {
                while cursor.pos < cursor.bytes.len() && cursor.bytes[cursor.pos] != b'\n' {
                    cursor.pos += 1;
                }
            }
            _ => break,
        }
    }
    cursor.pos > start
}

fn parse_pgm_int(cursor: &mut Cursor<'_>, what: &str) -> Result<u64> {
    let start = cursor.pos;
    let mut value: u64 = 0;
    while cursor.pos < cursor.bytes.len() && cursor.bytes[cursor.pos].is_ascii_digit() {
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(u64::from(cursor.bytes[cursor.pos] - b'0')))
            .ok_or_else(|| Error::Format(format!("{what} overflows at offset {start}")))?;
        cursor.pos += 1;
    }
    if cursor.pos == start {
        return Err(Error::Format(format!(
            "expected {what} digits at offset {start}"
        )));
    }
    Ok(value)
}

/// Parses one or more concatenated binary graymaps.
pub fn decode_frames(bytes: &[u8]) -> Result<Vec<Frame>> {
    let mut cursor = Cursor::new(bytes);
    let mut frames = Vec::new();
    loop {
        skip_pgm_space(&mut cursor);
        if cursor.remaining() == 0 {
            break;
        }
        let sig = cursor.take(2, "graymap signature")?;
        if sig != b"P5" {
            return Err(Error::Format(format!(
                "expected P5 graymap signature at offset {}, found {:?}",
                cursor.pos - 2,
                String::from_utf8_lossy(sig)
            )));
        }
        skip_pgm_space(&mut cursor);
        let width = parse_pgm_int(&mut cursor, "width")?;
        skip_pgm_space(&mut cursor);
        let height = parse_pgm_int(&mut cursor, "height")?;
        skip_pgm_space(&mut cursor);
        let maxval = parse_pgm_int(&mut cursor, "maxval")?;
        if maxval == 0 || maxval > 255 {
            return Err(Error::Format(format!(
                "unsupported graymap maxval {maxval}; need 1..=255 (one byte per pixel)"
            )));
        }
        // Exactly one whitespace byte separates the header from the raster.
        let sep = cursor.take(1, "header separator")?[0];
        if !matches!(sep, b' ' | b'\t' | b'\r' | b'\n') {
            return Err(Error::Format(format!(
                "expected single whitespace before raster, found {sep:#04x}"
            )));
        }
        let pixel_count = width
            .checked_mul(height)
            .ok_or_else(|| Error::Format("frame size overflows".into()))?;
        if (cursor.remaining() as u64) < pixel_count {
            return Err(Error::Format(format!(
                "truncated raster: expected {pixel_count} bytes, got {}",
                cursor.remaining()
            )));
        }
        let pixels = cursor.take(pixel_count as usize, "raster")?.to_vec();
        frames.push(Frame::new(width as usize, height as usize, pixels)?);
    }
    if frames.is_empty() {
        return Err(Error::Format("no graymap frames in input".into()));
    }
    Ok(frames)
}

/// Writes frames to disk as concatenated binary graymaps.
pub fn save_frames(frames: &[Frame], path: &Path) -> Result<()> {
    write_atomic(path, &encode_frames(frames))
}

/// Reads a frame stack from disk.
pub fn load_frames(path: &Path) -> Result<Vec<Frame>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_frames(&bytes)
}

/// Thresholds frames into a pattern sequence: pixel ≥ `threshold` maps to
/// +1, below to −1, flattened row-major so `N = width · height`. The
/// sequence is marked periodic when the first and last frames binarize to
/// the same pattern.
pub fn binarize_frames(frames: &[Frame], threshold: u8) -> Result<PatternSequence> {
    if frames.is_empty() {
        return Err(Error::InvalidValue("no frames to binarize".into()));
    }
    let (w, h) = (frames[0].width, frames[0].height);
    for (i, f) in frames.iter().enumerate() {
        if f.width != w || f.height != h {
            return Err(Error::shape(
                "binarize_frames",
                format!("all frames {w}x{h}"),
                format!("frame {i} is {}x{}", f.width, f.height),
            ));
        }
    }
    let patterns = frames
        .iter()
        .map(|f| {
            BipolarVector::new(
                f.pixels
                    .iter()
                    .map(|&p| if p >= threshold { 1 } else { -1 })
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let periodic = patterns.len() >= 2 && patterns.first() == patterns.last();
    PatternSequence::new(patterns, periodic)
}

// ------------------------------------------------------------------
// File plumbing
// ------------------------------------------------------------------

/// Writes via a temporary sibling then renames, so readers never observe a
/// half-written artifact.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or_else(|| Path::new(".")))
        .map_err(|e| Error::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

// ------------------------------------------------------------------
// Tests
// ------------------------------------------------------------------
