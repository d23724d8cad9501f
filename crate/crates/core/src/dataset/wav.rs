//! Minimal WAV reader and writer for mono impulse responses.
//!
//! Reading accepts PCM 16/24/32 and IEEE float 32/64, plus the extensible
//! header wrapping either. Writing emits 32-bit float, which round-trips
//! synthesized material bit-exactly through `f32`.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

const FORMAT_PCM: u16 = 1;
const FORMAT_IEEE_FLOAT: u16 = 3;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

/// Decoded mono audio data.
#[derive(Debug, Clone)]
pub struct WavData {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

/// Reads a mono WAV file. Integer PCM is scaled by full scale into
/// `[-1, 1]`; float data is passed through bit-exactly.
pub fn read_wav_mono(path: &Path) -> Result<WavData> {
    let bytes = fs::read(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_wav_mono(&bytes).map_err(|e| match e {
        Error::UnsupportedFormat(msg) => {
            Error::UnsupportedFormat(format!("{}: {msg}", path.display()))
        }
        other => other,
    })
}

fn truncated(what: &str) -> Error {
    Error::io(
        what.to_string(),
        std::io::Error::new(std::io::ErrorKind::UnexpectedEof, "truncated wav data"),
    )
}

fn parse_wav_mono(bytes: &[u8]) -> Result<WavData> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::UnsupportedFormat("not a RIFF/WAVE file".into()));
    }
    let mut fmt: Option<(u16, u16, u32, u16)> = None; // format, channels, rate, bits
    let mut data: Option<&[u8]> = None;
    let mut pos = 12usize;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        let body_end = body_start
            .checked_add(size)
            .filter(|&e| e <= bytes.len())
            .ok_or_else(|| truncated("chunk body"))?;
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => {
                if body.len() < 16 {
                    return Err(truncated("fmt chunk"));
                }
                let mut format = u16::from_le_bytes(body[0..2].try_into().unwrap());
                let channels = u16::from_le_bytes(body[2..4].try_into().unwrap());
                let rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
                let bits = u16::from_le_bytes(body[14..16].try_into().unwrap());
                if format == FORMAT_EXTENSIBLE {
                    // Actual code lives in the first two bytes of the subformat GUID.
                    if body.len() < 26 {
                        return Err(truncated("extensible fmt chunk"));
                    }
                    format = u16::from_le_bytes(body[24..26].try_into().unwrap());
                }
                fmt = Some((format, channels, rate, bits));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        pos = body_end + (size & 1); // chunks are word-aligned
    }

    let (format, channels, sample_rate, bits) =
        fmt.ok_or_else(|| Error::UnsupportedFormat("missing fmt chunk".into()))?;
    let data = data.ok_or_else(|| Error::UnsupportedFormat("missing data chunk".into()))?;
    if channels != 1 {
        return Err(Error::UnsupportedFormat(format!(
            "{channels} channels; only mono is supported"
        )));
    }
    if sample_rate == 0 {
        return Err(Error::UnsupportedFormat("zero sample rate".into()));
    }

    let samples = match (format, bits) {
        (FORMAT_PCM, 16) => decode(data, 2, |c| {
            i16::from_le_bytes(c.try_into().unwrap()) as f64 / 32768.0
        })?,
        (FORMAT_PCM, 24) => decode(data, 3, |c| {
            let v = ((c[2] as i32) << 16 | (c[1] as i32) << 8 | c[0] as i32) << 8 >> 8;
            v as f64 / 8_388_608.0
        })?,
        (FORMAT_PCM, 32) => decode(data, 4, |c| {
            i32::from_le_bytes(c.try_into().unwrap()) as f64 / 2_147_483_648.0
        })?,
        (FORMAT_IEEE_FLOAT, 32) => decode(data, 4, |c| {
            f32::from_le_bytes(c.try_into().unwrap()) as f64
        })?,
        (FORMAT_IEEE_FLOAT, 64) => decode(data, 8, |c| {
            f64::from_le_bytes(c.try_into().unwrap())
        })?,
        (f, b) => {
            return Err(Error::UnsupportedFormat(format!(
                "format code {f} with {b} bits per sample"
            )))
        }
    };
    Ok(WavData {
        samples,
        sample_rate,
    })
}

fn decode(data: &[u8], width: usize, f: impl Fn(&[u8]) -> f64) -> Result<Vec<f64>> {
    if data.len() % width != 0 {
        return Err(truncated("data chunk"));
    }
    Ok(data.chunks_exact(width).map(f).collect())
}

/// Writes mono samples as a 32-bit float WAV.
pub fn write_wav_f32(path: &Path, samples: &[f64], sample_rate: u32) -> Result<()> {
    let data_size = samples.len() * 4;
    // fmt (8+16) + fact (8+4) + data header (8)
    let riff_size = 4 + 24 + 12 + 8 + data_size;
    let mut out = Vec::with_capacity(riff_size + 8);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(riff_size as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&FORMAT_IEEE_FLOAT.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&sample_rate.to_le_bytes());
    out.extend_from_slice(&(sample_rate * 4).to_le_bytes());
    out.extend_from_slice(&4u16.to_le_bytes());
    out.extend_from_slice(&32u16.to_le_bytes());
    out.extend_from_slice(b"fact");
    out.extend_from_slice(&4u32.to_le_bytes());
    out.extend_from_slice(&(samples.len() as u32).to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_size as u32).to_le_bytes());
    for &s in samples {
        out.extend_from_slice(&(s as f32).to_le_bytes());
    }
    let mut file =
        fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    file.write_all(&out)
        .map_err(|e| Error::io(path.display().to_string(), e))
}
