//! Corpus manifest: a CSV with columns `id,path,n_reflective_panels,
//! mic_position`, free extra columns, and `#`-prefixed comment lines.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use crate::error::{Error, Result};

pub const MAX_PANELS: u8 = 55;

/// One manifest row describing a stored impulse response.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RirEntry {
    pub id: String,
    /// Path as written in the manifest; see [`load_manifest_resolved`].
    pub path: String,
    pub n_reflective_panels: u8,
    pub mic_position: u8,
    pub extra: BTreeMap<String, String>,
}

const REQUIRED: [&str; 4] = ["id", "path", "n_reflective_panels", "mic_position"];

/// Loads and validates a manifest, keeping paths exactly as written.
pub fn load_manifest(path: &Path) -> Result<Vec<RirEntry>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(false)
        .from_path(path)?;

    let headers = reader.headers()?.clone();
    for required in REQUIRED {
        if !headers.iter().any(|h| h == required) {
            return Err(Error::ManifestFormat {
                line: 1,
                message: format!("missing required column {required:?}"),
            });
        }
    }
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (id_col, path_col) = (col("id"), col("path"));
    let (panels_col, mic_col) = (col("n_reflective_panels"), col("mic_position"));
    let extra_cols: Vec<(usize, String)> = headers
        .iter()
        .enumerate()
        .filter(|(_, h)| !REQUIRED.contains(h))
        .map(|(i, h)| (i, h.to_string()))
        .collect();

    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| record.get(i).unwrap_or("").to_string();

        let id = field(id_col);
        if id.is_empty() {
            return Err(Error::ManifestFormat {
                line,
                message: "empty id".into(),
            });
        }
        if !seen.insert(id.clone()) {
            return Err(Error::ManifestFormat {
                line,
                message: format!("duplicate id {id:?}"),
            });
        }
        let n_reflective_panels = parse_ranged(&field(panels_col), 0, MAX_PANELS)
            .map_err(|message| Error::ManifestFormat {
                line,
                message: format!("n_reflective_panels: {message}"),
            })?;
        let mic_position =
            parse_ranged(&field(mic_col), 1, 5).map_err(|message| Error::ManifestFormat {
                line,
                message: format!("mic_position: {message}"),
            })?;
        let extra = extra_cols
            .iter()
            .map(|(i, name)| (name.clone(), field(*i)))
            .collect();
        entries.push(RirEntry {
            id,
            path: field(path_col),
            n_reflective_panels,
            mic_position,
            extra,
        });
    }
    Ok(entries)
}

/// Loads a manifest and rewrites relative paths against the manifest's
/// directory, so entries can be opened from any working directory.
pub fn load_manifest_resolved(path: &Path) -> Result<Vec<RirEntry>> {
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut entries = load_manifest(path)?;
    for entry in &mut entries {
        if !Path::new(&entry.path).is_absolute() {
            entry.path = base.join(&entry.path).to_string_lossy().into_owned();
        }
    }
    Ok(entries)
}

/// Writes entries as a manifest CSV. Extra columns are the sorted union of
/// all entries' extra keys.
pub fn save_manifest(path: &Path, entries: &[RirEntry]) -> Result<()> {
    let extra_keys: BTreeSet<&str> = entries
        .iter()
        .flat_map(|e| e.extra.keys().map(String::as_str))
        .collect();
    let mut writer = csv::Writer::from_path(path)?;
    let mut header: Vec<&str> = REQUIRED.to_vec();
    header.extend(extra_keys.iter());
    writer.write_record(&header)?;
    for entry in entries {
        let mut row = vec![
            entry.id.clone(),
            entry.path.clone(),
            entry.n_reflective_panels.to_string(),
            entry.mic_position.to_string(),
        ];
        for key in &extra_keys {
            row.push(entry.extra.get(*key).cloned().unwrap_or_default());
        }
        writer.write_record(&row)?;
    }
    writer.flush().map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(())
}

fn parse_ranged(text: &str, min: u8, max: u8) -> std::result::Result<u8, String> {
    let value: u8 = text
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse {text:?} as an integer"))?;
    if value < min || value > max {
        return Err(format!("value {value} outside {min}..={max}"));
    }
    Ok(value)
}
