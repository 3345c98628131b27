//! On-disk result cache: one JSON file per command and parameter set, each
//! stamped with [`CACHE_VERSION`]. Entries with another stamp or another key
//! are recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+1");

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    version: String,
    key: String,
    value: T,
}

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn key(command: &str, parts: &[String]) -> String {
        let mut key = command.to_string();
        for p in parts {
            key.push(' ');
            key.push_str(p);
        }
        key
    }

    /// File name for a key: letters, digits and `-` kept, everything else
    /// becomes `_`.
    pub fn file_for(&self, key: &str) -> Option<PathBuf> {
        let name: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
            .collect();
        self.dir.as_ref().map(|d| d.join(format!("{name}.json")))
    }

    pub fn get_or_compute<T, F>(&self, key: &str, compute: F) -> Result<T, CliError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, CliError>,
    {
        let Some(file) = self.file_for(key) else {
            return compute();
        };
        if let Some(hit) = read_entry(&file, key) {
            return Ok(hit);
        }
        let value = compute()?;
        write_entry(&file, key, &value)?;
        Ok(value)
    }
}

fn read_entry<T: DeserializeOwned>(file: &Path, key: &str) -> Option<T> {
    let text = fs::read_to_string(file).ok()?;
    let entry: Entry<serde_json::Value> = serde_json::from_str(&text).ok()?;
    if entry.version != CACHE_VERSION || entry.key != key {
        return None;
    }
    serde_json::from_value(entry.value).ok()
}

fn write_entry<T: Serialize>(file: &Path, key: &str, value: &T) -> Result<(), CliError> {
    let dir = file.parent().expect("cache files live in a directory");
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let entry = Entry {
        version: CACHE_VERSION.to_string(),
        key: key.to_string(),
        value,
    };
    let text = serde_json::to_string(&entry).expect("cache entries serialize");
    let tmp = file.with_extension("json.tmp");
    fs::write(&tmp, text).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, file).map_err(|e| CliError::io(file, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_names_are_sanitized() {
        let cache = Cache::new(Some(PathBuf::from("/c")));
        let f = cache.file_for("series Y_GEQ(2) 64").unwrap();
        assert_eq!(f, PathBuf::from("/c/series_Y_GEQ_2__64.json"));
        assert!(Cache::default().file_for("x").is_none());
    }
}
