//! Append-only JSON-lines store of height records.
//!
//! Each line is one [`HeightRecord`] tagged with `schemaVersion`. A line that
//! fails to parse at the very end of the file is taken to be an interrupted
//! write: it is dropped and the file is truncated back to the last good line
//! before anything new is appended. A bad line anywhere else is an error.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cyclotome_core::heights::HeightRecord;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Line {
    #[serde(rename = "schemaVersion")]
    schema_version: u32,
    #[serde(flatten)]
    record: HeightRecord,
}

pub struct Cache {
    path: PathBuf,
    records: HashMap<u64, HeightRecord>,
    writer: Option<BufWriter<File>>,
    /// Whether a torn trailing line was removed on load.
    pub repaired: bool,
}

impl Cache {
    pub fn open(path: &Path) -> Result<Self> {
        let mut cache = Cache { path: path.to_path_buf(), records: HashMap::new(), writer: None, repaired: false };
        let text = match fs::read(path) {
            Ok(bytes) => bytes,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e).with_context(|| format!("reading cache {}", path.display())),
        };
        let mut good_len = 0usize;
        let mut offset = 0usize;
        let lines: Vec<&[u8]> = text.split_inclusive(|&b| b == b'\n').collect();
        for (i, raw) in lines.iter().enumerate() {
            offset += raw.len();
            let body = raw.strip_suffix(b"\n").unwrap_or(raw);
            if body.iter().all(u8::is_ascii_whitespace) {
                good_len = offset;
                continue;
            }
            let parsed = serde_json::from_slice::<Line>(body).ok().filter(|l| l.schema_version == SCHEMA_VERSION);
            let complete = raw.ends_with(b"\n");
            match parsed {
                Some(line) if complete => {
                    cache.records.insert(line.record.n, line.record);
                    good_len = offset;
                }
                _ if i + 1 == lines.len() => {
                    cache.repaired = true;
                }
                _ => bail!("cache {} is corrupt at line {}", path.display(), i + 1),
            }
        }
        if cache.repaired {
            let f = OpenOptions::new().write(true).open(path)?;
            f.set_len(good_len as u64)?;
        }
        Ok(cache)
    }

    pub fn get(&self, n: u64) -> Option<&HeightRecord> {
        self.records.get(&n)
    }

    /// Appends one record. Only the thread that owns the cache writes.
    pub fn append(&mut self, record: &HeightRecord) -> Result<()> {
        if self.writer.is_none() {
            let f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)
                .with_context(|| format!("opening cache {}", self.path.display()))?;
            self.writer = Some(BufWriter::new(f));
        }
        let w = self.writer.as_mut().expect("writer just opened");
        let line = Line { schema_version: SCHEMA_VERSION, record: record.clone() };
        serde_json::to_writer(&mut *w, &line)?;
        w.write_all(b"\n")?;
        self.records.insert(record.n, record.clone());
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        if let Some(w) = self.writer.as_mut() {
            w.flush()?;
        }
        Ok(())
    }
}

impl Drop for Cache {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}
