//! JSON-lines persistence of sweep records.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::Field;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One persisted trial. `(command, d, n, l, h, k, field, seed)` is the key.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub command: String,
    pub d: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub field: String,
    pub seed: u64,
    pub outcome: Map<String, Value>,
    pub wall_ms: u64,
    pub version: String,
    pub timestamp: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecordKey {
    pub command: String,
    pub spec: (u32, u32, Option<u32>, Option<u32>, Option<u32>),
    pub field: String,
    pub seed: u64,
}

impl SweepRecord {
    pub fn new(command: &str, d: u32, n: u32, field: Field, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            d,
            n,
            l: None,
            h: None,
            k: None,
            field: field_name(field),
            seed,
            outcome: Map::new(),
            wall_ms: 0,
            version: VERSION.to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|t| t.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn key(&self) -> RecordKey {
        RecordKey {
            command: self.command.clone(),
            spec: (self.d, self.n, self.l, self.h, self.k),
            field: self.field.clone(),
            seed: self.seed,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.outcome.insert(key.to_string(), value.into());
        self
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

pub fn field_name(field: Field) -> String {
    match field {
        Field::Rational => "rational".into(),
        Field::Prime(p) => p.to_string(),
    }
}

/// Records already in `path`; a missing file has none. Unparsable lines are skipped.
pub fn read_records(path: &Path) -> io::Result<Vec<SweepRecord>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if let Ok(r) = SweepRecord::from_line(&line) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Appends the records whose keys are not yet in `path`; returns how many were written.
pub fn append_new(path: &Path, records: &[SweepRecord]) -> io::Result<usize> {
    let mut seen: HashSet<RecordKey> = read_records(path)?.iter().map(|r| r.key()).collect();
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut written = 0;
    for r in records {
        if seen.insert(r.key()) {
            writeln!(file, "{}", r.to_line())?;
            written += 1;
        }
    }
    file.flush()?;
    Ok(written)
}
