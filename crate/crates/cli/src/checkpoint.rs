//! Line-delimited scan checkpoints.
//!
//! The first line is a header `{"lo":…,"hi":…,"window":…}`; every later line
//! records one completed window `{"window_start":…,"principal_count":…}`.
//! Big values are decimal strings. Records may arrive in any order.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use collatz_forms::Nat;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub lo: String,
    pub hi: String,
    pub window: u64,
}

impl Header {
    pub fn new(lo: &Nat, hi: &Nat, window: u64) -> Self {
        Header {
            lo: lo.to_string(),
            hi: hi.to_string(),
            window,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowRecord {
    pub window_start: String,
    pub principal_count: u64,
}

fn bad(path: &Path, line: usize, why: impl std::fmt::Display) -> CliError {
    CliError::Checkpoint(format!("{}:{}: {}", path.display(), line, why))
}

/// Completed windows recorded in `path`, keyed by window start.
///
/// A missing file means nothing is done yet. A final line without a newline is
/// a torn write and is ignored.
pub fn load(path: &Path, expected: &Header) -> Result<BTreeMap<Nat, u64>, CliError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(CliError::Io(format!("{}: {e}", path.display()))),
    };
    let mut reader = BufReader::new(file);
    let mut done = BTreeMap::new();
    let mut line = String::new();
    let mut number = 0usize;
    loop {
        line.clear();
        let read = reader
            .read_line(&mut line)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        if read == 0 {
            break;
        }
        number += 1;
        if !line.ends_with('\n') {
            break;
        }
        let text = line.trim();
        if number == 1 {
            let header: Header = serde_json::from_str(text).map_err(|e| bad(path, number, e))?;
            if header != *expected {
                return Err(CliError::Checkpoint(format!(
                    "{} was written for lo={} hi={} window={}, not lo={} hi={} window={}",
                    path.display(),
                    header.lo,
                    header.hi,
                    header.window,
                    expected.lo,
                    expected.hi,
                    expected.window
                )));
            }
            continue;
        }
        if text.is_empty() {
            continue;
        }
        let record: WindowRecord = serde_json::from_str(text).map_err(|e| bad(path, number, e))?;
        let start: Nat = record
            .window_start
            .parse()
            .map_err(|e| bad(path, number, format!("window_start: {e}")))?;
        match done.insert(start, record.principal_count) {
            Some(previous) if previous != record.principal_count => {
                return Err(bad(
                    path,
                    number,
                    format!(
                        "conflicting counts {previous} and {} for one window",
                        record.principal_count
                    ),
                ))
            }
            _ => {}
        }
    }
    if number == 0 {
        return Ok(BTreeMap::new());
    }
    Ok(done)
}

/// Single appender shared by scan workers.
pub struct Writer {
    path: PathBuf,
    file: Mutex<File>,
}

impl Writer {
    /// Starts a fresh checkpoint, replacing any existing file.
    pub fn create(path: &Path, header: &Header) -> Result<Self, CliError> {
        let mut file =
            File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let line = serde_json::to_string(header).expect("header serializes");
        writeln!(file, "{line}").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(Writer {
            path: path.to_path_buf(),
            file: Mutex::new(file),
        })
    }

    /// Continues an existing checkpoint, or starts one if the file is missing or empty.
    pub fn append_to(path: &Path, header: &Header) -> Result<Self, CliError> {
        let empty = std::fs::metadata(path)
            .map(|m| m.len() == 0)
            .unwrap_or(true);
        if empty {
            return Self::create(path, header);
        }
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
        // Drop a torn final line so the next record starts cleanly.
        let contents = std::fs::read(path).map_err(io)?;
        let keep = contents
            .iter()
            .rposition(|&b| b == b'\n')
            .map_or(0, |i| i + 1);
        if keep == 0 {
            return Self::create(path, header);
        }
        let file = OpenOptions::new().append(true).open(path).map_err(io)?;
        file.set_len(keep as u64).map_err(io)?;
        Ok(Writer {
            path: path.to_path_buf(),
            file: Mutex::new(file),
        })
    }

    pub fn record(&self, window_start: &Nat, principal_count: u64) -> Result<(), CliError> {
        let line = serde_json::to_string(&WindowRecord {
            window_start: window_start.to_string(),
            principal_count,
        })
        .expect("record serializes");
        let mut file = self.file.lock().expect("checkpoint lock");
        writeln!(file, "{line}")
            .and_then(|_| file.flush())
            .map_err(|e| CliError::Io(format!("{}: {e}", self.path.display())))
    }
}
