//! Line-delimited JSON traces: one [`TraceEvent`] object per line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use dcfactor::TraceEvent;

use crate::CliError;

pub fn write_trace(path: &Path, events: &[TraceEvent]) -> Result<(), CliError> {
    let io_err = |source| CliError::Io { path: path.to_path_buf(), source };
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    for event in events {
        serde_json::to_writer(&mut w, event)?;
        w.write_all(b"\n").map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn read_trace(path: &Path) -> Result<Vec<TraceEvent>, CliError> {
    let io_err = |source| CliError::Io { path: path.to_path_buf(), source };
    let reader = BufReader::new(File::open(path).map_err(io_err)?);
    let mut events = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(io_err)?;
        if !line.trim().is_empty() {
            events.push(serde_json::from_str(&line)?);
        }
    }
    Ok(events)
}
