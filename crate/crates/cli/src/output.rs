//! CSV writing and progress reporting.

use crate::CliError;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvOut {
    writer: csv::Writer<Box<dyn Write>>,
}

impl CsvOut {
    /// Writes to `path`, or to standard output when absent.
    pub fn open(path: Option<&Path>, header: &[&str]) -> Result<Self, CliError> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout()),
        };
        let mut writer = csv::Writer::from_writer(sink);
        writer.write_record(header).map_err(csv_error)?;
        Ok(Self { writer })
    }

    pub fn row(&mut self, fields: &[String]) -> Result<(), CliError> {
        self.writer.write_record(fields).map_err(csv_error)
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.writer.flush()?;
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(io::Error::other(e))
}

/// Counts finished grid points and reports roughly every five percent on stderr.
pub struct Progress {
    label: &'static str,
    total: usize,
    step: usize,
    done: AtomicUsize,
}

impl Progress {
    pub fn new(label: &'static str, total: usize, unit: &str) -> Self {
        eprintln!("{label}: {total} {unit}");
        Self {
            label,
            total,
            step: (total / 20).max(1),
            done: AtomicUsize::new(0),
        }
    }

    pub fn tick(&self) {
        let k = self.done.fetch_add(1, Ordering::Relaxed) + 1;
        if k.is_multiple_of(self.step) || k == self.total {
            eprintln!("{}: {k}/{}", self.label, self.total);
        }
    }

    /// Reports every item with a message.
    pub fn note(&self, msg: &str) {
        let k = self.done.fetch_add(1, Ordering::Relaxed) + 1;
        eprintln!("{}: [{k}/{}] {msg}", self.label, self.total);
    }
}
