use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::OutputFormat;
use crate::CliError;

/// A row that can be written as CSV cells or as one JSON object.
pub trait Row: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

/// 17 significant digits: exact round trip through text.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

pub fn write_rows<R: Row>(rows: &[R], format: OutputFormat, out: Option<&Path>) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let io_err = |e: &dyn std::fmt::Display| CliError::Io(e.to_string());
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut sink);
            w.write_record(R::header()).map_err(|e| io_err(&e))?;
            for r in rows {
                w.write_record(r.cells()).map_err(|e| io_err(&e))?;
            }
            w.flush().map_err(|e| io_err(&e))?;
        }
        OutputFormat::Jsonl => {
            for r in rows {
                serde_json::to_writer(&mut sink, r).map_err(|e| io_err(&e))?;
                sink.write_all(b"\n").map_err(|e| io_err(&e))?;
            }
        }
    }
    sink.flush().map_err(|e| io_err(&e))
}
