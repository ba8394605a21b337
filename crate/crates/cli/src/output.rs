//! Report sinks: JSON, CSV, or a short human-readable layout.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

/// Schema version stamped into every JSON object report.
pub const SCHEMA_VERSION: u32 = 1;

pub fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn write_json<T: Serialize + ?Sized>(w: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

/// CSV with a fixed header row.
pub fn write_csv(w: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(header)?;
    for r in rows {
        wr.write_record(r)?;
    }
    wr.flush()?;
    Ok(())
}

/// Shortest round-trip decimal, so CSV and JSON agree.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Truth table as hex for human-readable output, elided past 32 digits.
pub fn short_hex(f: &gswf_core::BooleanFunction) -> String {
    let hex = f.to_hex();
    if hex.len() <= 32 {
        format!("0x{hex}")
    } else {
        format!("0x{}...({} hex digits)", &hex[..16], hex.len())
    }
}
