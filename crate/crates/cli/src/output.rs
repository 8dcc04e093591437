//! Plain-text table output with `#` header lines.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::CliResult;

/// 17 significant digits, enough for a bit-exact round trip.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "NaN".to_string()
    }
}

/// Header lines shared by every subcommand.
pub fn preamble(kind: &str, echo: &[(String, String)]) -> Vec<String> {
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut lines = vec![
        format!("bosescat {kind}"),
        format!("version = {}", env!("CARGO_PKG_VERSION")),
        format!("generated_unix = {now}"),
    ];
    lines.extend(echo.iter().map(|(k, v)| format!("scenario.{k} = {v}")));
    lines
}

/// A table: comment lines, a column header and rows of fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(comments: Vec<String>, columns: &[&str]) -> Self {
        Table {
            comments,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn write_to<W: Write>(&self, w: W) -> CliResult<()> {
        let mut w = std::io::BufWriter::new(w);
        for c in &self.comments {
            writeln!(w, "# {c}")?;
        }
        let mut out = csv::WriterBuilder::new().from_writer(&mut w);
        out.write_record(&self.columns)?;
        for r in &self.rows {
            out.write_record(r)?;
        }
        out.flush()?;
        drop(out);
        w.flush()?;
        Ok(())
    }
}

/// Reader that skips `#` lines and expects a header row.
pub fn reader(path: &std::path::Path) -> CliResult<csv::Reader<std::fs::File>> {
    let file = std::fs::File::open(path)?;
    Ok(csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(file))
}

pub fn column_index(headers: &csv::StringRecord, name: &str, path: &std::path::Path) -> CliResult<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| crate::error::CliError::Config(format!("{}: missing column `{name}`", path.display())))
}
