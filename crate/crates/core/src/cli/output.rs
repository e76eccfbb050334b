use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{CliError, Format, OutputArgs, RunManifest, EXIT_FAILURE};

#[derive(Debug, Clone)]
pub(crate) enum Cell {
    Int(i128),
    Num(f64),
    Text(String),
    Bool(bool),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Text(String::new()), Into::into)
    }
}

fn render(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Num(v) => format!("{v:.16e}"),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(render).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError { code: EXIT_FAILURE, message: format!("cannot write {}: {e}", path.display()) })
}

fn json_text<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError { code: EXIT_FAILURE, message: format!("cannot serialize output: {e}") })?;
    text.push('\n');
    Ok(text)
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    write_text(path, &json_text(value)?)
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    manifest: &'a RunManifest,
    report: &'a T,
}

/// Writes the report in the requested format. JSON wraps it with the manifest;
/// CSV writes the table and, when `--out` is set, a sidecar manifest.
pub(crate) fn emit<T: Serialize>(
    output: &OutputArgs,
    default: Format,
    manifest: &RunManifest,
    report: &T,
    table: impl FnOnce() -> Table,
) -> Result<(), CliError> {
    let text = match output.format.unwrap_or(default) {
        Format::Json => json_text(&Envelope { manifest, report })?,
        Format::Csv => {
            if let Some(out) = &output.out {
                write_json(&manifest_path(out), manifest)?;
            }
            table().to_csv()
        }
    };
    match &output.out {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rendering() {
        let mut t = Table::new(vec!["a", "b", "c"]);
        t.push(vec![3usize.into(), 0.5.into(), "x,y".into()]);
        t.push(vec![Cell::from(None::<usize>), true.into(), "q\"".into()]);
        assert_eq!(t.to_csv(), "a,b,c\n3,5.0000000000000000e-1,\"x,y\"\n,true,\"q\"\"\"\n");
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(manifest_path(Path::new("/tmp/r.csv")), PathBuf::from("/tmp/r.csv.manifest.json"));
    }
}
