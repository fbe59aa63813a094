//! Delimited and aligned table output with fixed float formatting.

use std::io::{self, Write};

/// Output layout selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
    /// Space-aligned columns, or PASS/FAIL lines for `report`.
    Report,
}

/// Seventeen significant digits; empty for values that are undefined.
/// Negative zero prints as zero.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{:.16e}", x + 0.0)
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Quotes a cell that contains the separator or a quote.
fn quote(cell: &str, sep: &str) -> String {
    if cell.contains(sep) || cell.contains('"') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Table {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> io::Result<()> {
        match format {
            Format::Csv => self.delimited(out, ","),
            Format::Tsv => self.delimited(out, "\t"),
            Format::Report => self.aligned(out),
        }
    }

    fn delimited(&self, out: &mut dyn Write, sep: &str) -> io::Result<()> {
        writeln!(out, "{}", self.header.join(sep))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| quote(c, sep)).collect();
            writeln!(out, "{}", cells.join(sep))?;
        }
        Ok(())
    }

    fn aligned(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(self.header.clone()))?;
        for row in &self.rows {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(num(-0.5), "-5.0000000000000000e-1");
        assert_eq!(num(f64::NAN), "");
        assert_eq!(num(-0.0), "0.0000000000000000e0");
        let mut t = Table::new(&["a", "bb"]);
        t.push(vec!["1".into(), "2".into()]);
        let mut buf = Vec::new();
        t.write(&mut buf, Format::Csv).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,bb\n1,2\n");
        let mut buf = Vec::new();
        t.write(&mut buf, Format::Report).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a  bb\n1  2\n");
        assert_eq!(quote("x, y", ","), "\"x, y\"");
        assert_eq!(quote("x, y", "\t"), "x, y");
    }
}
