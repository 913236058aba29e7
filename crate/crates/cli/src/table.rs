//! Deterministic CSV: fixed 12-significant-digit floats, '\n' endings,
//! '#' comment lines for the resolved configuration.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else if x == 0.0 {
        // no "-0"
        "0.00000000000e0".into()
    } else {
        format!("{x:.11e}")
    }
}

pub struct Table {
    out: Box<dyn Write>,
}

impl Table {
    pub fn open(path: Option<&Path>) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Table { out })
    }

    pub fn comment(&mut self, key: &str, value: impl std::fmt::Display) -> io::Result<()> {
        writeln!(self.out, "# {key} = {value}")
    }

    pub fn header(&mut self, cols: &[&str]) -> io::Result<()> {
        writeln!(self.out, "{}", cols.join(","))
    }

    pub fn row(&mut self, cells: &[String]) -> io::Result<()> {
        writeln!(self.out, "{}", cells.join(","))
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}
