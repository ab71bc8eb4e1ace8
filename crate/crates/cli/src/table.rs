//! Tabular results and their CSV form.

use std::io::Write;

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    /// Shortest decimal string that parses back to the same value.
    pub fn render(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// One output row: the swept inputs and either results or an error.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub keys: Vec<Cell>,
    pub values: Result<Vec<Cell>, String>,
}

impl Row {
    pub fn new(keys: Vec<Cell>, values: Result<Vec<Cell>, String>) -> Self {
        Self { keys, values }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub key_columns: Vec<&'static str>,
    pub value_columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    /// `(x, [y...])` column names for the optional gnuplot script.
    pub plot: (&'static str, Vec<&'static str>),
}

impl Table {
    pub fn header(&self) -> Vec<&'static str> {
        let mut h = self.key_columns.clone();
        h.extend(&self.value_columns);
        h.push("error");
        h
    }

    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.values.is_err()).count()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(self.header())?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.keys.iter().map(Cell::render).collect();
            match &row.values {
                Ok(v) => {
                    debug_assert_eq!(v.len(), self.value_columns.len());
                    rec.extend(v.iter().map(Cell::render));
                    rec.push(String::new());
                }
                Err(e) => {
                    rec.extend(std::iter::repeat_n(String::new(), self.value_columns.len()));
                    rec.push(if e.is_empty() {
                        "unknown error".into()
                    } else {
                        e.clone()
                    });
                }
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Gnuplot script plotting the value columns against `plot.0`.
    pub fn gnuplot_script(&self, csv_name: &str) -> String {
        let header = self.header();
        let col = |name: &str| header.iter().position(|h| *h == name).map(|i| i + 1).unwrap_or(1);
        let x = col(self.plot.0);
        let curves: Vec<String> = self
            .plot
            .1
            .iter()
            .map(|y| format!("'{csv_name}' using {x}:{} title '{y}'", col(y)))
            .collect();
        format!(
            "set datafile separator ','\nset key autotitle columnhead\nset xlabel '{}'\nplot {}\n",
            self.plot.0,
            curves.join(", \\\n     ")
        )
    }
}

pub(crate) fn write_file(path: &std::path::Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}
