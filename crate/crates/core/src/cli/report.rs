//! Report assembly and emission as aligned text, JSON or CSV.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::lab::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Rat(Rational),
    Text(String),
    Bool(bool),
    Absent,
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<Rational> for Cell {
    fn from(v: Rational) -> Self {
        Cell::Rat(v)
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
        v.map_or(Cell::Absent, Into::into)
    }
}

/// `Ratio` keeps lowest terms with a positive denominator, so this is canonical.
fn rat_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Rat(r) => rat_text(r),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Absent => String::new(),
        }
    }

    fn human(&self) -> String {
        match self {
            Cell::Absent => "-".to_string(),
            Cell::Rat(r) if r.is_integer() => r.numer().to_string(),
            Cell::Rat(r) => rat_text(r),
            other => other.text(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Rat(r) => json!({"num": r.numer(), "den": r.denom()}),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Absent => Value::Null,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryItem {
    pub key: String,
    pub value: Cell,
    /// Estimator read off finitely many rows.
    pub observed: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<SummaryItem>,
    pub warnings: Vec<String>,
}

pub const OBSERVED: &str = "observed, not proven";

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn fact(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.summary.push(SummaryItem { key: key.to_string(), value: value.into(), observed: false });
        self
    }

    pub fn estimate(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.summary.push(SummaryItem { key: key.to_string(), value: value.into(), observed: true });
        self
    }

    pub fn render(&self, format: Format, color: bool) -> String {
        match format {
            Format::Human => self.human(color),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }

    fn human(&self, color: bool) -> String {
        let (bold, dim, reset) = if color { ("\x1b[1m", "\x1b[2m", "\x1b[0m") } else { ("", "", "") };
        let mut out = format!("{bold}{}{reset}\n", self.command);
        for (k, v) in &self.inputs {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        if !self.columns.is_empty() {
            let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::human).collect()).collect();
            let widths: Vec<usize> = (0..self.columns.len())
                .map(|c| cells.iter().map(|r| r[c].len()).chain([self.columns[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |fields: Vec<&str>| {
                let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:>w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            out.push('\n');
            out.push_str(&format!("{bold}{}{reset}\n", line(self.columns.iter().map(String::as_str).collect())));
            for r in &cells {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
                out.push('\n');
            }
        }
        if !self.summary.is_empty() {
            out.push('\n');
            for s in &self.summary {
                let tag = if s.observed { format!("  {dim}({OBSERVED}){reset}") } else { String::new() };
                out.push_str(&format!("{} = {}{tag}\n", s.key, s.value.human()));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }

    fn json(&self) -> String {
        let inputs: Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect()))
            .collect();
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|s| (s.key.clone(), json!({"value": s.value.json(), "observed": s.observed})))
            .collect();
        let doc = json!({
            "command": self.command,
            "inputs": inputs,
            "rows": rows,
            "summary": summary,
            "warnings": self.warnings,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    /// Header and rows, then one `# key=value` line per summary entry and
    /// `# warning:` lines.
    fn csv(&self) -> String {
        let field = |s: String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        };
        let mut out = String::new();
        out.push_str(&self.columns.iter().cloned().map(field).collect::<Vec<_>>().join(","));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(|c| field(c.text())).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        for s in &self.summary {
            let tag = if s.observed { format!(" ({OBSERVED})") } else { String::new() };
            out.push_str(&format!("# {}={}{tag}\n", s.key, s.value.text()));
        }
        for w in &self.warnings {
            out.push_str(&format!("# warning: {w}\n"));
        }
        out
    }

    pub fn write_to(&self, format: Format, out: &mut dyn Write, color: bool) -> std::io::Result<()> {
        out.write_all(self.render(format, color).as_bytes())?;
        out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.input("ideal", "I");
        r.columns = vec!["n".into(), "ratio".into(), "v".into()];
        r.rows = vec![
            vec![1u32.into(), Rational::new(49, 16).into(), Cell::Absent],
            vec![2u32.into(), Rational::new(4, 2).into(), 7u32.into()],
        ];
        r.estimate("b_hat", 3u64).fact("exact", true);
        r
    }

    #[test]
    fn rationals_serialize_exactly() {
        let r = sample();
        let csv = r.render(Format::Csv, false);
        assert!(csv.starts_with("n,ratio,v\n1,49/16,\n2,2/1,7\n"), "{csv}");
        assert!(csv.contains("# b_hat=3 (observed, not proven)\n"));
        assert!(csv.ends_with('\n'));
        let v: Value = serde_json::from_str(&r.render(Format::Json, false)).unwrap();
        assert_eq!(v["rows"][0]["ratio"], json!({"num": 49, "den": 16}));
        assert_eq!(v["rows"][0]["v"], Value::Null);
        assert_eq!(v["summary"]["b_hat"]["observed"], json!(true));
        assert_eq!(Cell::from(Rational::new(3, -6)).text(), "-1/2");
    }

    #[test]
    fn empty_rows_give_header_only_csv() {
        let mut r = Report::new("demo");
        r.columns = vec!["e".into(), "q".into()];
        assert_eq!(r.render(Format::Csv, false), "e,q\n");
    }

    #[test]
    fn human_is_aligned_and_plain_without_color() {
        let text = sample().render(Format::Human, false);
        assert!(!text.contains('\x1b'));
        let lines: Vec<&str> = text.lines().filter(|l| l.trim_start().starts_with(['1', '2', 'n'])).collect();
        assert_eq!(lines[0], "n  ratio  v");
        assert_eq!(lines[1], "1  49/16  -");
        assert_eq!(lines[2], "2      2  7");
        assert!(text.contains("b_hat = 3  (observed, not proven)"));
        assert!(sample().render(Format::Human, true).contains('\x1b'));
    }

    #[test]
    fn deterministic() {
        for f in [Format::Human, Format::Json, Format::Csv] {
            assert_eq!(sample().render(f, false), sample().render(f, false));
        }
    }
}
