//! Command reports and their two renderings.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

/// Header line of the machine-readable format.
pub const SCHEMA: &str = "schema=semitree-report/1";

/// Rows above which the human table is truncated.
const HUMAN_ROWS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Records,
}

/// One result row: a kind tag and ordered `key=value` fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Record {
        Record { kind: kind.into(), fields: Vec::new() }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Record {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    /// The command line as given, without the program name.
    pub command: String,
    pub params: Vec<(String, String)>,
    /// Headline lines shown before the tables.
    pub notes: Vec<String>,
    pub records: Vec<Record>,
    pub checks: Vec<Check>,
    /// Set when the command could not run.
    pub error: Option<String>,
    pub elapsed: Duration,
    pub format: Format,
    pub output: Option<PathBuf>,
    /// Text printed verbatim instead of a rendering (help, usage errors).
    pub raw: Option<String>,
}

fn escape(v: &str) -> String {
    v.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n")
}

impl Report {
    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.into(), value.to_string()));
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check { name: name.into(), passed });
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn records_of<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.kind == kind)
    }

    pub fn render(&self) -> String {
        if let Some(r) = &self.raw {
            return r.clone();
        }
        match self.format {
            Format::Human => self.render_human(),
            Format::Records => self.render_records(),
        }
    }

    /// Line-delimited, tab-separated records. Elapsed time is left out so
    /// that equal inputs give byte-identical output.
    pub fn render_records(&self) -> String {
        let mut s = String::new();
        let line = |s: &mut String, kind: &str, fields: &[(String, String)]| {
            s.push_str(kind);
            for (k, v) in fields {
                let _ = write!(s, "\t{k}={}", escape(v));
            }
            s.push('\n');
        };
        s.push_str(SCHEMA);
        s.push('\n');
        line(&mut s, "command", &[("argv".into(), self.command.clone())]);
        if !self.params.is_empty() {
            line(&mut s, "params", &self.params);
        }
        for n in &self.notes {
            line(&mut s, "note", &[("text".into(), n.clone())]);
        }
        for r in &self.records {
            line(&mut s, &r.kind, &r.fields);
        }
        for c in &self.checks {
            line(&mut s, "check", &[("name".into(), c.name.clone()), ("result".into(), pass_word(c.passed).into())]);
        }
        if let Some(e) = &self.error {
            line(&mut s, "error", &[("message".into(), e.clone())]);
        }
        line(
            &mut s,
            "summary",
            &[
                ("result".into(), pass_word(self.passed()).into()),
                ("checks".into(), self.checks.len().to_string()),
                ("failed".into(), self.failed_checks().to_string()),
            ],
        );
        s
    }

    pub fn render_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "$ semitree {}", self.command);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
            return s;
        }
        for n in &self.notes {
            let _ = writeln!(s, "{n}");
        }
        let mut i = 0;
        while i < self.records.len() {
            let kind = &self.records[i].kind;
            let j = i + self.records[i..].iter().take_while(|r| &r.kind == kind).count();
            s.push('\n');
            s.push_str(&table(&self.records[i..j]));
            i = j;
        }
        if !self.checks.is_empty() {
            s.push('\n');
        }
        for c in &self.checks {
            let _ = writeln!(s, "{} {}", pass_word(self.error.is_none() && c.passed).to_uppercase(), c.name);
        }
        let _ = writeln!(
            s,
            "{} ({} checks, {} failed, {:.2}s)",
            pass_word(self.passed()),
            self.checks.len(),
            self.failed_checks(),
            self.elapsed.as_secs_f64()
        );
        s
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Aligned table of records sharing one kind; columns are the union of
/// their keys in first-seen order.
fn table(rows: &[Record]) -> String {
    let mut cols: Vec<&str> = Vec::new();
    for r in rows {
        for (k, _) in &r.fields {
            if !cols.contains(&k.as_str()) {
                cols.push(k);
            }
        }
    }
    let shown = if rows.len() > HUMAN_ROWS { &rows[..HUMAN_ROWS / 2] } else { rows };
    let cell = |r: &Record, c: &str| r.get(c).unwrap_or("-").replace('\n', " ");
    let mut width: Vec<usize> = cols.iter().map(|c| c.len()).collect();
    for r in shown {
        for (w, c) in width.iter_mut().zip(&cols) {
            *w = (*w).max(cell(r, c).chars().count());
        }
    }
    let mut s = String::new();
    let _ = writeln!(s, "[{}]", rows[0].kind);
    let fmt_row = |cells: Vec<String>| {
        let parts: Vec<String> = cells.iter().zip(&width).map(|(c, &w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    let _ = writeln!(s, "{}", fmt_row(cols.iter().map(|c| c.to_string()).collect()));
    for r in shown {
        let _ = writeln!(s, "{}", fmt_row(cols.iter().map(|c| cell(r, c)).collect()));
    }
    if shown.len() < rows.len() {
        let _ = writeln!(s, "... {} more rows (use --format records for all)", rows.len() - shown.len());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report { command: "theta list --max 40".into(), ..Default::default() };
        r.param("max", 40);
        r.push(Record::new("theta").field("m", 34));
        r.push(Record::new("theta").field("m", 35));
        r.check("sieve", true);
        r.elapsed = Duration::from_millis(7);
        r
    }

    #[test]
    fn records_are_tab_separated() {
        let out = sample().render_records();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], SCHEMA);
        assert_eq!(lines[3], "theta\tm=34");
        assert_eq!(lines.last().unwrap(), &"summary\tresult=pass\tchecks=1\tfailed=0");
    }

    #[test]
    fn records_ignore_elapsed() {
        let a = sample();
        let mut b = sample();
        b.elapsed = Duration::from_secs(3);
        assert_eq!(a.render_records(), b.render_records());
    }

    #[test]
    fn escaping() {
        assert_eq!(escape("a\tb\nc"), "a\\tb\\nc");
    }

    #[test]
    fn human_table_aligns() {
        let out = sample().render_human();
        assert!(out.contains("[theta]\nm\n34\n35\n"));
        assert!(out.contains("PASS sieve"));
    }
}
