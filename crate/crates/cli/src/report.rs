//! Suite reports and their table and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use qcat_core::Audit;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown report format `{other}`, expected table or json")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub instance: String,
    pub audit: String,
    pub check: String,
    pub detail: String,
}

/// The settings a report was produced with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct ConfigEcho {
    pub tnorm: String,
    pub grid: u32,
    pub exact_grid: bool,
    pub max_size: usize,
    pub seed: u64,
    pub corpus: usize,
    pub instance: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    FindingsOnly,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::FindingsOnly => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::FindingsOnly => "FINDINGS",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct Report {
    pub suite: String,
    pub config: ConfigEcho,
    pub instances: u64,
    pub checked: u64,
    pub failed: u64,
    pub findings: u64,
    pub metrics: BTreeMap<String, u64>,
    pub failures: Vec<Row>,
    pub finding_rows: Vec<Row>,
    pub notes: Vec<Row>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(suite: &str, config: ConfigEcho) -> Report {
        Report {
            suite: suite.to_string(),
            config,
            ..Report::default()
        }
    }

    /// Folds one audit in, attributing its rows to `instance`.
    pub fn add(&mut self, instance: &str, audit: Audit) {
        self.checked += audit.checked;
        self.failed += audit.failed;
        self.findings += audit.found;
        let row = |check: String, detail: String| Row {
            instance: instance.to_string(),
            audit: audit.name.clone(),
            check,
            detail,
        };
        for w in &audit.failures {
            self.failures.push(row(w.check.clone(), w.detail.clone()));
        }
        for w in &audit.findings {
            self.finding_rows.push(row(w.check.clone(), w.detail.clone()));
        }
        for n in &audit.notes {
            self.notes.push(row(String::new(), n.clone()));
        }
    }

    pub fn metric(&mut self, key: &str, amount: u64) {
        *self.metrics.entry(key.to_string()).or_default() += amount;
    }

    pub fn status(&self) -> Status {
        if self.failed > 0 {
            Status::Fail
        } else if self.findings > 0 {
            Status::FindingsOnly
        } else {
            Status::Pass
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(flatten)]
    report: &'a Report,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

/// Renders deterministically; timing is appended only when requested.
pub fn emit_report(report: &Report, format: Format, with_timing: bool) -> String {
    let timing = with_timing.then_some(report.elapsed.as_millis());
    match format {
        Format::Json => {
            let doc = JsonReport {
                report,
                status: report.status(),
                timing_ms: timing,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => render_table(report, timing),
    }
}

fn render_rows(out: &mut String, title: &str, rows: &[Row]) {
    if rows.is_empty() {
        return;
    }
    let _ = writeln!(out, "{title}:");
    for r in rows {
        if r.check.is_empty() {
            let _ = writeln!(out, "  [{}] {}: {}", r.instance, r.audit, r.detail);
        } else {
            let _ = writeln!(out, "  [{}] {} / {}: {}", r.instance, r.audit, r.check, r.detail);
        }
    }
}

fn render_table(report: &Report, timing: Option<u128>) -> String {
    let c = &report.config;
    let mut out = String::new();
    let _ = writeln!(out, "suite: {}", report.suite);
    let _ = writeln!(
        out,
        "config: tnorm={} grid={}{} max-size={} seed={} corpus={} instance={}",
        c.tnorm,
        c.grid,
        if c.exact_grid { " (exact)" } else { "" },
        c.max_size,
        c.seed,
        c.corpus,
        c.instance.as_deref().unwrap_or("-")
    );
    let _ = writeln!(
        out,
        "instances: {}  checked: {}  failed: {}  findings: {}",
        report.instances, report.checked, report.failed, report.findings
    );
    if !report.metrics.is_empty() {
        let _ = writeln!(out, "metrics:");
        for (k, v) in &report.metrics {
            let _ = writeln!(out, "  {k}: {v}");
        }
    }
    render_rows(&mut out, "failures", &report.failures);
    render_rows(&mut out, "findings", &report.finding_rows);
    render_rows(&mut out, "notes", &report.notes);
    let _ = writeln!(out, "status: {}", report.status().label());
    if let Some(ms) = timing {
        let _ = writeln!(out, "timing: {ms} ms");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_header_only() {
        let r = Report::new("monad-laws", ConfigEcho::default());
        let t = emit_report(&r, Format::Table, false);
        assert!(t.starts_with("suite: monad-laws\n"));
        assert!(!t.contains("failures:") && t.ends_with("status: PASS\n"));
        let j: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Json, false)).unwrap();
        assert_eq!(j["status"], "pass");
        assert!(j.get("timing_ms").is_none());
    }

    #[test]
    fn rows_and_status() {
        let mut r = Report::new("x", ConfigEcho::default());
        let mut a = Audit::new("probe");
        a.check(false, "law", || "witness".into());
        a.finding("gap", "1 step");
        r.add("P0", a);
        assert_eq!(r.status(), Status::Fail);
        let t = emit_report(&r, Format::Table, true);
        assert!(t.contains("[P0] probe / law: witness"));
        assert!(t.contains("timing: "));
        let j: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Json, false)).unwrap();
        assert_eq!(j["failures"][0]["detail"], "witness");
        assert_eq!(j["finding_rows"][0]["check"], "gap");
    }
}
