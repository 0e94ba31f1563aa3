use serde::Serialize;

use crate::compiler::ExpectField;

/// One expectation comparison from a single case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Check {
    pub field: ExpectField,
    pub expected: u64,
    pub actual: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestReport {
    pub feature_name: String,
    pub results: Vec<CaseResult>,
    pub passed_count: usize,
    pub failed_count: usize,
}

impl TestReport {
    pub fn all_passed(&self) -> bool {
        self.failed_count == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Human,
    Machine,
}

// The machine schema is part of the CLI contract; field order here is the
// key order consumers see.
#[derive(Serialize)]
struct MachineReport<'a> {
    feature: &'a str,
    passed: usize,
    failed: usize,
    cases: Vec<MachineCase<'a>>,
}

#[derive(Serialize)]
struct MachineCase<'a> {
    name: &'a str,
    passed: bool,
    checks: Vec<MachineCheck>,
}

#[derive(Serialize)]
struct MachineCheck {
    field: String,
    expected: u64,
    actual: u64,
    ok: bool,
}

/// Render a report either as a human-readable summary (one ✓/✗ line per
/// case, failing checks spelled out) or as a single JSON document with
/// stable key order.
pub fn render_report(report: &TestReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Human => render_human(report),
        ReportFormat::Machine => render_machine(report),
    }
}

fn render_human(report: &TestReport) -> String {
    let mut out = String::new();
    if !report.feature_name.is_empty() {
        out.push_str(&format!("Feature: {}\n", report.feature_name));
    }
    for case in &report.results {
        let mark = if case.passed { '\u{2713}' } else { '\u{2717}' };
        out.push_str(&format!("  {mark} {}\n", case.name));
        for check in case.checks.iter().filter(|c| !c.ok) {
            out.push_str(&format!(
                "      {}: expected {}, got {}\n",
                check.field,
                format_value(check.field, check.expected),
                format_value(check.field, check.actual),
            ));
        }
    }
    out.push_str(&format!(
        "{} passed, {} failed\n",
        report.passed_count, report.failed_count
    ));
    out
}

fn format_value(field: ExpectField, value: u64) -> String {
    match field {
        ExpectField::Result => format!("{value:#x}"),
        ExpectField::Flag(_) => value.to_string(),
    }
}

fn render_machine(report: &TestReport) -> String {
    let doc = MachineReport {
        feature: &report.feature_name,
        passed: report.passed_count,
        failed: report.failed_count,
        cases: report
            .results
            .iter()
            .map(|case| MachineCase {
                name: &case.name,
                passed: case.passed,
                checks: case
                    .checks
                    .iter()
                    .map(|check| MachineCheck {
                        field: check.field.to_string(),
                        expected: check.expected,
                        actual: check.actual,
                        ok: check.ok,
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}
