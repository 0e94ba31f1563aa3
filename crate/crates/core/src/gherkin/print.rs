use std::fmt::Write;

use super::ast::{FeatureAst, ScenarioKind, ScenarioNode};

/// Render an ast in the canonical layout: LF line endings, two-space
/// indentation per nesting level, one blank line before each scenario, and
/// Examples tables padded so the pipes align. Parsing the output yields a
/// structurally equal ast, and any two sources that parse equal print to
/// identical bytes.
pub fn print_feature(ast: &FeatureAst) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Feature: {}", ast.name);
    if let Some(description) = &ast.description {
        for line in description.lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    for scenario in &ast.scenarios {
        out.push('\n');
        print_scenario(&mut out, scenario);
    }
    out
}

fn print_scenario(out: &mut String, scenario: &ScenarioNode) {
    let header = match scenario.kind {
        ScenarioKind::Plain => "Scenario",
        ScenarioKind::Outline => "Scenario Outline",
    };
    let _ = writeln!(out, "  {header}: {}", scenario.name);
    for step in &scenario.steps {
        if step.text.is_empty() {
            let _ = writeln!(out, "    {}", step.keyword);
        } else {
            let _ = writeln!(out, "    {} {}", step.keyword, step.text);
        }
    }
    if let Some(table) = &scenario.examples {
        out.push_str("\n    Examples:\n");
        let widths: Vec<usize> = table
            .columns
            .iter()
            .enumerate()
            .map(|(i, name)| {
                table
                    .rows
                    .iter()
                    .map(|row| row[i].chars().count())
                    .chain([name.chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        print_row(out, &table.columns, &widths);
        for row in &table.rows {
            print_row(out, row, &widths);
        }
    }
}

fn print_row(out: &mut String, cells: &[String], widths: &[usize]) {
    out.push_str("      |");
    for (cell, width) in cells.iter().zip(widths) {
        let pad = width - cell.chars().count();
        let _ = write!(out, " {cell}{} |", " ".repeat(pad));
    }
    out.push('\n');
}
