use std::collections::BTreeMap;

use crate::alu::{AluResponse, Flag, Width};
use crate::compiler::{
    bind_scenario, classify_step, compile_feature, CompileErrors, ExpectField, StepBinding,
};
use crate::gherkin::{expand_outlines, FeatureAst, ResolvedKeyword, ScenarioKind, ScenarioNode};

use super::{bit_cell, hex_cell, Mismatch, ValidationReport};

/// Compare every present expectation in the feature against the golden
/// model. Compilation failures propagate; a clean report means the feature
/// is oracle-consistent.
pub fn validate_against_oracle(
    ast: &FeatureAst,
    width: Width,
) -> Result<ValidationReport, CompileErrors> {
    let cases = compile_feature(ast, width)?;
    let mut mismatches = Vec::new();
    for (row_index, case) in cases.iter().enumerate() {
        let response = case.stimulus.evaluate();
        let mut push = |field, found: u64, oracle: u64| {
            mismatches.push(Mismatch {
                scenario: case.name.clone(),
                row_index,
                field,
                found,
                oracle,
            });
        };
        if let Some(expected) = case.expect.result {
            if expected != response.result {
                push(ExpectField::Result, expected, response.result);
            }
        }
        for flag in Flag::ALL {
            if let Some(expected) = case.expect.flag(flag) {
                let oracle = response.flags.get(flag);
                if expected != oracle {
                    push(
                        ExpectField::Flag(flag),
                        u64::from(expected),
                        u64::from(oracle),
                    );
                }
            }
        }
    }
    Ok(ValidationReport {
        total_rows: cases.len(),
        mismatches,
    })
}

/// Rewrite every mismatched expectation to the oracle value, returning the
/// repaired ast and the number of cells changed. Outlines are repaired in
/// place when each wrong expectation reads a dedicated placeholder column;
/// otherwise the outline is expanded and its scenarios repaired one by one.
///
/// Precondition: the ast compiles.
pub(crate) fn repair_against_oracle(ast: &FeatureAst, width: Width) -> (FeatureAst, u32) {
    let mut corrections = 0u32;
    let mut scenarios = Vec::new();
    for scenario in &ast.scenarios {
        match scenario.kind {
            ScenarioKind::Plain => scenarios.push(repair_plain(scenario, width, &mut corrections)),
            ScenarioKind::Outline => {
                scenarios.extend(repair_outline(scenario, width, &mut corrections));
            }
        }
    }
    let repaired = FeatureAst {
        name: ast.name.clone(),
        description: ast.description.clone(),
        scenarios,
    };
    debug_assert!(validate_against_oracle(&repaired, width).is_ok_and(|r| r.is_clean()));
    (repaired, corrections)
}

fn repair_plain(scenario: &ScenarioNode, width: Width, corrections: &mut u32) -> ScenarioNode {
    let case = bind_scenario(scenario, width).expect("repair precondition: feature compiles");
    let response = case.stimulus.evaluate();
    let mut repaired = scenario.clone();
    for step in &mut repaired.steps {
        let Some(fix) = step_fix(step.resolved, &step.text, &response, width) else {
            continue;
        };
        step.text = fix;
        *corrections += 1;
    }
    repaired
}

/// New text for an expectation step that disagrees with the model, `None`
/// when the step is consistent (or not an expectation).
fn step_fix(
    resolved: ResolvedKeyword,
    text: &str,
    response: &AluResponse,
    width: Width,
) -> Option<String> {
    match classify_step(resolved, text)? {
        StepBinding::ExpectResult { literal } => {
            let consistent = crate::compiler::parse_int_literal(&literal, width)
                .is_ok_and(|v| v == response.result);
            (!consistent)
                .then(|| format!("the result should be {}", hex_cell(response.result, width)))
        }
        StepBinding::ExpectFlag { flag, value } => {
            let oracle = response.flags.get(flag);
            let consistent = value == bit_cell(oracle);
            (!consistent).then(|| format!("the {flag} flag should be {}", bit_cell(oracle)))
        }
        _ => None,
    }
}

fn repair_outline(
    scenario: &ScenarioNode,
    width: Width,
    corrections: &mut u32,
) -> Vec<ScenarioNode> {
    let table = scenario.examples.as_ref().expect("outline carries a table");

    // Which placeholder column feeds each expectation field, when every
    // expectation is a whole-cell placeholder not shared with the stimulus.
    let mut field_columns: BTreeMap<usize, ExpectField> = BTreeMap::new();
    let mut in_place = true;
    let mut stimulus_columns = Vec::new();
    for step in &scenario.steps {
        let Some(binding) = classify_step(step.resolved, &step.text) else {
            in_place = false;
            break;
        };
        match binding {
            StepBinding::Operands { a, b } => {
                for cell in [a, b] {
                    if let Some(col) = pure_placeholder(&cell, table) {
                        stimulus_columns.push(col);
                    }
                }
            }
            StepBinding::Operation { name } => {
                if let Some(col) = pure_placeholder(&name, table) {
                    stimulus_columns.push(col);
                }
            }
            StepBinding::ExpectResult { literal } => match pure_placeholder(&literal, table) {
                Some(col) if !field_columns.contains_key(&col) => {
                    field_columns.insert(col, ExpectField::Result);
                }
                _ => in_place = false,
            },
            StepBinding::ExpectFlag { flag, value } => match pure_placeholder(&value, table) {
                Some(col) if !field_columns.contains_key(&col) => {
                    field_columns.insert(col, ExpectField::Flag(flag));
                }
                _ => in_place = false,
            },
            StepBinding::Reset => {}
        }
    }
    if field_columns
        .keys()
        .any(|col| stimulus_columns.contains(col))
    {
        in_place = false;
    }

    if !in_place {
        // Fall back: expand this outline alone and repair the plains.
        let single = FeatureAst {
            name: String::new(),
            description: None,
            scenarios: vec![scenario.clone()],
        };
        return expand_outlines(&single)
            .scenarios
            .iter()
            .map(|plain| repair_plain(plain, width, corrections))
            .collect();
    }

    let mut repaired = scenario.clone();
    let rows = &mut repaired
        .examples
        .as_mut()
        .expect("outline carries a table")
        .rows;
    let expanded = expand_outlines(&FeatureAst {
        name: String::new(),
        description: None,
        scenarios: vec![scenario.clone()],
    });
    for (row, plain) in rows.iter_mut().zip(&expanded.scenarios) {
        let case = bind_scenario(plain, width).expect("repair precondition: feature compiles");
        let response = case.stimulus.evaluate();
        for (&col, &field) in &field_columns {
            let oracle_cell = match field {
                ExpectField::Result => hex_cell(response.result, width),
                ExpectField::Flag(flag) => bit_cell(response.flags.get(flag)).to_string(),
            };
            let consistent = match field {
                ExpectField::Result => crate::compiler::parse_int_literal(&row[col], width)
                    .is_ok_and(|v| v == response.result),
                ExpectField::Flag(flag) => row[col] == bit_cell(response.flags.get(flag)),
            };
            if !consistent {
                row[col] = oracle_cell;
                *corrections += 1;
            }
        }
    }
    vec![repaired]
}

/// `Some(column index)` when the cell is exactly one `<name>` placeholder.
fn pure_placeholder(cell: &str, table: &crate::gherkin::ExamplesTable) -> Option<usize> {
    let name = cell.strip_prefix('<')?.strip_suffix('>')?;
    table.column_index(name)
}
