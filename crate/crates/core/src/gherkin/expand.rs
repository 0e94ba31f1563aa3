use super::ast::{ExamplesTable, FeatureAst, ScenarioKind, ScenarioNode, Step};
use super::parse::placeholders;

/// Expand every Scenario Outline into plain scenarios, one per Examples row,
/// in row order. Plain scenarios pass through untouched. The expanded
/// scenario for row `k` (1-based) is named `"<outline name> [k]"`; every
/// `<column>` placeholder in its steps is replaced by that row's cell text.
///
/// The result contains no outlines, so expansion is idempotent.
pub fn expand_outlines(ast: &FeatureAst) -> FeatureAst {
    let scenarios = ast
        .scenarios
        .iter()
        .flat_map(|scenario| match (scenario.kind, &scenario.examples) {
            (ScenarioKind::Outline, Some(table)) => expand_one(scenario, table),
            _ => vec![scenario.clone()],
        })
        .collect();
    FeatureAst {
        name: ast.name.clone(),
        description: ast.description.clone(),
        scenarios,
    }
}

fn expand_one(outline: &ScenarioNode, table: &ExamplesTable) -> Vec<ScenarioNode> {
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| ScenarioNode {
            name: format!("{} [{}]", outline.name, i + 1),
            kind: ScenarioKind::Plain,
            steps: outline
                .steps
                .iter()
                .map(|step| Step {
                    keyword: step.keyword,
                    text: substitute(&step.text, table, row),
                    resolved: step.resolved,
                    line: 0,
                })
                .collect(),
            examples: None,
        })
        .collect()
}

/// Single left-to-right pass: cell text is inserted verbatim and never
/// rescanned, so cells containing `<name>` sequences cannot cascade.
fn substitute(text: &str, table: &ExamplesTable, row: &[String]) -> String {
    let mut out = String::with_capacity(text.len());
    let mut copied_to = 0;
    for (offset, name) in placeholders(text) {
        // Parsing guarantees the column exists; be lenient on hand-built asts.
        let Some(index) = table.column_index(name) else {
            continue;
        };
        out.push_str(&text[copied_to..offset]);
        out.push_str(&row[index]);
        copied_to = offset + name.len() + 2;
    }
    out.push_str(&text[copied_to..]);
    out
}
