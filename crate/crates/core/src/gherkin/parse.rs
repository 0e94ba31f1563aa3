use std::fmt;

use thiserror::Error;

use super::ast::{
    ExamplesTable, FeatureAst, ResolvedKeyword, ScenarioKind, ScenarioNode, Step, StepKeyword,
};

/// Parse failure with its source position (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub kind: SyntaxErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxErrorKind {
    /// No `Feature:` header in the input.
    MissingFeature,
    /// Content before the `Feature:` header.
    ExpectedFeature {
        found: String,
    },
    /// A second `Feature:` header.
    DuplicateFeature,
    EmptyFeatureName,
    EmptyScenarioName,
    DuplicateScenario {
        name: String,
    },
    /// Unrecognized or unsupported construct (tags, Background, Rule, or
    /// free text inside a scenario body).
    UnknownKeyword {
        found: String,
    },
    StepOutsideScenario,
    /// First step of a scenario resolves to And/But.
    LeadingAndBut,
    /// Step classes out of `Given* When+ Then+` order, or a missing class.
    StepOrder {
        message: String,
    },
    NoSteps,
    ExamplesOutsideOutline,
    MultipleExamples,
    OutlineWithoutExamples,
    /// `Examples:` with a header but no data rows.
    EmptyExamples,
    TableOutsideExamples,
    MalformedTableRow {
        reason: String,
    },
    DuplicateColumn {
        name: String,
    },
    PlaceholderUnknown {
        name: String,
    },
}

impl fmt::Display for SyntaxErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingFeature => write!(f, "missing 'Feature:' header"),
            Self::ExpectedFeature { found } => {
                write!(f, "expected 'Feature:' header, found '{found}'")
            }
            Self::DuplicateFeature => write!(f, "only one 'Feature:' header is allowed"),
            Self::EmptyFeatureName => write!(f, "feature name is empty"),
            Self::EmptyScenarioName => write!(f, "scenario name is empty"),
            Self::DuplicateScenario { name } => {
                write!(f, "duplicate scenario name '{name}'")
            }
            Self::UnknownKeyword { found } => {
                write!(f, "unknown keyword or misplaced text '{found}'")
            }
            Self::StepOutsideScenario => write!(f, "step outside a scenario"),
            Self::LeadingAndBut => {
                write!(f, "a scenario must not begin with 'And' or 'But'")
            }
            Self::StepOrder { message } => write!(f, "{message}"),
            Self::NoSteps => write!(f, "scenario has no steps"),
            Self::ExamplesOutsideOutline => {
                write!(f, "'Examples:' is only allowed inside a Scenario Outline")
            }
            Self::MultipleExamples => {
                write!(f, "a Scenario Outline may have only one Examples table")
            }
            Self::OutlineWithoutExamples => {
                write!(f, "Scenario Outline has no Examples table")
            }
            Self::EmptyExamples => write!(f, "Examples table has no data rows"),
            Self::TableOutsideExamples => {
                write!(f, "table row outside an Examples table")
            }
            Self::MalformedTableRow { reason } => write!(f, "malformed table row: {reason}"),
            Self::DuplicateColumn { name } => {
                write!(f, "duplicate Examples column '{name}'")
            }
            Self::PlaceholderUnknown { name } => {
                write!(f, "placeholder '<{name}>' has no matching Examples column")
            }
        }
    }
}

fn err(line: usize, column: usize, kind: SyntaxErrorKind) -> SyntaxError {
    SyntaxError { line, column, kind }
}

/// Parse UTF-8 Gherkin source into a [`FeatureAst`].
///
/// Blank lines and `#` comment lines are ignored; CRLF line endings are
/// accepted. All tree invariants (step ordering, unique scenario names,
/// table shape, placeholder/column agreement) are enforced here, so a
/// returned ast is valid by construction.
pub fn parse_feature(source: &str) -> Result<FeatureAst, SyntaxError> {
    Parser::default().run(source)
}

#[derive(Default)]
struct Parser {
    feature_name: Option<String>,
    description: Vec<String>,
    scenarios: Vec<ScenarioNode>,
    current: Option<PartialScenario>,
}

struct PartialScenario {
    name: String,
    kind: ScenarioKind,
    steps: Vec<Step>,
    /// Column where each step's text begins, for placeholder diagnostics.
    step_text_columns: Vec<usize>,
    last_class: Option<ResolvedKeyword>,
    examples: Option<PartialTable>,
    header_line: usize,
    header_column: usize,
    in_examples: bool,
}

struct PartialTable {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    marker_line: usize,
    marker_column: usize,
}

impl Parser {
    fn run(mut self, source: &str) -> Result<FeatureAst, SyntaxError> {
        for (idx, raw_line) in source.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
            let content = line.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let column = line.chars().take_while(|c| c.is_whitespace()).count() + 1;
            self.dispatch(content, line_no, column)?;
        }
        self.finish()
    }

    fn dispatch(&mut self, content: &str, line: usize, column: usize) -> Result<(), SyntaxError> {
        if let Some(name) = content.strip_prefix("Feature:") {
            return self.on_feature(name.trim(), line, column);
        }
        if let Some(name) = content.strip_prefix("Scenario Outline:") {
            return self.on_scenario(name.trim(), ScenarioKind::Outline, line, column);
        }
        if let Some(name) = content.strip_prefix("Scenario:") {
            return self.on_scenario(name.trim(), ScenarioKind::Plain, line, column);
        }
        if content.strip_prefix("Examples:").is_some() {
            return self.on_examples(line, column);
        }
        if let Some((keyword, text)) = split_step_keyword(content) {
            let text_column = column + content.len() - text.len();
            return self.on_step(keyword, text, line, column, text_column);
        }
        if content.starts_with('|') {
            return self.on_table_row(content, line, column);
        }
        if content.starts_with('@')
            || content.starts_with("Background:")
            || content.starts_with("Rule:")
        {
            return Err(err(
                line,
                column,
                SyntaxErrorKind::UnknownKeyword {
                    found: first_word(content),
                },
            ));
        }
        // Free text: legal only as the feature description.
        if self.feature_name.is_none() {
            return Err(err(
                line,
                column,
                SyntaxErrorKind::ExpectedFeature {
                    found: first_word(content),
                },
            ));
        }
        if self.current.is_some() {
            return Err(err(
                line,
                column,
                SyntaxErrorKind::UnknownKeyword {
                    found: first_word(content),
                },
            ));
        }
        self.description.push(content.to_string());
        Ok(())
    }

    fn on_feature(&mut self, name: &str, line: usize, column: usize) -> Result<(), SyntaxError> {
        if self.feature_name.is_some() {
            return Err(err(line, column, SyntaxErrorKind::DuplicateFeature));
        }
        if name.is_empty() {
            return Err(err(line, column, SyntaxErrorKind::EmptyFeatureName));
        }
        self.feature_name = Some(name.to_string());
        Ok(())
    }

    fn on_scenario(
        &mut self,
        name: &str,
        kind: ScenarioKind,
        line: usize,
        column: usize,
    ) -> Result<(), SyntaxError> {
        if self.feature_name.is_none() {
            return Err(err(
                line,
                column,
                SyntaxErrorKind::ExpectedFeature {
                    found: first_word(name),
                },
            ));
        }
        self.finalize_current()?;
        if name.is_empty() {
            return Err(err(line, column, SyntaxErrorKind::EmptyScenarioName));
        }
        if self.scenarios.iter().any(|s| s.name == name) {
            return Err(err(
                line,
                column,
                SyntaxErrorKind::DuplicateScenario {
                    name: name.to_string(),
                },
            ));
        }
        self.current = Some(PartialScenario {
            name: name.to_string(),
            kind,
            steps: Vec::new(),
            step_text_columns: Vec::new(),
            last_class: None,
            examples: None,
            header_line: line,
            header_column: column,
            in_examples: false,
        });
        Ok(())
    }

    fn on_step(
        &mut self,
        keyword: StepKeyword,
        text: &str,
        line: usize,
        column: usize,
        text_column: usize,
    ) -> Result<(), SyntaxError> {
        let Some(current) = self.current.as_mut() else {
            return Err(err(line, column, SyntaxErrorKind::StepOutsideScenario));
        };
        if current.in_examples {
            return Err(err(
                line,
                column,
                SyntaxErrorKind::StepOrder {
                    message: "step appears after the Examples table".to_string(),
                },
            ));
        }
        let resolved = match keyword {
            StepKeyword::Given => ResolvedKeyword::Given,
            StepKeyword::When => ResolvedKeyword::When,
            StepKeyword::Then => ResolvedKeyword::Then,
            StepKeyword::And | StepKeyword::But => match current.last_class {
                Some(class) => class,
                None => return Err(err(line, column, SyntaxErrorKind::LeadingAndBut)),
            },
        };
        if current.steps.is_empty() && resolved == ResolvedKeyword::Then {
            return Err(err(
                line,
                column,
                SyntaxErrorKind::StepOrder {
                    message: "a scenario must not begin with 'Then'".to_string(),
                },
            ));
        }
        if let Some(last) = current.last_class {
            if class_rank(resolved) < class_rank(last) {
                return Err(err(
                    line,
                    column,
                    SyntaxErrorKind::StepOrder {
                        message: format!(
                            "'{keyword}' step is out of order (expected Given* When+ Then+)"
                        ),
                    },
                ));
            }
        }
        current.last_class = Some(resolved);
        current.steps.push(Step {
            keyword,
            text: text.to_string(),
            resolved,
            line,
        });
        current.step_text_columns.push(text_column);
        Ok(())
    }

    fn on_examples(&mut self, line: usize, column: usize) -> Result<(), SyntaxError> {
        let Some(current) = self.current.as_mut() else {
            return Err(err(line, column, SyntaxErrorKind::ExamplesOutsideOutline));
        };
        if current.kind != ScenarioKind::Outline {
            return Err(err(line, column, SyntaxErrorKind::ExamplesOutsideOutline));
        }
        if current.examples.is_some() {
            return Err(err(line, column, SyntaxErrorKind::MultipleExamples));
        }
        current.examples = Some(PartialTable {
            columns: Vec::new(),
            rows: Vec::new(),
            marker_line: line,
            marker_column: column,
        });
        current.in_examples = true;
        Ok(())
    }

    fn on_table_row(
        &mut self,
        content: &str,
        line: usize,
        column: usize,
    ) -> Result<(), SyntaxError> {
        let table = match self.current.as_mut() {
            Some(current) if current.in_examples => current.examples.as_mut().unwrap(),
            _ => return Err(err(line, column, SyntaxErrorKind::TableOutsideExamples)),
        };
        let cells = split_table_row(content).ok_or_else(|| {
            err(
                line,
                column,
                SyntaxErrorKind::MalformedTableRow {
                    reason: "row must start and end with '|'".to_string(),
                },
            )
        })?;
        if table.columns.is_empty() {
            for (i, cell) in cells.iter().enumerate() {
                if cell.is_empty() {
                    return Err(err(
                        line,
                        column,
                        SyntaxErrorKind::MalformedTableRow {
                            reason: format!("header cell {} is empty", i + 1),
                        },
                    ));
                }
                if cells[..i].contains(cell) {
                    return Err(err(
                        line,
                        column,
                        SyntaxErrorKind::DuplicateColumn { name: cell.clone() },
                    ));
                }
            }
            table.columns = cells;
        } else {
            if cells.len() != table.columns.len() {
                return Err(err(
                    line,
                    column,
                    SyntaxErrorKind::MalformedTableRow {
                        reason: format!(
                            "expected {} cells, found {}",
                            table.columns.len(),
                            cells.len()
                        ),
                    },
                ));
            }
            table.rows.push(cells);
        }
        Ok(())
    }

    fn finalize_current(&mut self) -> Result<(), SyntaxError> {
        let Some(current) = self.current.take() else {
            return Ok(());
        };
        let (line, column) = (current.header_line, current.header_column);
        if current.steps.is_empty() {
            return Err(err(line, column, SyntaxErrorKind::NoSteps));
        }
        for (class, noun) in [
            (ResolvedKeyword::When, "When"),
            (ResolvedKeyword::Then, "Then"),
        ] {
            if !current.steps.iter().any(|s| s.resolved == class) {
                return Err(err(
                    line,
                    column,
                    SyntaxErrorKind::StepOrder {
                        message: format!("scenario has no {noun} step"),
                    },
                ));
            }
        }
        let examples = match (current.kind, current.examples) {
            (ScenarioKind::Plain, _) => None,
            (ScenarioKind::Outline, None) => {
                return Err(err(line, column, SyntaxErrorKind::OutlineWithoutExamples));
            }
            (ScenarioKind::Outline, Some(table)) => {
                if table.columns.is_empty() || table.rows.is_empty() {
                    return Err(err(
                        table.marker_line,
                        table.marker_column,
                        SyntaxErrorKind::EmptyExamples,
                    ));
                }
                let examples = ExamplesTable {
                    columns: table.columns,
                    rows: table.rows,
                };
                for (step, text_column) in current.steps.iter().zip(&current.step_text_columns) {
                    for (offset, name) in placeholders(&step.text) {
                        if examples.column_index(name).is_none() {
                            return Err(err(
                                step.line,
                                text_column + step.text[..offset].chars().count(),
                                SyntaxErrorKind::PlaceholderUnknown {
                                    name: name.to_string(),
                                },
                            ));
                        }
                    }
                }
                Some(examples)
            }
        };
        self.scenarios.push(ScenarioNode {
            name: current.name,
            kind: current.kind,
            steps: current.steps,
            examples,
        });
        Ok(())
    }

    fn finish(mut self) -> Result<FeatureAst, SyntaxError> {
        self.finalize_current()?;
        let Some(name) = self.feature_name else {
            return Err(err(1, 1, SyntaxErrorKind::MissingFeature));
        };
        let description = if self.description.is_empty() {
            None
        } else {
            Some(self.description.join("\n"))
        };
        Ok(FeatureAst {
            name,
            description,
            scenarios: self.scenarios,
        })
    }
}

fn class_rank(class: ResolvedKeyword) -> u8 {
    match class {
        ResolvedKeyword::Given => 0,
        ResolvedKeyword::When => 1,
        ResolvedKeyword::Then => 2,
    }
}

fn first_word(content: &str) -> String {
    content
        .split_whitespace()
        .next()
        .unwrap_or(content)
        .to_string()
}

fn split_step_keyword(content: &str) -> Option<(StepKeyword, &str)> {
    const KEYWORDS: [(StepKeyword, &str); 5] = [
        (StepKeyword::Given, "Given"),
        (StepKeyword::When, "When"),
        (StepKeyword::Then, "Then"),
        (StepKeyword::And, "And"),
        (StepKeyword::But, "But"),
    ];
    for (keyword, word) in KEYWORDS {
        if let Some(rest) = content.strip_prefix(word) {
            if rest.is_empty() {
                return Some((keyword, rest));
            }
            if rest.starts_with(char::is_whitespace) {
                return Some((keyword, rest.trim()));
            }
        }
    }
    None
}

/// Split a `| a | b |` row into trimmed cells; `None` when the row is not
/// pipe-terminated.
fn split_table_row(content: &str) -> Option<Vec<String>> {
    let inner = content.strip_prefix('|')?.strip_suffix('|')?;
    Some(
        inner
            .split('|')
            .map(|cell| cell.trim().to_string())
            .collect(),
    )
}

/// Yield `(byte offset, name)` for each well-formed `<name>` placeholder,
/// where a name is `[A-Za-z_][A-Za-z0-9_]*`. Malformed brackets are treated
/// as plain text.
pub(crate) fn placeholders(text: &str) -> Vec<(usize, &str)> {
    let bytes = text.as_bytes();
    let mut found = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != b'<' {
            i += 1;
            continue;
        }
        let start = i + 1;
        let mut j = start;
        while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
            j += 1;
        }
        let valid_name = j > start && (bytes[start].is_ascii_alphabetic() || bytes[start] == b'_');
        if valid_name && j < bytes.len() && bytes[j] == b'>' {
            found.push((i, &text[start..j]));
            i = j + 1;
        } else {
            i += 1;
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    const USER_LOGIN: &str = "\
Feature: User Login

  Scenario: Successful login with valid credentials
    Given the user is on the login page
    When the user enters valid credentials
    Then the user should see the dashboard
";

    #[test]
    fn parses_a_plain_feature() {
        let ast = parse_feature(USER_LOGIN).unwrap();
        assert_eq!(ast.name, "User Login");
        assert_eq!(ast.description, None);
        assert_eq!(ast.scenarios.len(), 1);
        let scenario = &ast.scenarios[0];
        assert_eq!(scenario.name, "Successful login with valid credentials");
        assert_eq!(scenario.kind, ScenarioKind::Plain);
        assert_eq!(scenario.steps.len(), 3);
        let kinds: Vec<ResolvedKeyword> = scenario.steps.iter().map(|s| s.resolved).collect();
        assert_eq!(
            kinds,
            vec![
                ResolvedKeyword::Given,
                ResolvedKeyword::When,
                ResolvedKeyword::Then
            ]
        );
        assert_eq!(scenario.steps[0].line, 4);
    }

    #[test]
    fn empty_input_is_missing_feature() {
        let e = parse_feature("").unwrap_err();
        assert_eq!(e.kind, SyntaxErrorKind::MissingFeature);
        let e = parse_feature("# only a comment\n\n").unwrap_err();
        assert_eq!(e.kind, SyntaxErrorKind::MissingFeature);
    }

    #[test]
    fn parses_an_outline_with_examples() {
        let src = "\
Feature: ALU ADD

  Scenario Outline: ADD behaves per specification
    Given the operands are A = <A> and B = <B>
    When the operation ADD is performed
    Then the result should be <result>
    And the carry flag should be <carry>
    And the zero flag should be <zero>
    And the overflow flag should be <overflow>

    Examples:
      | A      | B      | result | carry | zero | overflow |
      | 0x0005 | 0x0005 | 0x000A | 0     | 0    | 0        |
      | 0xFFFF | 0x0001 | 0x0000 | 1     | 1    | 0        |
      | 0x7FFF | 0x7FFF | 0xFFFE | 0     | 0    | 1        |
";
        let ast = parse_feature(src).unwrap();
        assert_eq!(ast.scenarios.len(), 1);
        let scenario = &ast.scenarios[0];
        assert_eq!(scenario.kind, ScenarioKind::Outline);
        let table = scenario.examples.as_ref().unwrap();
        assert_eq!(
            table.columns,
            vec!["A", "B", "result", "carry", "zero", "overflow"]
        );
        assert_eq!(table.rows.len(), 3);
        assert_eq!(table.rows[1][0], "0xFFFF");
    }

    #[test]
    fn crlf_and_comments_are_accepted() {
        let src = "Feature: X\r\n# comment\r\n  Scenario: s\r\n    Given a\r\n    When b\r\n    Then c\r\n";
        let ast = parse_feature(src).unwrap();
        assert_eq!(ast.scenarios[0].steps.len(), 3);
    }

    #[test]
    fn description_lines_are_collected() {
        let src = "\
Feature: X
  Covers the arithmetic datapath.
  Two lines of prose.

  Scenario: s
    Given a
    When b
    Then c
";
        let ast = parse_feature(src).unwrap();
        assert_eq!(
            ast.description.as_deref(),
            Some("Covers the arithmetic datapath.\nTwo lines of prose.")
        );
    }

    #[test]
    fn and_but_attach_to_previous_class() {
        let src = "\
Feature: X
  Scenario: s
    Given a
    And b
    When c
    But d
    Then e
    And f
";
        let ast = parse_feature(src).unwrap();
        let kinds: Vec<ResolvedKeyword> =
            ast.scenarios[0].steps.iter().map(|s| s.resolved).collect();
        use ResolvedKeyword::*;
        assert_eq!(kinds, vec![Given, Given, When, When, Then, Then]);
    }

    #[test]
    fn when_first_scenario_is_legal() {
        let src = "Feature: X\n  Scenario: s\n    When a\n    Then b\n";
        assert!(parse_feature(src).is_ok());
    }

    #[test]
    fn leading_and_is_an_error() {
        let src = "Feature: X\n  Scenario: s\n    And a\n";
        let e = parse_feature(src).unwrap_err();
        assert_eq!(e.kind, SyntaxErrorKind::LeadingAndBut);
        assert_eq!((e.line, e.column), (3, 5));
    }

    #[test]
    fn step_order_is_enforced() {
        let given_after_when = "Feature: X\n  Scenario: s\n    When a\n    Given b\n    Then c\n";
        assert!(matches!(
            parse_feature(given_after_when).unwrap_err().kind,
            SyntaxErrorKind::StepOrder { .. }
        ));
        let then_first = "Feature: X\n  Scenario: s\n    Then a\n";
        assert!(matches!(
            parse_feature(then_first).unwrap_err().kind,
            SyntaxErrorKind::StepOrder { .. }
        ));
        let no_then = "Feature: X\n  Scenario: s\n    Given a\n    When b\n";
        assert!(matches!(
            parse_feature(no_then).unwrap_err().kind,
            SyntaxErrorKind::StepOrder { .. }
        ));
        let no_when = "Feature: X\n  Scenario: s\n    Given a\n    Then b\n";
        assert!(matches!(
            parse_feature(no_when).unwrap_err().kind,
            SyntaxErrorKind::StepOrder { .. }
        ));
    }

    #[test]
    fn step_outside_scenario() {
        let before_scenario = "Feature: X\n  Given a\n";
        let e = parse_feature(before_scenario).unwrap_err();
        assert_eq!(e.kind, SyntaxErrorKind::StepOutsideScenario);
        let before_feature = "Given a\n";
        let e = parse_feature(before_feature).unwrap_err();
        assert_eq!(e.kind, SyntaxErrorKind::StepOutsideScenario);
    }

    #[test]
    fn outline_requires_examples() {
        let src = "Feature: X\n  Scenario Outline: s\n    Given a\n    When b\n    Then c\n";
        let e = parse_feature(src).unwrap_err();
        assert_eq!(e.kind, SyntaxErrorKind::OutlineWithoutExamples);
    }

    #[test]
    fn examples_in_plain_scenario_is_an_error() {
        let src = "Feature: X\n  Scenario: s\n    Given a\n    When b\n    Then c\n    Examples:\n      | A |\n      | 1 |\n";
        let e = parse_feature(src).unwrap_err();
        assert_eq!(e.kind, SyntaxErrorKind::ExamplesOutsideOutline);
    }

    #[test]
    fn table_shape_is_checked() {
        let ragged = "Feature: X\n  Scenario Outline: s\n    Given a <A>\n    When b\n    Then c\n    Examples:\n      | A | B |\n      | 1 |\n";
        assert!(matches!(
            parse_feature(ragged).unwrap_err().kind,
            SyntaxErrorKind::MalformedTableRow { .. }
        ));
        let unterminated = "Feature: X\n  Scenario Outline: s\n    Given a <A>\n    When b\n    Then c\n    Examples:\n      | A\n";
        assert!(matches!(
            parse_feature(unterminated).unwrap_err().kind,
            SyntaxErrorKind::MalformedTableRow { .. }
        ));
        let dup = "Feature: X\n  Scenario Outline: s\n    Given a <A>\n    When b\n    Then c\n    Examples:\n      | A | A |\n      | 1 | 2 |\n";
        assert!(matches!(
            parse_feature(dup).unwrap_err().kind,
            SyntaxErrorKind::DuplicateColumn { .. }
        ));
        let empty = "Feature: X\n  Scenario Outline: s\n    Given a <A>\n    When b\n    Then c\n    Examples:\n      | A |\n";
        assert_eq!(
            parse_feature(empty).unwrap_err().kind,
            SyntaxErrorKind::EmptyExamples
        );
    }

    #[test]
    fn unknown_placeholder_is_reported_with_position() {
        let src = "Feature: X\n  Scenario Outline: s\n    Given value <missing>\n    When b\n    Then c\n    Examples:\n      | A |\n      | 1 |\n";
        let e = parse_feature(src).unwrap_err();
        assert_eq!(
            e.kind,
            SyntaxErrorKind::PlaceholderUnknown {
                name: "missing".to_string()
            }
        );
        assert_eq!(e.line, 3);
        assert_eq!(e.column, 17);
    }

    #[test]
    fn duplicate_scenario_names_are_rejected() {
        let src = "Feature: X\n  Scenario: s\n    Given a\n    When b\n    Then c\n  Scenario: s\n    Given a\n    When b\n    Then c\n";
        assert!(matches!(
            parse_feature(src).unwrap_err().kind,
            SyntaxErrorKind::DuplicateScenario { .. }
        ));
    }

    #[test]
    fn unsupported_constructs_are_unknown_keywords() {
        for src in [
            "Feature: X\n@tag\n  Scenario: s\n    Given a\n    When b\n    Then c\n",
            "Feature: X\n  Background:\n",
            "Feature: X\n  Scenario: s\n    Given a\n    free text here\n",
        ] {
            assert!(matches!(
                parse_feature(src).unwrap_err().kind,
                SyntaxErrorKind::UnknownKeyword { .. }
            ));
        }
    }

    #[test]
    fn feature_with_no_scenarios_parses() {
        let ast = parse_feature("Feature: Empty\n").unwrap();
        assert!(ast.scenarios.is_empty());
    }

    #[test]
    fn placeholder_scanner_finds_well_formed_names_only() {
        assert_eq!(
            placeholders("A = <A> and B = <B>"),
            vec![(4, "A"), (16, "B")]
        );
        assert_eq!(
            placeholders("<_x1> mid <2bad> <ok> <un closed"),
            vec![(0, "_x1"), (17, "ok")]
        );
        assert!(placeholders("no markers").is_empty());
        assert!(placeholders("<>").is_empty());
    }
}
