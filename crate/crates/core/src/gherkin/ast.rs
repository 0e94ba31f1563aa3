use std::fmt;

/// A parsed feature file: header, optional free-text description, and the
/// scenarios in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureAst {
    pub name: String,
    pub description: Option<String>,
    pub scenarios: Vec<ScenarioNode>,
}

impl FeatureAst {
    /// Structural equality ignoring source line numbers.
    ///
    /// The canonical printer relocates constructs, so a parse → print →
    /// parse round trip preserves everything except step positions.
    pub fn structural_eq(&self, other: &FeatureAst) -> bool {
        self.name == other.name
            && self.description == other.description
            && self.scenarios.len() == other.scenarios.len()
            && self
                .scenarios
                .iter()
                .zip(&other.scenarios)
                .all(|(a, b)| a.structural_eq(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Plain,
    Outline,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioNode {
    pub name: String,
    pub kind: ScenarioKind,
    pub steps: Vec<Step>,
    /// Present exactly when `kind` is [`ScenarioKind::Outline`].
    pub examples: Option<ExamplesTable>,
}

impl ScenarioNode {
    pub fn structural_eq(&self, other: &ScenarioNode) -> bool {
        self.name == other.name
            && self.kind == other.kind
            && self.examples == other.examples
            && self.steps.len() == other.steps.len()
            && self
                .steps
                .iter()
                .zip(&other.steps)
                .all(|(a, b)| a.structural_eq(b))
    }
}

/// Step keyword as written in the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKeyword {
    Given,
    When,
    Then,
    And,
    But,
}

impl StepKeyword {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKeyword::Given => "Given",
            StepKeyword::When => "When",
            StepKeyword::Then => "Then",
            StepKeyword::And => "And",
            StepKeyword::But => "But",
        }
    }
}

impl fmt::Display for StepKeyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Step class after `And`/`But` have been attached to the preceding keyword.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolvedKeyword {
    Given,
    When,
    Then,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub keyword: StepKeyword,
    /// Raw phrase after the keyword, trimmed.
    pub text: String,
    pub resolved: ResolvedKeyword,
    /// 1-based source line; 0 for synthesized steps.
    pub line: usize,
}

impl Step {
    pub fn structural_eq(&self, other: &Step) -> bool {
        self.keyword == other.keyword && self.text == other.text && self.resolved == other.resolved
    }
}

/// Examples table of a scenario outline: header columns plus data rows of
/// equal length. Cells are raw trimmed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExamplesTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ExamplesTable {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}
