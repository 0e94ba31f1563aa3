//! Parser, canonical printer, and outline expansion for a hardware-oriented
//! subset of the Gherkin language.
//!
//! Supported constructs: `Feature:`, `Scenario:`, `Scenario Outline:`,
//! `Given`/`When`/`Then`/`And`/`But` steps, `Examples:` tables, and `#`
//! comments. `And`/`But` resolve to the class of the nearest preceding
//! primary keyword; step classes must appear in `Given* When+ Then+` order.
//! Placeholders in outline steps use `<name>` syntax and must name a column
//! of the examples table.
//!
//! Line endings may be LF or CRLF on input; the printer always emits LF and
//! produces a canonical layout that re-parses to an equivalent tree.

mod ast;
mod expand;
mod parse;
mod print;

pub use ast::{
    ExamplesTable, FeatureAst, ResolvedKeyword, ScenarioKind, ScenarioNode, Step, StepKeyword,
};
pub use expand::expand_outlines;
pub use parse::{parse_feature, SyntaxError, SyntaxErrorKind};
pub use print::print_feature;
