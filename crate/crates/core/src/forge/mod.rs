//! Hybrid scenario generation: a prompt mini-language, a deterministic
//! local template engine, and an optional remote provider. Whatever the
//! source, every generated expectation is checked against (or filled in
//! from) the golden model, so generation can never disagree with it.

mod prompt;
mod provider;
mod rng;
mod solve;
mod template;
mod validate;

use std::fmt;

use thiserror::Error;

use crate::alu::{AluOp, Flag};
use crate::compiler::ExpectField;

pub use prompt::parse_prompt;
pub use provider::{
    generate_with_provider, GenerationProvider, HttpProvider, ProviderRequest, StubProvider,
    ENDPOINT_ENV, KEY_ENV, STEP_GRAMMAR_REFERENCE,
};
pub use rng::SplitMix64;
pub use solve::solve_constraints;
pub use template::generate_with_templates;
pub use validate::validate_against_oracle;

/// A parsed generation prompt: which operation, under which constraints,
/// how many example rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptSpec {
    pub op: AluOp,
    pub constraints: Vec<Constraint>,
    pub count: u32,
}

impl PromptSpec {
    /// Canonical prompt text; parsing it back yields an equal spec.
    pub fn render(&self) -> String {
        let mut out = format!("Create {} scenario", self.op);
        for (i, constraint) in self.constraints.iter().enumerate() {
            out.push_str(if i == 0 { " with " } else { ", " });
            out.push_str(&constraint.to_string());
        }
        let noun = if self.count == 1 {
            "example"
        } else {
            "examples"
        };
        out.push_str(&format!(", {} {noun}.", self.count));
        out
    }
}

/// One operand constraint from a prompt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// `A = B`
    EqualOperands,
    /// `A = <literal>`
    FixedA(u64),
    /// `B = <literal>`
    FixedB(u64),
    /// `carry` / `no carry` / `overflow` / `no overflow` / `zero`
    FlagGoal { flag: Flag, bit: bool },
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EqualOperands => f.write_str("A = B"),
            Self::FixedA(value) => write!(f, "A = {value}"),
            Self::FixedB(value) => write!(f, "B = {value}"),
            Self::FlagGoal { flag, bit: true } => write!(f, "{flag}"),
            Self::FlagGoal { flag, bit: false } => write!(f, "no {flag}"),
        }
    }
}

/// Where a feature came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProviderKind {
    Template,
    Remote,
}

impl fmt::Display for ProviderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Template => "template",
            Self::Remote => "remote",
        })
    }
}

/// What to do when provider output disagrees with the golden model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerationMode {
    Strict,
    Repair,
}

/// Audit trail for one generation call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationRecord {
    pub prompt_text: String,
    /// Seed used for sampling; 0 on the remote path, which draws nothing.
    pub seed: u64,
    pub provider: ProviderKind,
    /// Expectation cells rewritten to oracle values (always 0 for Template).
    pub corrections: u32,
    pub feature_text: String,
}

/// Outcome of checking a feature's expectations against the golden model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub total_rows: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// One expectation that disagrees with the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub scenario: String,
    /// Index of the test case within the compiled feature, 0-based.
    pub row_index: usize,
    pub field: ExpectField,
    /// The value the feature asserted (flags as 0/1).
    pub found: u64,
    /// The value the model computes.
    pub oracle: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "scenario '{}' row {}: {} is {:#x}, model says {:#x}",
            self.scenario, self.row_index, self.field, self.found, self.oracle
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PromptError {
    #[error("prompt syntax error at '{token}'{}", hint_suffix(.hint))]
    Syntax { token: String, hint: &'static str },
    #[error("unknown operation '{name}' (expected ADD, SUB, AND, OR, XOR, NOT, SHL, or SHR)")]
    UnknownOperation { name: String },
}

fn hint_suffix(hint: &str) -> String {
    if hint.is_empty() {
        String::new()
    } else {
        format!(" ({hint})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProviderError {
    #[error("provider transport failure: {message}")]
    Transport { message: String },
    #[error("provider configuration error: {message}")]
    Config { message: String },
    #[error("malformed provider response: {message}")]
    BadResponse { message: String },
}

#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("constraints are unsatisfiable: {reason}")]
    Unsatisfiable { reason: String },
    #[error(transparent)]
    Provider(#[from] ProviderError),
    /// Provider text that does not parse or compile; the text is kept for
    /// audit.
    #[error("provider output is not a usable feature: {message}")]
    NonParseableOutput {
        message: String,
        provider_text: String,
    },
    /// Strict-mode validation failure.
    #[error("generated expectations disagree with the model:\n{}", render_mismatches(.report))]
    OracleMismatch { report: ValidationReport },
}

fn render_mismatches(report: &ValidationReport) -> String {
    report
        .mismatches
        .iter()
        .map(Mismatch::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

/// Canonical cell text for a word: zero-padded uppercase hex.
pub(crate) fn hex_cell(value: u64, width: crate::alu::Width) -> String {
    format!("0x{value:0digits$X}", digits = width.hex_digits())
}

pub(crate) fn bit_cell(bit: bool) -> &'static str {
    if bit {
        "1"
    } else {
        "0"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prompt_render_round_trips() {
        let spec = PromptSpec {
            op: AluOp::Add,
            constraints: vec![Constraint::EqualOperands],
            count: 3,
        };
        assert_eq!(spec.render(), "Create ADD scenario with A = B, 3 examples.");
        assert_eq!(parse_prompt(&spec.render()).unwrap(), spec);

        let spec = PromptSpec {
            op: AluOp::Sub,
            constraints: vec![
                Constraint::FixedA(7),
                Constraint::FlagGoal {
                    flag: Flag::Zero,
                    bit: true,
                },
            ],
            count: 1,
        };
        assert_eq!(
            spec.render(),
            "Create SUB scenario with A = 7, zero, 1 example."
        );
        assert_eq!(parse_prompt(&spec.render()).unwrap(), spec);

        let spec = PromptSpec {
            op: AluOp::Or,
            constraints: vec![Constraint::FlagGoal {
                flag: Flag::Carry,
                bit: false,
            }],
            count: 2,
        };
        assert_eq!(
            spec.render(),
            "Create OR scenario with no carry, 2 examples."
        );
        assert_eq!(parse_prompt(&spec.render()).unwrap(), spec);
    }
}
