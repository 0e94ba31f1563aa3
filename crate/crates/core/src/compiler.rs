//! Binding of step phrases to concrete stimulus and expectations.
//!
//! Scenarios speak a small closed phrase grammar (documented in the README
//! as the user-facing contract). Binding is strict: a step that matches no
//! pattern is a hard error, never a silently skipped "pending" step.

use std::fmt;

use thiserror::Error;

use crate::alu::{AluOp, AluVector, Flag, Width};
use crate::gherkin::{expand_outlines, FeatureAst, ResolvedKeyword, ScenarioKind, ScenarioNode};

/// Expected outputs for one test case. Absent fields are unchecked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExpectationSet {
    pub result: Option<u64>,
    pub carry: Option<bool>,
    pub zero: Option<bool>,
    pub overflow: Option<bool>,
    pub negative: Option<bool>,
}

impl ExpectationSet {
    pub fn flag(&self, flag: Flag) -> Option<bool> {
        match flag {
            Flag::Carry => self.carry,
            Flag::Zero => self.zero,
            Flag::Overflow => self.overflow,
            Flag::Negative => self.negative,
        }
    }

    fn flag_mut(&mut self, flag: Flag) -> &mut Option<bool> {
        match flag {
            Flag::Carry => &mut self.carry,
            Flag::Zero => &mut self.zero,
            Flag::Overflow => &mut self.overflow,
            Flag::Negative => &mut self.negative,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.result.is_none() && Flag::ALL.iter().all(|&f| self.flag(f).is_none())
    }
}

/// Names one checkable output field of a test case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectField {
    Result,
    Flag(Flag),
}

impl fmt::Display for ExpectField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Result => f.write_str("result"),
            Self::Flag(flag) => write!(f, "{flag}"),
        }
    }
}

/// One compiled scenario: stimulus for the model plus what to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCase {
    pub name: String,
    pub stimulus: AluVector,
    pub expect: ExpectationSet,
    /// Source lines of the steps (0 for steps synthesized by expansion).
    pub source_lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("value '{cell}' is out of range for width {width}")]
    Range { cell: String, width: u32 },
    #[error("'{cell}' is not a numeric literal")]
    Format { cell: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("unknown step at line {line}: \"{phrase}\"")]
    UnknownStep { phrase: String, line: usize },
    #[error("missing {what} step")]
    MissingStimulus { what: &'static str },
    #[error("duplicate {what} at line {line}")]
    DuplicateBinding { what: String, line: usize },
    #[error("line {line}: {source}")]
    Literal { source: LiteralError, line: usize },
}

/// Every scenario that failed to bind, with its name. Compilation visits
/// all scenarios before reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompileErrors {
    pub errors: Vec<(String, CompileError)>,
}

impl fmt::Display for CompileErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (scenario, error)) in self.errors.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "scenario '{scenario}': {error}")?;
        }
        Ok(())
    }
}

impl std::error::Error for CompileErrors {}

/// Parse a numeric cell: decimal (optionally negative), `0x` hex, or `0b`
/// binary. Negative decimals map onto two's complement at the given width.
pub fn parse_int_literal(cell: &str, width: Width) -> Result<u64, LiteralError> {
    let text = cell.trim();
    let format_err = || LiteralError::Format {
        cell: text.to_string(),
    };
    let range_err = || LiteralError::Range {
        cell: text.to_string(),
        width: width.bits(),
    };
    let modulus = 1u128 << width.bits();

    if let Some(digits) = text.strip_prefix('-') {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format_err());
        }
        let magnitude: u128 = digits.parse().map_err(|_| range_err())?;
        // Require -2^(width-1) <= d < 0, then map to d + 2^width.
        if magnitude == 0 || magnitude > modulus / 2 {
            return Err(range_err());
        }
        return Ok((modulus - magnitude) as u64);
    }

    let (radix, digits) = match text.get(..2) {
        Some("0x") | Some("0X") => (16, &text[2..]),
        Some("0b") | Some("0B") => (2, &text[2..]),
        _ => (10, text),
    };
    if digits.is_empty() {
        return Err(format_err());
    }
    let value = u128::from_str_radix(digits, radix).map_err(|e| {
        use std::num::IntErrorKind;
        if *e.kind() == IntErrorKind::PosOverflow {
            range_err()
        } else {
            format_err()
        }
    })?;
    if value >= modulus {
        return Err(range_err());
    }
    Ok(value as u64)
}

/// A step phrase matched against the grammar, with numeric tokens kept raw
/// (they may still be `<placeholder>` text in an unexpanded outline).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum StepBinding {
    Reset,
    Operands { a: String, b: String },
    Operation { name: String },
    ExpectResult { literal: String },
    ExpectFlag { flag: Flag, value: String },
}

/// Match one step against the phrase grammar for its resolved class.
/// Keywords compare case-insensitively and runs of whitespace collapse;
/// `=` is a token of its own, so `A=5` and `A = 5` read the same.
pub(crate) fn classify_step(resolved: ResolvedKeyword, text: &str) -> Option<StepBinding> {
    let tokens = tokenize(text);
    let kw = |i: usize, word: &str| tokens[i].eq_ignore_ascii_case(word);
    match resolved {
        ResolvedKeyword::Given => match tokens.len() {
            4 if kw(0, "the") && kw(1, "ALU") && kw(2, "is") && kw(3, "reset") => {
                Some(StepBinding::Reset)
            }
            10 if kw(0, "the")
                && kw(1, "operands")
                && kw(2, "are")
                && kw(3, "A")
                && tokens[4] == "="
                && kw(6, "and")
                && kw(7, "B")
                && tokens[8] == "=" =>
            {
                Some(StepBinding::Operands {
                    a: tokens[5].clone(),
                    b: tokens[9].clone(),
                })
            }
            _ => None,
        },
        ResolvedKeyword::When => match tokens.len() {
            5 if kw(0, "the") && kw(1, "operation") && kw(3, "is") && kw(4, "performed") => {
                Some(StepBinding::Operation {
                    name: tokens[2].clone(),
                })
            }
            4 if kw(0, "the") && kw(1, "operation") && kw(2, "is") => {
                Some(StepBinding::Operation {
                    name: tokens[3].clone(),
                })
            }
            _ => None,
        },
        ResolvedKeyword::Then => match tokens.len() {
            5 if kw(0, "the") && kw(1, "result") && kw(2, "should") && kw(3, "be") => {
                Some(StepBinding::ExpectResult {
                    literal: tokens[4].clone(),
                })
            }
            6 if kw(0, "the") && kw(2, "flag") && kw(3, "should") && kw(4, "be") => {
                let flag = Flag::from_name(&tokens[1])?;
                Some(StepBinding::ExpectFlag {
                    flag,
                    value: tokens[5].clone(),
                })
            }
            _ => None,
        },
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        let mut rest = word;
        while let Some(pos) = rest.find('=') {
            if pos > 0 {
                tokens.push(rest[..pos].to_string());
            }
            tokens.push("=".to_string());
            rest = &rest[pos + 1..];
        }
        if !rest.is_empty() {
            tokens.push(rest.to_string());
        }
    }
    tokens
}

/// Bind a Plain scenario to a [`TestCase`]. Outlines must be expanded
/// first; passing one is a caller bug.
pub fn bind_scenario(scenario: &ScenarioNode, width: Width) -> Result<TestCase, CompileError> {
    assert_eq!(
        scenario.kind,
        ScenarioKind::Plain,
        "bind_scenario requires expanded scenarios"
    );
    let mut operands: Option<(u64, u64)> = None;
    let mut operation: Option<AluOp> = None;
    let mut expect = ExpectationSet::default();

    for step in &scenario.steps {
        let line = step.line;
        let unknown = || CompileError::UnknownStep {
            phrase: step.text.clone(),
            line,
        };
        let binding = classify_step(step.resolved, &step.text).ok_or_else(&unknown)?;
        let literal = |cell: &str| {
            parse_int_literal(cell, width).map_err(|source| CompileError::Literal { source, line })
        };
        match binding {
            StepBinding::Reset => {}
            StepBinding::Operands { a, b } => {
                if operands.is_some() {
                    return Err(CompileError::DuplicateBinding {
                        what: "operands binding".to_string(),
                        line,
                    });
                }
                operands = Some((literal(&a)?, literal(&b)?));
            }
            StepBinding::Operation { name } => {
                if operation.is_some() {
                    return Err(CompileError::DuplicateBinding {
                        what: "operation binding".to_string(),
                        line,
                    });
                }
                operation = Some(AluOp::from_name(&name).ok_or_else(&unknown)?);
            }
            StepBinding::ExpectResult { literal: cell } => {
                if expect.result.is_some() {
                    return Err(CompileError::DuplicateBinding {
                        what: "result expectation".to_string(),
                        line,
                    });
                }
                expect.result = Some(literal(&cell)?);
            }
            StepBinding::ExpectFlag { flag, value } => {
                let slot = expect.flag_mut(flag);
                if slot.is_some() {
                    return Err(CompileError::DuplicateBinding {
                        what: format!("{flag} flag expectation"),
                        line,
                    });
                }
                *slot = Some(match value.as_str() {
                    "0" => false,
                    "1" => true,
                    _ => return Err(unknown()),
                });
            }
        }
    }

    let Some((a, b)) = operands else {
        return Err(CompileError::MissingStimulus { what: "operands" });
    };
    let Some(op) = operation else {
        return Err(CompileError::MissingStimulus { what: "operation" });
    };
    let stimulus = AluVector::new(op, a, b, width).expect("literals are range-checked");
    debug_assert!(!expect.is_empty(), "step ordering guarantees a Then step");
    Ok(TestCase {
        name: scenario.name.clone(),
        stimulus,
        expect,
        source_lines: scenario.steps.iter().map(|s| s.line).collect(),
    })
}

/// Expand outlines, then bind every scenario in order. All binding errors
/// are collected (with their scenario names) rather than stopping at the
/// first failure.
pub fn compile_feature(ast: &FeatureAst, width: Width) -> Result<Vec<TestCase>, CompileErrors> {
    let expanded = expand_outlines(ast);
    let mut cases = Vec::new();
    let mut errors = Vec::new();
    for scenario in &expanded.scenarios {
        match bind_scenario(scenario, width) {
            Ok(case) => cases.push(case),
            Err(error) => errors.push((scenario.name.clone(), error)),
        }
    }
    if errors.is_empty() {
        Ok(cases)
    } else {
        Err(CompileErrors { errors })
    }
}
