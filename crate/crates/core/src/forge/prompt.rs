use crate::alu::{AluOp, Flag, Width};
use crate::compiler::parse_int_literal;

use super::{Constraint, PromptError, PromptSpec};

/// Parse the prompt mini-language:
///
/// ```text
/// Create <OP> scenario [with <constraint> {, <constraint>}], <N> example[s].
/// ```
///
/// Keywords are case-insensitive; the trailing period is optional.
/// Constraints: `A = B`, `A = <literal>`, `B = <literal>`, `carry`,
/// `no carry`, `overflow`, `no overflow`, `zero`.
pub fn parse_prompt(text: &str) -> Result<PromptSpec, PromptError> {
    let text = text.trim();
    let text = text.strip_suffix('.').unwrap_or(text);
    let segments: Vec<&str> = text.split(',').map(str::trim).collect();
    if segments.len() < 2 {
        return Err(PromptError::Syntax {
            token: text.to_string(),
            hint: "expected ', <N> examples' at the end",
        });
    }

    let head: Vec<&str> = segments[0].split_whitespace().collect();
    if head.len() < 3
        || !head[0].eq_ignore_ascii_case("create")
        || !head[2].eq_ignore_ascii_case("scenario")
    {
        return Err(PromptError::Syntax {
            token: segments[0].to_string(),
            hint: "expected 'Create <OP> scenario'",
        });
    }
    let op = AluOp::from_name(head[1]).ok_or_else(|| PromptError::UnknownOperation {
        name: head[1].to_string(),
    })?;

    let mut constraints = Vec::new();
    if head.len() > 3 {
        if !head[3].eq_ignore_ascii_case("with") || head.len() == 4 {
            return Err(PromptError::Syntax {
                token: head[3].to_string(),
                hint: "expected 'with <constraint>'",
            });
        }
        constraints.push(parse_constraint(&head[4..].join(" "))?);
    }
    for segment in &segments[1..segments.len() - 1] {
        constraints.push(parse_constraint(segment)?);
    }

    let tail: Vec<&str> = segments[segments.len() - 1].split_whitespace().collect();
    let count_ok = tail.len() == 2
        && (tail[1].eq_ignore_ascii_case("example") || tail[1].eq_ignore_ascii_case("examples"));
    if !count_ok {
        return Err(PromptError::Syntax {
            token: segments[segments.len() - 1].to_string(),
            hint: "expected '<N> examples'",
        });
    }
    let count: u32 = tail[0].parse().map_err(|_| PromptError::Syntax {
        token: tail[0].to_string(),
        hint: "expected a positive example count",
    })?;
    if count == 0 {
        return Err(PromptError::Syntax {
            token: tail[0].to_string(),
            hint: "example count must be at least 1",
        });
    }

    Ok(PromptSpec {
        op,
        constraints,
        count,
    })
}

fn parse_constraint(text: &str) -> Result<Constraint, PromptError> {
    let tokens = tokenize(text);
    let words: Vec<&str> = tokens.iter().map(String::as_str).collect();
    let syntax = |hint: &'static str| PromptError::Syntax {
        token: text.to_string(),
        hint,
    };

    match words.as_slice() {
        [a, "=", b] if a.eq_ignore_ascii_case("a") && b.eq_ignore_ascii_case("b") => {
            Ok(Constraint::EqualOperands)
        }
        [side, "=", literal]
            if side.eq_ignore_ascii_case("a") || side.eq_ignore_ascii_case("b") =>
        {
            if literal.starts_with('-') {
                return Err(syntax("operand constraints take non-negative literals"));
            }
            // Width is unknown here; range against the largest width and
            // let the solver enforce the real one.
            let value = parse_int_literal(literal, Width::new(Width::MAX_BITS).unwrap())
                .map_err(|_| syntax("expected a numeric literal"))?;
            if side.eq_ignore_ascii_case("a") {
                Ok(Constraint::FixedA(value))
            } else {
                Ok(Constraint::FixedB(value))
            }
        }
        [flag] => flag_goal(flag, true).ok_or_else(|| syntax("unknown constraint")),
        ["no", flag] => flag_goal(flag, false).ok_or_else(|| syntax("unknown constraint")),
        _ => Err(syntax("unknown constraint")),
    }
}

/// Flag goals cover carry, zero, and overflow; `zero` only in the
/// affirmative, per the grammar.
fn flag_goal(word: &str, bit: bool) -> Option<Constraint> {
    let flag = Flag::from_name(word)?;
    match (flag, bit) {
        (Flag::Carry | Flag::Overflow, _) | (Flag::Zero, true) => {
            Some(Constraint::FlagGoal { flag, bit })
        }
        _ => None,
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
