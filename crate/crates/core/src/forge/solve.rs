use crate::alu::{signed_view, AluOp, AluVector, Flag, Width};

use super::rng::SplitMix64;
use super::{Constraint, ForgeError, PromptSpec};

/// Draws per row before giving up on sampling and trying construction.
const REJECTION_CAP: u32 = 10_000;

/// Produce `spec.count` operand pairs, each satisfying every constraint
/// under the golden-model semantics. Sampling is seeded and deterministic;
/// when rejection sampling cannot hit a goal (subtraction to zero, forced
/// carry or overflow, and similar needle-in-haystack conditions), known
/// constructions are tried, and every candidate is re-checked against all
/// constraints before being accepted.
pub fn solve_constraints(
    spec: &PromptSpec,
    seed: u64,
    width: Width,
) -> Result<Vec<(u64, u64)>, ForgeError> {
    let mask = width.mask();
    let unsat = |reason: String| ForgeError::Unsatisfiable { reason };

    let mut fixed_a: Option<u64> = None;
    let mut fixed_b: Option<u64> = None;
    let mut equal = false;
    for constraint in &spec.constraints {
        match *constraint {
            Constraint::FixedA(value) => {
                if value > mask {
                    return Err(unsat(format!("A = {value:#x} does not fit width {width}")));
                }
                if fixed_a.replace(value).is_some_and(|prev| prev != value) {
                    return Err(unsat("contradictory fixed values for A".to_string()));
                }
            }
            Constraint::FixedB(value) => {
                if value > mask {
                    return Err(unsat(format!("B = {value:#x} does not fit width {width}")));
                }
                if fixed_b.replace(value).is_some_and(|prev| prev != value) {
                    return Err(unsat("contradictory fixed values for B".to_string()));
                }
            }
            Constraint::EqualOperands => equal = true,
            Constraint::FlagGoal { flag, bit } => {
                let contradicted = spec
                    .constraints
                    .contains(&Constraint::FlagGoal { flag, bit: !bit });
                if contradicted {
                    return Err(unsat(format!("both '{flag}' and 'no {flag}' requested")));
                }
            }
        }
    }
    if equal {
        match (fixed_a, fixed_b) {
            (Some(a), Some(b)) if a != b => {
                return Err(unsat(
                    "A = B conflicts with distinct fixed operands".to_string(),
                ));
            }
            (Some(a), None) => fixed_b = Some(a),
            (None, Some(b)) => fixed_a = Some(b),
            _ => {}
        }
    }

    let mut rng = SplitMix64::new(seed);
    let mut rows = Vec::with_capacity(spec.count as usize);
    for _ in 0..spec.count {
        // With both operands pinned there is exactly one candidate.
        let attempts = if fixed_a.is_some() && fixed_b.is_some() {
            1
        } else {
            REJECTION_CAP
        };
        let mut found = None;
        for _ in 0..attempts {
            let a = fixed_a.unwrap_or_else(|| rng.next_word(mask));
            let b = fixed_b.unwrap_or_else(|| if equal { a } else { rng.next_word(mask) });
            if satisfies(spec, a, b, width) {
                found = Some((a, b));
                break;
            }
        }
        if found.is_none() {
            found = constructive_candidates(spec, &mut rng, width, fixed_a, fixed_b)
                .into_iter()
                .find(|&(a, b)| satisfies(spec, a, b, width));
        }
        match found {
            Some(pair) => rows.push(pair),
            None => {
                return Err(unsat(format!(
                    "no operand pair found for \"{}\" at width {width}",
                    spec.render()
                )));
            }
        }
    }
    Ok(rows)
}

/// Re-evaluate every constraint for a concrete pair. This is the single
/// source of truth; sampled and constructed candidates both pass through.
fn satisfies(spec: &PromptSpec, a: u64, b: u64, width: Width) -> bool {
    if a > width.mask() || b > width.mask() {
        return false;
    }
    let vector = AluVector::new(spec.op, a, b, width).expect("operands masked");
    let response = vector.evaluate();
    spec.constraints.iter().all(|constraint| match *constraint {
        Constraint::EqualOperands => a == b,
        Constraint::FixedA(value) => a == value,
        Constraint::FixedB(value) => b == value,
        Constraint::FlagGoal { flag, bit } => response.flags.get(flag) == bit,
    })
}

/// Candidate pairs for goals that sampling essentially never hits. Every
/// candidate still goes through [`satisfies`], so a wrong construction can
/// reject a row but never emit one.
fn constructive_candidates(
    spec: &PromptSpec,
    rng: &mut SplitMix64,
    width: Width,
    fixed_a: Option<u64>,
    fixed_b: Option<u64>,
) -> Vec<(u64, u64)> {
    let mask = width.mask();
    let high = width.sign_bit();
    let neg_mod = |v: u64| (width.modulus().wrapping_sub(u128::from(v)) as u64) & mask;
    let draw = rng.next_word(mask);
    let mut out = Vec::new();

    for constraint in &spec.constraints {
        let Constraint::FlagGoal { flag, bit } = *constraint else {
            continue;
        };
        match (spec.op, flag, bit) {
            (AluOp::Add, Flag::Carry, true) => match (fixed_a, fixed_b) {
                (None, None) => {
                    out.push((high, high));
                    out.push((high, high + 1));
                }
                (Some(a), None) if a > 0 => {
                    out.push((a, neg_mod(a)));
                    if neg_mod(a) < mask {
                        out.push((a, neg_mod(a) + 1));
                    }
                }
                (None, Some(b)) if b > 0 => {
                    out.push((neg_mod(b), b));
                    if neg_mod(b) < mask {
                        out.push((neg_mod(b) + 1, b));
                    }
                }
                _ => {}
            },
            (AluOp::Add, Flag::Overflow, true) => match (fixed_a, fixed_b) {
                (None, None) => {
                    let quarter = 1u64 << (width.bits() - 2);
                    out.push((quarter, quarter));
                    out.push((high, high));
                }
                (Some(a), None) => match signed_view(a, width) {
                    s if s > 0 => out.push((a, high - 1)),
                    s if s < 0 => out.push((a, high)),
                    _ => {}
                },
                (None, Some(b)) => match signed_view(b, width) {
                    s if s > 0 => out.push((high - 1, b)),
                    s if s < 0 => out.push((high, b)),
                    _ => {}
                },
                _ => {}
            },
            (AluOp::Add, Flag::Zero, true) => {
                let a = fixed_a.unwrap_or_else(|| fixed_b.map_or(draw, neg_mod));
                out.push((a, neg_mod(a)));
            }
            (AluOp::Add, Flag::Carry | Flag::Overflow, false) => {
                out.push((fixed_a.unwrap_or(0), fixed_b.unwrap_or(0)));
            }
            (AluOp::Sub | AluOp::Xor, Flag::Zero, true) => {
                let v = fixed_a.or(fixed_b).unwrap_or(draw);
                out.push((v, v));
            }
            (AluOp::Sub, Flag::Carry, true) => {
                // Carry on subtraction means no borrow: a >= b.
                let b = fixed_b.unwrap_or(0);
                out.push((fixed_a.unwrap_or(mask), b));
                out.push((b, b));
            }
            (AluOp::Sub, Flag::Carry, false) => match (fixed_a, fixed_b) {
                (Some(a), None) if a < mask => out.push((a, a + 1)),
                (None, Some(b)) if b > 0 => out.push((0, b)),
                (None, None) => out.push((0, draw.max(1))),
                _ => {}
            },
            (AluOp::Sub, Flag::Overflow, true) => match (fixed_a, fixed_b) {
                (None, None) => out.push((high, high - 1)),
                (Some(a), None) => {
                    if signed_view(a, width) >= 0 {
                        out.push((a, high));
                    } else {
                        out.push((a, high - 1));
                    }
                }
                (None, Some(b)) => {
                    if signed_view(b, width) >= 0 {
                        out.push((high, b));
                    } else {
                        out.push((high - 1, b));
                    }
                }
                _ => {}
            },
            (AluOp::Sub, Flag::Overflow, false) => {
                let v = fixed_a.or(fixed_b).unwrap_or(draw);
                out.push((v, v));
            }
            (AluOp::And, Flag::Zero, true) => match (fixed_a, fixed_b) {
                (Some(a), None) => out.push((a, !a & mask)),
                (None, Some(b)) => out.push((!b & mask, b)),
                (None, None) => out.push((draw, !draw & mask)),
                _ => {}
            },
            (AluOp::Or, Flag::Zero, true) => out.push((0, 0)),
            (AluOp::Not, Flag::Zero, true) => out.push((mask, fixed_b.unwrap_or(0))),
            (AluOp::Shl | AluOp::Shr, Flag::Zero, true) => {
                out.push((0, fixed_b.unwrap_or(0)));
            }
            _ => {}
        }
    }

    // Generic edge battery: cheap candidates that cover many flag combos.
    for (a, b) in [
        (0, 0),
        (high, high),
        (mask, mask),
        (0, 1),
        (1, 0),
        (high, high - 1),
        (1, mask),
    ] {
        out.push((fixed_a.unwrap_or(a), fixed_b.unwrap_or(b)));
    }
    out
}
