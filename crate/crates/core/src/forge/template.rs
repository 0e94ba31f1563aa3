use crate::alu::{AluVector, Width};
use crate::gherkin::{
    ExamplesTable, FeatureAst, ResolvedKeyword, ScenarioKind, ScenarioNode, Step, StepKeyword,
};

use super::solve::solve_constraints;
use super::{bit_cell, hex_cell, ForgeError, PromptSpec};

/// The local template engine: one Scenario Outline per prompt, operands
/// from the constraint solver, expected cells computed by the golden model.
/// The oracle fills every expectation, so a generated feature can never
/// disagree with the model.
pub fn generate_with_templates(
    spec: &PromptSpec,
    seed: u64,
    width: Width,
) -> Result<FeatureAst, ForgeError> {
    let pairs = solve_constraints(spec, seed, width)?;
    let rows = pairs
        .iter()
        .map(|&(a, b)| {
            let response = AluVector::new(spec.op, a, b, width)
                .expect("solver output respects width")
                .evaluate();
            vec![
                hex_cell(a, width),
                hex_cell(b, width),
                hex_cell(response.result, width),
                bit_cell(response.flags.carry).to_string(),
                bit_cell(response.flags.zero).to_string(),
                bit_cell(response.flags.overflow).to_string(),
            ]
        })
        .collect();
    let columns = ["A", "B", "result", "carry", "zero", "overflow"]
        .map(String::from)
        .to_vec();

    let step = |keyword, resolved, text: &str| Step {
        keyword,
        text: text.to_string(),
        resolved,
        line: 0,
    };
    use ResolvedKeyword as R;
    use StepKeyword as K;
    let steps = vec![
        step(K::Given, R::Given, "the ALU is reset"),
        step(K::And, R::Given, "the operands are A = <A> and B = <B>"),
        step(
            K::When,
            R::When,
            &format!("the operation {} is performed", spec.op),
        ),
        step(K::Then, R::Then, "the result should be <result>"),
        step(K::And, R::Then, "the carry flag should be <carry>"),
        step(K::And, R::Then, "the zero flag should be <zero>"),
        step(K::And, R::Then, "the overflow flag should be <overflow>"),
    ];

    Ok(FeatureAst {
        name: format!("ALU {} operation", spec.op),
        description: None,
        scenarios: vec![ScenarioNode {
            name: format!("{} behaves per specification", spec.op),
            kind: ScenarioKind::Outline,
            steps,
            examples: Some(ExamplesTable { columns, rows }),
        }],
    })
}
