use crate::alu::{Flag, Width};
use crate::compiler::{ExpectField, TestCase};

use super::report::{CaseResult, Check, TestReport};
use super::vcd::{id_code, Change, SignalDecl, VcdTrace};

/// Inputs for case `k` are driven at `10k` ns; outputs settle at `10k + 5`.
const CASE_PERIOD_NS: u64 = 10;
const SETTLE_NS: u64 = 5;

/// Execute compiled cases against the golden model. Returns the pass/fail
/// report plus a waveform trace: per case, `op`/`A`/`B` change at `10k` ns
/// and all outputs are recorded at `10k + 5` ns, with the trace closed at
/// `10·N` ns. An empty case list yields an empty report and a
/// declarations-only trace.
pub fn run_cases(feature_name: &str, cases: &[TestCase]) -> (TestReport, VcdTrace) {
    let width = cases
        .first()
        .map_or(Width::default(), |c| c.stimulus.width());
    let mut trace = VcdTrace {
        signals: declare_signals(width),
        changes: Vec::new(),
        end_time: CASE_PERIOD_NS * cases.len() as u64,
    };

    let mut results = Vec::with_capacity(cases.len());
    for (k, case) in cases.iter().enumerate() {
        let at = CASE_PERIOD_NS * k as u64;
        let response = case.stimulus.evaluate();

        trace.changes.extend([
            Change {
                time_ns: at,
                signal: SIG_OP,
                value: case.stimulus.op().encoding() as u64,
            },
            Change {
                time_ns: at,
                signal: SIG_A,
                value: case.stimulus.a(),
            },
            Change {
                time_ns: at,
                signal: SIG_B,
                value: case.stimulus.b(),
            },
        ]);
        let settled = at + SETTLE_NS;
        trace.changes.push(Change {
            time_ns: settled,
            signal: SIG_RESULT,
            value: response.result,
        });
        for (i, flag) in Flag::ALL.into_iter().enumerate() {
            trace.changes.push(Change {
                time_ns: settled,
                signal: SIG_FLAGS + i,
                value: response.flags.get(flag) as u64,
            });
        }

        let mut checks = Vec::new();
        if let Some(expected) = case.expect.result {
            checks.push(Check {
                field: ExpectField::Result,
                expected,
                actual: response.result,
                ok: expected == response.result,
            });
        }
        for flag in Flag::ALL {
            if let Some(expected) = case.expect.flag(flag) {
                let actual = response.flags.get(flag);
                checks.push(Check {
                    field: ExpectField::Flag(flag),
                    expected: expected as u64,
                    actual: actual as u64,
                    ok: expected == actual,
                });
            }
        }
        results.push(CaseResult {
            name: case.name.clone(),
            passed: checks.iter().all(|c| c.ok),
            checks,
        });
    }

    let passed_count = results.iter().filter(|r| r.passed).count();
    let failed_count = results.len() - passed_count;
    let report = TestReport {
        feature_name: feature_name.to_string(),
        results,
        passed_count,
        failed_count,
    };
    (report, trace)
}

const SIG_OP: usize = 0;
const SIG_A: usize = 1;
const SIG_B: usize = 2;
const SIG_RESULT: usize = 3;
const SIG_FLAGS: usize = 4;

fn declare_signals(width: Width) -> Vec<SignalDecl> {
    let mut signals = vec![
        SignalDecl {
            name: "op".to_string(),
            width: 4,
            id: id_code(0),
        },
        SignalDecl {
            name: "A".to_string(),
            width: width.bits(),
            id: id_code(1),
        },
        SignalDecl {
            name: "B".to_string(),
            width: width.bits(),
            id: id_code(2),
        },
        SignalDecl {
            name: "result".to_string(),
            width: width.bits(),
            id: id_code(3),
        },
    ];
    for (i, flag) in Flag::ALL.into_iter().enumerate() {
        signals.push(SignalDecl {
            name: flag.name().to_string(),
            width: 1,
            id: id_code(SIG_FLAGS + i),
        });
    }
    signals
}
