//! BDD toolkit for hardware blocks.
//!
//! The crate turns short prompts and `.feature` files into executable test
//! cases for a bit-accurate ALU golden model, and serializes the results as
//! GTKWave-loadable VCD traces and Verilog testbenches.
//!
//! The flow, end to end:
//!
//! ```text
//! prompt ──parse──▶ PromptSpec ──solve/generate──▶ FeatureAst (.feature)
//!                                                      │
//!                                        compile (step phrases ➜ vectors)
//!                                                      │
//!                                                  [TestCase]
//!                                                      │
//!                                    run against the ALU golden model
//!                                                      │
//!                                 TestReport + VcdTrace + testbench.v
//! ```
//!
//! Modules map onto the stages above:
//!
//! * [`gherkin`] — parser, canonical printer, and outline expansion for a
//!   hardware-oriented subset of the Gherkin language.
//! * [`alu`] — the ALU golden model (default width 16, parameterizable).
//! * [`compiler`] — binds step phrases to concrete stimulus and expectations.
//! * [`forge`] — prompt mini-language, constrained stimulus solving, template
//!   and LLM-provider generation, oracle validation and repair.
//! * [`harness`] — case runner, VCD writer/reader, testbench emitter, reports.

pub mod alu;
pub mod compiler;
pub mod forge;
pub mod gherkin;
pub mod harness;
