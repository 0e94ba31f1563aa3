//! Simulation harness: executes compiled cases against the golden model
//! and produces the artifacts a hardware flow expects from a testbench
//! run. Three outputs share one execution:
//!
//! * a pass/fail [`TestReport`] renderable for humans or machines,
//! * a [`VcdTrace`] waveform, serializable to GTKWave-compatible VCD and
//!   parseable back for verification,
//! * a standalone Verilog testbench that replays the same stimulus
//!   against a real DUT in any Verilog-2001 simulator.
//!
//! The harness itself never runs Verilog; simulation is delegated to the
//! emitted bench so results stay reproducible without an external
//! simulator in the loop.

mod report;
mod run;
mod testbench;
mod vcd;

pub use report::{render_report, CaseResult, Check, ReportFormat, TestReport};
pub use run::run_cases;
pub use testbench::emit_testbench;
pub use vcd::{id_code, read_vcd_minimal, write_vcd, Change, SignalDecl, VcdFormatError, VcdTrace};
