use std::fmt::Write as _;

use crate::alu::{Flag, Width};
use crate::compiler::TestCase;

/// Emit a self-checking Verilog-2001 testbench for the compiled cases.
///
/// The DUT is instantiated by name (default `alu`) with named ports
/// matching the harness signal set. Stimulus steps 10 ns apart, each
/// expectation is checked with `!==` 5 ns after its inputs settle, and the
/// bench dumps `trace.vcd` so simulator output can be compared with the
/// golden-model trace.
pub fn emit_testbench(cases: &[TestCase], dut_name: &str) -> String {
    let dut = if dut_name.is_empty() { "alu" } else { dut_name };
    let width = cases
        .first()
        .map_or(Width::default(), |c| c.stimulus.width());
    let w = width.bits();
    let digits = width.hex_digits();
    let total_checks: usize = cases
        .iter()
        .map(|c| {
            c.expect.result.is_some() as usize
                + Flag::ALL
                    .iter()
                    .filter(|&&f| c.expect.flag(f).is_some())
                    .count()
        })
        .sum();

    let mut out = String::new();
    let _ = writeln!(
        out,
        "// Generated by gherkin-hdl {}.",
        env!("CARGO_PKG_VERSION")
    );
    out.push_str("// Expects a combinational DUT with the port list below.\n");
    out.push_str("`timescale 1ns/1ns\n\n");
    let _ = writeln!(out, "module {dut}_tb;");
    out.push_str("  reg [3:0] op;\n");
    let _ = writeln!(out, "  reg [{}:0] a, b;", w - 1);
    let _ = writeln!(out, "  wire [{}:0] result;", w - 1);
    out.push_str("  wire carry, zero, overflow, negative;\n");
    out.push_str("  integer failures;\n\n");
    let _ = writeln!(out, "  {dut} dut (");
    out.push_str("    .op(op),\n");
    out.push_str("    .a(a),\n");
    out.push_str("    .b(b),\n");
    out.push_str("    .result(result),\n");
    out.push_str("    .carry(carry),\n");
    out.push_str("    .zero(zero),\n");
    out.push_str("    .overflow(overflow),\n");
    out.push_str("    .negative(negative)\n");
    out.push_str("  );\n\n");
    out.push_str("  initial begin\n");
    out.push_str("    failures = 0;\n");
    out.push_str("    $dumpfile(\"trace.vcd\");\n");
    let _ = writeln!(out, "    $dumpvars(0, {dut}_tb);\n");

    for case in cases {
        let name = escape_string(&case.name);
        let _ = writeln!(out, "    // {}", case.name);
        let _ = writeln!(
            out,
            "    op = 4'd{}; a = {}'h{:0digits$X}; b = {}'h{:0digits$X};",
            case.stimulus.op().encoding(),
            w,
            case.stimulus.a(),
            w,
            case.stimulus.b(),
            digits = digits,
        );
        out.push_str("    #5;\n");
        if let Some(expected) = case.expect.result {
            let literal = format!("{w}'h{expected:0digits$X}", digits = digits);
            let _ = writeln!(out, "    if (result !== {literal}) begin");
            let _ = writeln!(
                out,
                "      $display(\"FAIL %s: result expected %h, got %h\", \"{name}\", {literal}, result);",
            );
            out.push_str("      failures = failures + 1;\n");
            out.push_str("    end\n");
        }
        for flag in Flag::ALL {
            if let Some(expected) = case.expect.flag(flag) {
                let literal = format!("1'b{}", expected as u8);
                let port = flag.name();
                let _ = writeln!(out, "    if ({port} !== {literal}) begin");
                let _ = writeln!(
                    out,
                    "      $display(\"FAIL %s: {port} expected %b, got %b\", \"{name}\", {literal}, {port});",
                );
                out.push_str("      failures = failures + 1;\n");
                out.push_str("    end\n");
            }
        }
        out.push_str("    #5;\n\n");
    }

    out.push_str("    if (failures == 0)\n");
    let _ = writeln!(out, "      $display(\"PASS: all {total_checks} checks\");");
    out.push_str("    else\n");
    let _ = writeln!(
        out,
        "      $display(\"FAIL: %0d of {total_checks} checks\", failures);"
    );
    out.push_str("    $finish;\n");
    out.push_str("  end\nendmodule\n");
    out
}

/// Escape a scenario name for use inside a Verilog string literal.
fn escape_string(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for c in name.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            _ => out.push(c),
        }
    }
    out
}
