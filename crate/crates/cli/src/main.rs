//! `gherkin-hdl`: generate, validate, and run ALU behavior scenarios.
//!
//! Exit codes follow the usual verification-tool convention: 0 means every
//! check passed, 1 means the feature ran but something failed verification,
//! 2 means the inputs themselves were unusable (usage, parse, compile, or
//! provider errors). Human-oriented output goes to stdout, diagnostics to
//! stderr, and every file written is byte-deterministic for a given set of
//! inputs and flags.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gherkin_hdl_core::alu::Width;
use gherkin_hdl_core::compiler::{compile_feature, TestCase};
use gherkin_hdl_core::forge::{
    generate_with_provider, generate_with_templates, parse_prompt, validate_against_oracle,
    GenerationMode, GenerationRecord, HttpProvider, ProviderKind,
};
use gherkin_hdl_core::gherkin::{parse_feature, print_feature, FeatureAst};
use gherkin_hdl_core::harness::{
    emit_testbench, render_report, run_cases, write_vcd, ReportFormat,
};

#[derive(Parser)]
#[command(
    name = "gherkin-hdl",
    version,
    about = "BDD scenarios for hardware blocks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a .feature file from a constrained prompt.
    Generate {
        /// Prompt such as "Create ADD scenario with A = B, 3 examples."
        prompt: String,
        #[command(flatten)]
        opts: CommonOpts,
        /// PRNG seed for operand sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// What to do when a provider's expectations disagree with the
        /// golden model.
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
        /// Where generated scenarios come from.
        #[arg(long, value_enum, default_value_t = ProviderArg::Template)]
        provider: ProviderArg,
    },
    /// Compile a feature and run it against the golden model.
    ///
    /// Writes the machine report (.json) and waveform (.vcd) beside the
    /// feature file and prints the human report.
    Run {
        feature: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Emit a self-checking Verilog testbench for a feature.
    EmitTb {
        feature: PathBuf,
        /// Module name of the design under test.
        #[arg(default_value = "alu")]
        dut_name: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Check a feature's expectations against the golden model.
    Validate {
        feature: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// ALU word width in bits (4 to 64).
    #[arg(long, default_value_t = 16)]
    width: u8,
    /// Override the default output location.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Repair,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProviderArg {
    Template,
    Remote,
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Generate {
            prompt,
            opts,
            seed,
            mode,
            provider,
        } => cmd_generate(&prompt, &opts, seed, mode, provider),
        Command::Run { feature, opts } => cmd_run(&feature, &opts),
        Command::EmitTb {
            feature,
            dut_name,
            opts,
        } => cmd_emit_tb(&feature, &dut_name, &opts),
        Command::Validate { feature, opts } => cmd_validate(&feature, &opts),
    }
}

fn parse_width(opts: &CommonOpts) -> Result<Width> {
    Width::new(opts.width).context("invalid --width")
}

fn load_feature(path: &Path) -> Result<FeatureAst> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_feature(&text).with_context(|| format!("{} does not parse", path.display()))
}

fn compile(path: &Path, ast: &FeatureAst, width: Width) -> Result<Vec<TestCase>> {
    compile_feature(ast, width).with_context(|| format!("{} does not compile", path.display()))
}

fn cmd_generate(
    prompt: &str,
    opts: &CommonOpts,
    seed: u64,
    mode: ModeArg,
    provider: ProviderArg,
) -> Result<i32> {
    let width = parse_width(opts)?;
    let spec = parse_prompt(prompt)?;

    let record = match provider {
        ProviderArg::Template => {
            let ast = generate_with_templates(&spec, seed, width)?;
            GenerationRecord {
                prompt_text: spec.render(),
                seed,
                provider: ProviderKind::Template,
                corrections: 0,
                feature_text: print_feature(&ast),
            }
        }
        ProviderArg::Remote => {
            let remote = HttpProvider::from_env()?;
            let mode = match mode {
                ModeArg::Strict => GenerationMode::Strict,
                ModeArg::Repair => GenerationMode::Repair,
            };
            let (_, record) = generate_with_provider(&spec, &remote, mode, width)?;
            record
        }
    };

    let out_path = opts.out.clone().unwrap_or_else(|| {
        PathBuf::from(format!("{}.feature", spec.op.name().to_ascii_lowercase()))
    });
    fs::write(&out_path, &record.feature_text)
        .with_context(|| format!("cannot write {}", out_path.display()))?;
    println!("wrote {}", out_path.display());
    println!(
        "provider: {}, seed: {}, corrections: {}",
        record.provider, record.seed, record.corrections
    );
    Ok(0)
}

fn cmd_run(feature: &Path, opts: &CommonOpts) -> Result<i32> {
    let width = parse_width(opts)?;
    let ast = load_feature(feature)?;
    let cases = compile(feature, &ast, width)?;
    let (report, trace) = run_cases(&ast.name, &cases);

    let dir = match &opts.out {
        Some(dir) => dir.clone(),
        None => feature.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let stem = feature
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("report");
    let json_path = dir.join(format!("{stem}.json"));
    let vcd_path = dir.join(format!("{stem}.vcd"));
    fs::write(&json_path, render_report(&report, ReportFormat::Machine))
        .with_context(|| format!("cannot write {}", json_path.display()))?;
    fs::write(&vcd_path, write_vcd(&trace, "alu"))
        .with_context(|| format!("cannot write {}", vcd_path.display()))?;

    print!("{}", render_report(&report, ReportFormat::Human));
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn cmd_emit_tb(feature: &Path, dut_name: &str, opts: &CommonOpts) -> Result<i32> {
    let width = parse_width(opts)?;
    let ast = load_feature(feature)?;
    let cases = compile(feature, &ast, width)?;
    if cases.is_empty() {
        bail!("{} has no cases", feature.display());
    }

    let out_path = opts
        .out
        .clone()
        .unwrap_or_else(|| feature.with_extension("v"));
    fs::write(&out_path, emit_testbench(&cases, dut_name))
        .with_context(|| format!("cannot write {}", out_path.display()))?;
    println!("wrote {} ({} cases)", out_path.display(), cases.len());
    Ok(0)
}

fn cmd_validate(feature: &Path, opts: &CommonOpts) -> Result<i32> {
    let width = parse_width(opts)?;
    let ast = load_feature(feature)?;
    let report = validate_against_oracle(&ast, width)
        .with_context(|| format!("{} does not compile", feature.display()))?;

    if report.is_clean() {
        println!("{} rows validated, no mismatches", report.total_rows);
        Ok(0)
    } else {
        for mismatch in &report.mismatches {
            println!("{mismatch}");
        }
        println!(
            "{} of {} rows mismatch the golden model",
            report.mismatches.len(),
            report.total_rows
        );
        Ok(1)
    }
}
