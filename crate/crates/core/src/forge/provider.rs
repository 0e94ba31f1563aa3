use std::path::PathBuf;
use std::time::Duration;

use serde_json::json;

use crate::alu::Width;
use crate::compiler::compile_feature;
use crate::gherkin::{parse_feature, print_feature, FeatureAst};

use super::validate::{repair_against_oracle, validate_against_oracle};
use super::{
    ForgeError, GenerationMode, GenerationRecord, PromptSpec, ProviderError, ProviderKind,
};

pub const ENDPOINT_ENV: &str = "HWBDD_LLM_ENDPOINT";
pub const KEY_ENV: &str = "HWBDD_LLM_KEY";

/// Dialect reference sent alongside every prompt so a remote model knows
/// exactly what to produce.
pub const STEP_GRAMMAR_REFERENCE: &str = "\
Produce one Gherkin feature using only this dialect:
  Feature: <name>
  Scenario or Scenario Outline (with an Examples table), steps in Given* When+ Then+ order.
Step phrases:
  Given the ALU is reset
  Given the operands are A = <literal> and B = <literal>
  When the operation <OP> is performed        (OP: ADD SUB AND OR XOR NOT SHL SHR)
  Then the result should be <literal>
  Then the <flag> flag should be <0|1>        (flag: carry zero overflow negative)
Literals are decimal, 0x hexadecimal, or 0b binary.";

#[derive(Debug, Clone)]
pub struct ProviderRequest {
    pub prompt: String,
    pub grammar: String,
    pub count: u32,
}

/// A source of feature text for a rendered prompt. Implementations do not
/// validate anything; the caller runs the oracle afterwards.
pub trait GenerationProvider {
    fn generate(&self, request: &ProviderRequest) -> Result<String, ProviderError>;
}

/// Remote provider speaking a minimal JSON exchange: request
/// `{"prompt", "grammar", "count"}`, response `{"feature": text}`.
/// One attempt, 30 second budget, no retries.
pub struct HttpProvider {
    endpoint: String,
    key: Option<String>,
    agent: ureq::Agent,
}

impl HttpProvider {
    pub fn new(endpoint: impl Into<String>, key: Option<String>) -> Self {
        let agent = ureq::AgentBuilder::new()
            .timeout(Duration::from_secs(30))
            .build();
        HttpProvider {
            endpoint: endpoint.into(),
            key,
            agent,
        }
    }

    /// Endpoint from `HWBDD_LLM_ENDPOINT` (required) and credential from
    /// `HWBDD_LLM_KEY` (optional, sent as a bearer token).
    pub fn from_env() -> Result<Self, ProviderError> {
        let endpoint = std::env::var(ENDPOINT_ENV).map_err(|_| ProviderError::Config {
            message: format!("{ENDPOINT_ENV} is not set"),
        })?;
        Ok(Self::new(endpoint, std::env::var(KEY_ENV).ok()))
    }
}

impl GenerationProvider for HttpProvider {
    fn generate(&self, request: &ProviderRequest) -> Result<String, ProviderError> {
        let mut call = self.agent.post(&self.endpoint);
        if let Some(key) = &self.key {
            call = call.set("Authorization", &format!("Bearer {key}"));
        }
        let response = call
            .send_json(json!({
                "prompt": request.prompt,
                "grammar": request.grammar,
                "count": request.count,
            }))
            .map_err(|e| ProviderError::Transport {
                message: e.to_string(),
            })?;
        let body: serde_json::Value =
            response
                .into_json()
                .map_err(|e| ProviderError::BadResponse {
                    message: e.to_string(),
                })?;
        body.get("feature")
            .and_then(serde_json::Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| ProviderError::BadResponse {
                message: "response lacks a string 'feature' field".to_string(),
            })
    }
}

/// Test double for the remote path: canned responses from a directory, one
/// file per prompt, named by the FNV-1a hash of the prompt text. Keeps the
/// provider pipeline fully offline.
pub struct StubProvider {
    dir: PathBuf,
}

impl StubProvider {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        StubProvider { dir: dir.into() }
    }

    /// Name of the canned file a prompt maps to.
    pub fn file_name(prompt: &str) -> String {
        format!("{:016x}.txt", fnv1a64(prompt))
    }

    pub fn response_path(&self, prompt: &str) -> PathBuf {
        self.dir.join(Self::file_name(prompt))
    }
}

impl GenerationProvider for StubProvider {
    fn generate(&self, request: &ProviderRequest) -> Result<String, ProviderError> {
        let path = self.response_path(&request.prompt);
        std::fs::read_to_string(&path).map_err(|e| ProviderError::Transport {
            message: format!("no canned response at {}: {e}", path.display()),
        })
    }
}

fn fnv1a64(text: &str) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in text.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Ask a provider for a feature, then verify it: the text must parse and
/// compile, and every expectation is checked against the golden model. In
/// Strict mode a mismatch aborts; in Repair mode mismatched cells are
/// rewritten to oracle values and counted in the record.
pub fn generate_with_provider(
    spec: &PromptSpec,
    provider: &dyn GenerationProvider,
    mode: GenerationMode,
    width: Width,
) -> Result<(FeatureAst, GenerationRecord), ForgeError> {
    let prompt = spec.render();
    let request = ProviderRequest {
        prompt: prompt.clone(),
        grammar: STEP_GRAMMAR_REFERENCE.to_string(),
        count: spec.count,
    };
    let text = provider.generate(&request)?;
    let ast = parse_feature(&text).map_err(|e| ForgeError::NonParseableOutput {
        message: format!("does not parse: {e}"),
        provider_text: text.clone(),
    })?;
    if let Err(e) = compile_feature(&ast, width) {
        return Err(ForgeError::NonParseableOutput {
            message: format!("does not compile: {e}"),
            provider_text: text.clone(),
        });
    }
    let report = validate_against_oracle(&ast, width).expect("compiles");
    let (ast, corrections) = match mode {
        GenerationMode::Strict if !report.is_clean() => {
            return Err(ForgeError::OracleMismatch { report });
        }
        GenerationMode::Strict => (ast, 0),
        GenerationMode::Repair => repair_against_oracle(&ast, width),
    };
    let record = GenerationRecord {
        prompt_text: prompt,
        seed: 0,
        provider: ProviderKind::Remote,
        corrections,
        feature_text: print_feature(&ast),
    };
    Ok((ast, record))
}
