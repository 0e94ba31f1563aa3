//! Cross-module integration: prompt in, waveform out, plus the remote
//! provider's wire format against a real local socket.

use std::io::{Read, Write};
use std::net::TcpListener;
use std::thread;

use gherkin_hdl_core::alu::Width;
use gherkin_hdl_core::compiler::compile_feature;
use gherkin_hdl_core::forge::{
    generate_with_provider, generate_with_templates, parse_prompt, validate_against_oracle,
    GenerationMode, HttpProvider, ProviderKind,
};
use gherkin_hdl_core::gherkin::{parse_feature, print_feature};
use gherkin_hdl_core::harness::{read_vcd_minimal, run_cases, write_vcd};

fn w16() -> Width {
    Width::new(16).unwrap()
}

#[test]
fn prompt_to_waveform_round_trip() {
    let spec = parse_prompt("Create ADD scenario with A = B, 3 examples.").unwrap();
    let ast = generate_with_templates(&spec, 42, w16()).unwrap();

    let text = print_feature(&ast);
    let reparsed = parse_feature(&text).unwrap();
    assert!(reparsed.structural_eq(&ast));

    let cases = compile_feature(&reparsed, w16()).unwrap();
    assert_eq!(cases.len(), 3);
    for case in &cases {
        assert_eq!(case.stimulus.a(), case.stimulus.b());
    }

    let (report, trace) = run_cases(&reparsed.name, &cases);
    assert_eq!(report.passed_count, 3);
    assert_eq!(report.failed_count, 0);
    assert_eq!(trace.end_time, 30);

    let vcd = write_vcd(&trace, "alu");
    let back = read_vcd_minimal(&vcd).unwrap();
    assert_eq!(back, trace);
    assert_eq!(write_vcd(&back, "alu"), vcd);
}

#[test]
fn every_operation_survives_the_full_pipeline() {
    for op in ["ADD", "SUB", "AND", "OR", "XOR", "NOT", "SHL", "SHR"] {
        let spec = parse_prompt(&format!("Create {op} scenario, 2 examples.")).unwrap();
        let ast = generate_with_templates(&spec, 7, w16()).unwrap();
        let report = validate_against_oracle(&ast, w16()).unwrap();
        assert!(report.is_clean(), "{op} template should be oracle-clean");

        let cases = compile_feature(&ast, w16()).unwrap();
        let (run_report, _) = run_cases(&ast.name, &cases);
        assert!(run_report.all_passed(), "{op} cases should pass");
    }
}

/// Serves exactly one canned HTTP response and hands back the raw request.
fn one_shot_server(
    status_line: &'static str,
    body: &'static str,
) -> (String, thread::JoinHandle<String>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let endpoint = format!("http://{}/generate", listener.local_addr().unwrap());
    let handle = thread::spawn(move || {
        let (mut stream, _) = listener.accept().unwrap();
        let mut raw = Vec::new();
        let mut buf = [0u8; 4096];
        let request = loop {
            let n = stream.read(&mut buf).unwrap();
            raw.extend_from_slice(&buf[..n]);
            let text = String::from_utf8_lossy(&raw).into_owned();
            if let Some(split) = text.find("\r\n\r\n") {
                let content_length: usize = text
                    .lines()
                    .find_map(|l| l.strip_prefix("Content-Length: "))
                    .map(|v| v.trim().parse().unwrap())
                    .unwrap_or(0);
                if raw.len() >= split + 4 + content_length {
                    break text;
                }
            }
            if n == 0 {
                break text;
            }
        };
        let response = format!(
            "{status_line}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
            body.len()
        );
        stream.write_all(response.as_bytes()).unwrap();
        request
    });
    (endpoint, handle)
}

#[test]
fn remote_provider_speaks_the_documented_wire_format() {
    let feature_body = serde_json::json!({
        "feature": "Feature: ALU ADD operation\n\n  Scenario: five plus five\n    Given the operands are A = 5 and B = 5\n    When the operation ADD is performed\n    Then the result should be 10\n"
    })
    .to_string();
    let body: &'static str = Box::leak(feature_body.into_boxed_str());
    let (endpoint, handle) = one_shot_server("HTTP/1.1 200 OK", body);

    let provider = HttpProvider::new(endpoint, Some("s3cr3t".to_string()));
    let spec = parse_prompt("Create ADD scenario, 1 example.").unwrap();
    let (ast, record) =
        generate_with_provider(&spec, &provider, GenerationMode::Strict, w16()).unwrap();

    assert_eq!(ast.scenarios.len(), 1);
    assert_eq!(record.provider, ProviderKind::Remote);
    assert_eq!(record.corrections, 0);

    let request = handle.join().unwrap();
    assert!(
        request.starts_with("POST /generate HTTP/1.1\r\n"),
        "{request}"
    );
    assert!(
        request.contains("Authorization: Bearer s3cr3t\r\n"),
        "{request}"
    );
    let json_start = request.find("\r\n\r\n").unwrap() + 4;
    let payload: serde_json::Value = serde_json::from_str(&request[json_start..]).unwrap();
    assert_eq!(payload["prompt"], "Create ADD scenario, 1 example.");
    assert_eq!(payload["count"], 1);
    assert!(payload["grammar"]
        .as_str()
        .unwrap()
        .contains("the operation"));
}

#[test]
fn remote_provider_surfaces_http_failures() {
    let (endpoint, handle) = one_shot_server("HTTP/1.1 500 Internal Server Error", "{}");
    let provider = HttpProvider::new(endpoint, None);
    let spec = parse_prompt("Create ADD scenario, 1 example.").unwrap();
    let err = generate_with_provider(&spec, &provider, GenerationMode::Strict, w16()).unwrap_err();
    assert!(
        err.to_string().contains("provider"),
        "unexpected error: {err}"
    );
    handle.join().unwrap();
}
