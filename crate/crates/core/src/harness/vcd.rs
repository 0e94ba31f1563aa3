use std::fmt::Write as _;

use thiserror::Error;

/// One declared wire in a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalDecl {
    pub name: String,
    /// Bit width; width 1 signals dump as scalars, wider ones as vectors.
    pub width: u32,
    /// VCD identifier code, printable ASCII.
    pub id: String,
}

/// A value change. `signal` indexes into the trace's declaration list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Change {
    pub time_ns: u64,
    pub signal: usize,
    pub value: u64,
}

/// An in-memory value-change dump: declarations plus a time-ordered list
/// of changes. `end_time` closes the trace; it never precedes the last
/// change.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VcdTrace {
    pub signals: Vec<SignalDecl>,
    pub changes: Vec<Change>,
    pub end_time: u64,
}

/// Sequential identifier codes: `!`, `"`, ..., `~`, then two characters.
pub fn id_code(index: usize) -> String {
    let mut n = index;
    let mut out = Vec::new();
    loop {
        out.push(b'!' + (n % 94) as u8);
        n /= 94;
        if n == 0 {
            break;
        }
        n -= 1;
    }
    String::from_utf8(out).expect("printable ASCII")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("VCD format error at byte {offset}: {message}")]
pub struct VcdFormatError {
    pub offset: usize,
    pub message: String,
}

/// Serialize a trace as a GTKWave-loadable VCD document. The header is
/// fully deterministic; `$dumpvars` seeds every signal with zero, and each
/// `#t` section carries the changes at that time, vectors as `b<bits> <id>`
/// (no leading zeros) and scalars as `<bit><id>`.
pub fn write_vcd(trace: &VcdTrace, module_name: &str) -> String {
    let mut out = String::new();
    out.push_str("$date deterministic $end\n");
    let _ = writeln!(
        out,
        "$version gherkin-hdl {} $end",
        env!("CARGO_PKG_VERSION")
    );
    out.push_str("$timescale 1ns $end\n");
    let _ = writeln!(out, "$scope module {module_name} $end");
    for signal in &trace.signals {
        if signal.width == 1 {
            let _ = writeln!(out, "$var wire 1 {} {} $end", signal.id, signal.name);
        } else {
            let _ = writeln!(
                out,
                "$var wire {} {} {} [{}:0] $end",
                signal.width,
                signal.id,
                signal.name,
                signal.width - 1
            );
        }
    }
    out.push_str("$upscope $end\n");
    out.push_str("$enddefinitions $end\n");
    out.push_str("$dumpvars\n");
    for signal in &trace.signals {
        push_value(&mut out, signal, 0);
    }
    out.push_str("$end\n");

    let mut current_time = None;
    for change in &trace.changes {
        if current_time != Some(change.time_ns) {
            let _ = writeln!(out, "#{}", change.time_ns);
            current_time = Some(change.time_ns);
        }
        push_value(&mut out, &trace.signals[change.signal], change.value);
    }
    if trace.end_time > current_time.unwrap_or(0) {
        let _ = writeln!(out, "#{}", trace.end_time);
    }
    out
}

fn push_value(out: &mut String, signal: &SignalDecl, value: u64) {
    if signal.width == 1 {
        let _ = writeln!(out, "{}{}", value & 1, signal.id);
    } else {
        let _ = writeln!(out, "b{value:b} {}", signal.id);
    }
}

/// Parse the subset of VCD that [`write_vcd`] emits. Declarations and
/// changes are recovered exactly, so write → read → write is byte-stable.
pub fn read_vcd_minimal(text: &str) -> Result<VcdTrace, VcdFormatError> {
    let err = |offset: usize, message: &str| VcdFormatError {
        offset,
        message: message.to_string(),
    };

    let mut signals: Vec<SignalDecl> = Vec::new();
    let mut changes: Vec<Change> = Vec::new();
    let mut end_time = 0u64;
    let mut in_definitions = true;
    let mut in_dumpvars = false;
    let mut seen_dumpvars = false;
    let mut last_time: Option<u64> = None;
    let mut offset = 0usize;

    for line in text.split_inclusive('\n') {
        let line_offset = offset;
        offset += line.len();
        let content = line.trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();

        if in_definitions {
            match words[0] {
                "$date" | "$version" | "$timescale" | "$scope" | "$upscope" | "$comment" => {
                    if words.last() != Some(&"$end") {
                        return Err(err(line_offset, "directive not closed by $end"));
                    }
                }
                "$var" => {
                    if words.last() != Some(&"$end") || !(5..=7).contains(&words.len()) {
                        return Err(err(line_offset, "malformed $var declaration"));
                    }
                    if words[1] != "wire" {
                        return Err(err(line_offset, "only wire signals are supported"));
                    }
                    let width: u32 = words[2]
                        .parse()
                        .ok()
                        .filter(|w| (1..=64).contains(w))
                        .ok_or_else(|| err(line_offset, "bad signal width"))?;
                    signals.push(SignalDecl {
                        name: words[4].to_string(),
                        width,
                        id: words[3].to_string(),
                    });
                }
                "$enddefinitions" => in_definitions = false,
                _ => return Err(err(line_offset, "unexpected token in definitions")),
            }
            continue;
        }

        if in_dumpvars {
            if words[0] == "$end" {
                in_dumpvars = false;
            } else {
                // Initial values: validate ids but do not record them.
                parse_value_line(&words, &signals).map_err(|message| err(line_offset, &message))?;
            }
            continue;
        }

        match words[0] {
            "$dumpvars" => {
                if seen_dumpvars {
                    return Err(err(line_offset, "duplicate $dumpvars block"));
                }
                seen_dumpvars = true;
                in_dumpvars = true;
            }
            word if word.starts_with('#') => {
                let time: u64 = word[1..]
                    .parse()
                    .map_err(|_| err(line_offset, "bad timestamp"))?;
                if last_time.is_some_and(|t| time < t) {
                    return Err(err(line_offset, "timestamps must be nondecreasing"));
                }
                last_time = Some(time);
                end_time = time;
            }
            _ => {
                if last_time.is_none() {
                    return Err(err(line_offset, "value change before any timestamp"));
                }
                let (signal, value) = parse_value_line(&words, &signals)
                    .map_err(|message| err(line_offset, &message))?;
                changes.push(Change {
                    time_ns: last_time.unwrap(),
                    signal,
                    value,
                });
            }
        }
    }

    if in_definitions {
        return Err(err(offset, "truncated: no $enddefinitions"));
    }
    if in_dumpvars {
        return Err(err(offset, "truncated: $dumpvars not closed"));
    }
    Ok(VcdTrace {
        signals,
        changes,
        end_time,
    })
}

/// Parse `b<bits> <id>` or `<bit><id>`; returns (signal index, value).
fn parse_value_line(words: &[&str], signals: &[SignalDecl]) -> Result<(usize, u64), String> {
    let find = |id: &str| {
        signals
            .iter()
            .position(|s| s.id == id)
            .ok_or_else(|| format!("change on undeclared id '{id}'"))
    };
    if let Some(bits) = words[0].strip_prefix('b') {
        if words.len() != 2 {
            return Err("malformed vector change".to_string());
        }
        let value = u64::from_str_radix(bits, 2).map_err(|_| "bad binary value".to_string())?;
        let signal = find(words[1])?;
        let width = signals[signal].width;
        if width == 1 {
            return Err("vector change on scalar signal".to_string());
        }
        if width < 64 && value >> width != 0 {
            return Err(format!("value does not fit {width}-bit signal"));
        }
        Ok((signal, value))
    } else if words.len() == 1 && words[0].len() >= 2 {
        let (bit, id) = words[0].split_at(1);
        let value = match bit {
            "0" => 0,
            "1" => 1,
            _ => return Err("bad scalar value".to_string()),
        };
        let signal = find(id)?;
        if signals[signal].width != 1 {
            return Err("scalar change on vector signal".to_string());
        }
        Ok((signal, value))
    } else {
        Err("unrecognized value change".to_string())
    }
}
