//! Trace and sweep CSV files.
//!
//! A trace file starts with `# key=value` comment lines holding the run
//! parameters and calibration, followed by a header row and one row per
//! bit. Phases are printed with 9 decimals and lines end in LF. Decision
//! columns are empty when the receiver had no measurement.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::cipher;
use crate::codec;
use crate::error::{Error, Result};
use crate::geometry::{self, ChannelClass, PositionBit};
use crate::link::{BerPoint, CalibrationTable, SessionSummary, SessionTrace, TraceRecord};

pub const TRACE_COLUMNS: &str = "index,message_bit,key_bit,tx_pos,rx_pos,true_channel_bit,\
true_phase_rad,measured_phase_rad,decided_channel_bit,decoded_bit";

pub const SWEEP_COLUMNS: &str = "sigma_rad,ber";

fn bit(b: bool) -> u8 {
    u8::from(b)
}

fn opt_bit(b: Option<bool>) -> String {
    b.map(|b| bit(b).to_string()).unwrap_or_default()
}

/// Renders a trace. Floats in the comment block use the shortest
/// round-trip representation.
pub fn write_trace(trace: &SessionTrace) -> String {
    let s = &trace.summary;
    let c = &trace.calibration;
    let mut out = String::new();
    let mut kv = |k: &str, v: &dyn std::fmt::Display| {
        writeln!(out, "# {k}={v}").expect("write to String");
    };
    kv("frequency_hz", &s.frequency_hz);
    kv("baseline_m", &s.baseline_m);
    kv("displacement_m", &s.displacement_m);
    kv("noise_sigma_rad", &s.noise_sigma_rad);
    kv("position_jitter_m", &s.position_jitter_m);
    kv("key_seed", &s.key_seed);
    kv("noise_seed", &s.noise_seed);
    kv("mode", &s.mode);
    kv("feedback", &s.feedback_available);
    kv("message", &trace.message.escape_default());
    kv("bit_order", &"msb_first");
    kv("phi_same", &c.phi_same);
    kv("phi_alt", &c.phi_alt);
    kv("class_separation", &c.class_separation);
    kv("consistency_tolerance", &c.consistency_tolerance);
    kv("same_spread", &c.same_spread);
    kv("alt_spread", &c.alt_spread);
    kv(
        "decoded_text",
        &trace.decoded_text.to_string().escape_default(),
    );
    kv("bit_errors", &trace.bit_errors);
    out.push_str(TRACE_COLUMNS);
    out.push('\n');
    for r in &trace.records {
        writeln!(
            out,
            "{},{},{},{},{},{},{:.9},{:.9},{},{}",
            r.index,
            bit(r.message_bit),
            bit(r.key_bit),
            r.tx_pos,
            r.rx_pos,
            r.true_channel,
            r.true_phase_rad,
            r.measured_phase_rad,
            opt_bit(r.decided_channel.map(ChannelClass::bit)),
            opt_bit(r.decoded_bit),
        )
        .expect("write to String");
    }
    out
}

fn malformed(line: usize, reason: impl Into<String>) -> Error {
    Error::MalformedTrace {
        line,
        reason: reason.into(),
    }
}

struct Header {
    values: HashMap<String, (usize, String)>,
}

impl Header {
    fn get<T: FromStr>(&self, key: &str) -> Result<T> {
        let (line, raw) = self
            .values
            .get(key)
            .ok_or_else(|| malformed(0, format!("missing `# {key}=` entry")))?;
        raw.parse()
            .map_err(|_| malformed(*line, format!("cannot parse {key}={raw:?}")))
    }
}

fn parse_bit(field: &str, line: usize, column: &str) -> Result<bool> {
    match field {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(malformed(
            line,
            format!("{column} must be 0 or 1, got {other:?}"),
        )),
    }
}

fn parse_opt_bit(field: &str, line: usize, column: &str) -> Result<Option<bool>> {
    if field.is_empty() {
        Ok(None)
    } else {
        parse_bit(field, line, column).map(Some)
    }
}

fn parse_phase(field: &str, line: usize, column: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .ok()
        .filter(|p| p.is_finite())
        .ok_or_else(|| malformed(line, format!("{column} is not a finite number: {field:?}")))
}

/// Parses a trace file and checks its internal consistency.
///
/// The message is recovered from the `message_bit` column and the decoded
/// text and error count are recomputed from the records.
pub fn read_trace(text: &str) -> Result<SessionTrace> {
    let mut header = Header {
        values: HashMap::new(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut columns_seen = false;
    for (n, line) in lines.by_ref() {
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.trim_start().split_once('=') {
                header.values.insert(k.trim().to_owned(), (n, v.to_owned()));
            }
        } else if line.trim().is_empty() {
            continue;
        } else if line == TRACE_COLUMNS {
            columns_seen = true;
            break;
        } else {
            return Err(malformed(
                n,
                format!("expected header row {TRACE_COLUMNS:?}"),
            ));
        }
    }
    if !columns_seen {
        return Err(malformed(0, "no header row"));
    }

    let summary = SessionSummary {
        frequency_hz: header.get("frequency_hz")?,
        baseline_m: header.get("baseline_m")?,
        displacement_m: header.get("displacement_m")?,
        noise_sigma_rad: header.get("noise_sigma_rad")?,
        position_jitter_m: header.get("position_jitter_m")?,
        key_seed: header.get("key_seed")?,
        noise_seed: header.get("noise_seed")?,
        mode: header.get("mode")?,
        feedback_available: header.get("feedback")?,
    };
    let calibration = CalibrationTable {
        phi_same: header.get("phi_same")?,
        phi_alt: header.get("phi_alt")?,
        class_separation: header.get("class_separation")?,
        consistency_tolerance: header.get("consistency_tolerance")?,
        same_spread: header.get("same_spread")?,
        alt_spread: header.get("alt_spread")?,
    };

    let mut records = Vec::new();
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 10 {
            return Err(malformed(n, format!("expected 10 fields, got {}", f.len())));
        }
        let index: usize = f[0]
            .parse()
            .map_err(|_| malformed(n, format!("bad index {:?}", f[0])))?;
        if index != records.len() {
            return Err(malformed(n, format!("index {index} out of sequence")));
        }
        let message_bit = parse_bit(f[1], n, "message_bit")?;
        let key_bit = parse_bit(f[2], n, "key_bit")?;
        let tx_pos = PositionBit::new(parse_bit(f[3], n, "tx_pos")?);
        let rx_pos = PositionBit::new(parse_bit(f[4], n, "rx_pos")?);
        let true_channel = ChannelClass::from_bit(parse_bit(f[5], n, "true_channel_bit")?);
        if true_channel != geometry::channel_bit(tx_pos, rx_pos) {
            return Err(malformed(n, "true_channel_bit != tx_pos XOR rx_pos"));
        }
        let decided_channel =
            parse_opt_bit(f[8], n, "decided_channel_bit")?.map(ChannelClass::from_bit);
        let decoded_bit = parse_opt_bit(f[9], n, "decoded_bit")?;
        if decoded_bit != decided_channel.map(codec::channel_to_bit) {
            return Err(malformed(n, "decoded_bit != decided_channel_bit"));
        }
        records.push(TraceRecord {
            index,
            message_bit,
            key_bit,
            tx_pos,
            rx_pos,
            true_channel,
            true_phase_rad: parse_phase(f[6], n, "true_phase_rad")?,
            measured_phase_rad: parse_phase(f[7], n, "measured_phase_rad")?,
            decided_channel,
            decoded_bit,
        });
    }

    let message_bits: Vec<bool> = records.iter().map(|r| r.message_bit).collect();
    let message = codec::decode_ascii(&message_bits)
        .map_err(|e| malformed(0, format!("message_bit column: {e}")))?;
    // sanity: the keyed positions must reproduce the message column
    if records
        .iter()
        .any(|r| cipher::recover_from_positions(r.tx_pos, r.rx_pos) != r.message_bit)
    {
        return Err(malformed(0, "positions do not reproduce message bits"));
    }
    Ok(SessionTrace::from_records(
        summary,
        calibration,
        message,
        records,
    ))
}

pub fn write_sweep(points: &[BerPoint]) -> String {
    let mut out = String::from(SWEEP_COLUMNS);
    out.push('\n');
    for p in points {
        writeln!(out, "{},{}", p.sigma_rad, p.ber).expect("write to String");
    }
    out
}
