//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use chanmod::cipher::{self, KeyStream};
use chanmod::circular::circular_distance;
use chanmod::codec;
use chanmod::geometry::{self, path_length, wrap_phase};
use chanmod::link::{self, ber_sweep, eavesdrop, transmit};
use chanmod::{
    ChannelModel, DecodedText, EavesdropOutcome, LinkGeometry, PositionBit, SessionConfig,
    SoundingDirection,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CALLSIGN: &str = "OE1GAQ";
const PHASE_TOL: f64 = 1e-9;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn default_channel(noise_seed: u64) -> ChannelModel {
    ChannelModel::new(
        LinkGeometry::default(),
        0.0,
        ChannelModel::DEFAULT_POSITION_JITTER_M,
        noise_seed,
    )
    .unwrap()
}

fn pairs() -> [(PositionBit, PositionBit); 4] {
    let (h, d) = (PositionBit::HOME, PositionBit::DISPLACED);
    [(h, h), (h, d), (d, h), (d, d)]
}

fn random_ascii(rng: &mut ChaCha8Rng, max_len: usize) -> String {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| char::from(rng.random_range(0u8..=127)))
        .collect()
}

fn zero_ber_reproduction() -> Outcome {
    let start = Instant::now();
    for key_seed in 0..10u64 {
        let config = SessionConfig::forward(default_channel(1000 + key_seed), key_seed * 7 + 1);
        let trace = transmit(config, CALLSIGN).map_err(|e| e.to_string())?;
        ensure(trace.bit_errors == 0, || {
            format!("key seed {key_seed}: {} bit errors", trace.bit_errors)
        })?;
        ensure(
            trace.decoded_text == DecodedText::Text(CALLSIGN.into()),
            || format!("key seed {key_seed}: decoded {}", trace.decoded_text),
        )?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("10 seeds, 0 bit errors, {elapsed:?}"))
}

fn phase_class_geometry() -> Outcome {
    let g = LinkGeometry::default();
    let mut ch = ChannelModel::ideal(g, 0);
    let (h, d) = (PositionBit::HOME, PositionBit::DISPLACED);
    let reference = ch.sound(h, h, SoundingDirection::Forward).phase_rad;
    let mut worst: f64 = 0.0;
    for (a, b) in pairs() {
        let phase = ch.sound(a, b, SoundingDirection::Forward).phase_rad;
        let diff = wrap_phase(phase - reference).unwrap();
        let expected = PI * f64::from((a ^ b).value());
        worst = worst.max(circular_distance(diff, expected));
    }
    ensure(worst <= PHASE_TOL, || {
        format!("phase class error {worst:e}")
    })?;
    let extra = path_length(&g, d, d) - path_length(&g, h, h);
    let err = (extra - g.lambda_m()).abs();
    ensure(err <= 1e-12, || {
        format!("(1,1) path exceeds (0,0) by {extra}, not λ")
    })?;
    Ok(format!(
        "max phase error {worst:.1e} rad, |ΔL-λ| = {err:.1e} m"
    ))
}

fn calibration_wrap_check() -> Outcome {
    let mut ch = ChannelModel::ideal(LinkGeometry::default(), 0);
    let t = link::calibrate(&mut ch).map_err(|e| e.to_string())?;
    ensure(
        t.same_spread <= PHASE_TOL && t.alt_spread <= PHASE_TOL,
        || format!("spreads {:e} / {:e}", t.same_spread, t.alt_spread),
    )?;
    let sep_err = (t.class_separation - PI).abs();
    ensure(sep_err <= PHASE_TOL, || {
        format!("separation {}", t.class_separation)
    })?;
    Ok(format!(
        "spreads {:.1e}/{:.1e}, |sep-π| = {sep_err:.1e}",
        t.same_spread, t.alt_spread
    ))
}

fn mode_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100u64 {
        let message = random_ascii(&mut rng, 24);
        let channel = ChannelModel::new(LinkGeometry::default(), 0.02, 0.02e-3, 500 + i).unwrap();
        let fwd = transmit(SessionConfig::forward(channel.clone(), i), &message);
        let rev = transmit(SessionConfig::reversed(channel, i, true), &message);
        let (fwd, rev) = (
            fwd.map_err(|e| e.to_string())?,
            rev.map_err(|e| e.to_string())?,
        );
        ensure(
            fwd.records == rev.records
                && fwd.calibration == rev.calibration
                && fwd.decoded_text == rev.decoded_text
                && fwd.bit_errors == rev.bit_errors,
            || format!("message {i} ({message:?}) differs between pilot directions"),
        )?;
    }
    Ok("100 messages identical field-for-field".into())
}

fn secrecy_properties() -> Outcome {
    for m in [false, true] {
        let images = [
            cipher::tx_position_for(m, false),
            cipher::tx_position_for(m, true),
        ];
        ensure(images[0] != images[1], || {
            format!("key map not bijective for m={m}")
        })?;
    }
    let mut freqs = Vec::new();
    for m in [false, true] {
        let ones = KeyStream::new(0x5EED)
            .take(10_000)
            .filter(|&k| cipher::tx_position_for(m, k).is_displaced())
            .count();
        let p = ones as f64 / 10_000.0;
        ensure((0.45..=0.55).contains(&p), || {
            format!("P(p_tx=1 | m={m}) = {p}")
        })?;
        freqs.push(p);
    }
    let trace = transmit(SessionConfig::forward(default_channel(0), 99), CALLSIGN)
        .map_err(|e| e.to_string())?;
    let tx_only = eavesdrop(&trace, true, false).map_err(|e| e.to_string())?;
    ensure(tx_only == EavesdropOutcome::Indeterminate, || {
        format!("tx-only observer got {tx_only}")
    })?;
    let both = eavesdrop(&trace, true, true).map_err(|e| e.to_string())?;
    ensure(both == EavesdropOutcome::Decoded(CALLSIGN.into()), || {
        format!("full observer got {both}")
    })?;
    Ok(format!(
        "bijective; P(p_tx=1) = {:.4}/{:.4}; tx-only INDETERMINATE, both {CALLSIGN}",
        freqs[0], freqs[1]
    ))
}

fn channel_equals_message() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut runs = 0;
    for key_seed in 0..20u64 {
        for sigma in [0.0, 0.02] {
            let message = if key_seed == 0 {
                CALLSIGN.to_owned()
            } else {
                random_ascii(&mut rng, 16)
            };
            let ch = ChannelModel::new(LinkGeometry::default(), sigma, 0.02e-3, key_seed).unwrap();
            let trace = match transmit(SessionConfig::forward(ch, key_seed), &message) {
                Ok(t) => t,
                // a noisy calibration may legitimately fail; the property is about completed runs
                Err(_) if sigma > 0.0 => continue,
                Err(e) => return Err(e.to_string()),
            };
            let expected = codec::encode_ascii(&message).unwrap();
            let channels: Vec<bool> = trace.records.iter().map(|r| r.true_channel.bit()).collect();
            ensure(channels == expected.as_slice(), || {
                format!("key seed {key_seed}: channel sequence differs")
            })?;
            ensure(
                trace
                    .records
                    .iter()
                    .all(|r| r.true_channel == geometry::channel_bit(r.tx_pos, r.rx_pos)),
                || "true_channel_bit != tx XOR rx".into(),
            )?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs"))
}

fn detector_under_noise() -> Outcome {
    let base = SessionConfig::forward(default_channel(42), 42);
    let zero = ber_sweep(&base, &[0.0], 10_000).map_err(|e| e.to_string())?;
    ensure(zero[0].ber == 0.0, || format!("ber(0) = {}", zero[0].ber))?;
    let heavy = ber_sweep(&base, &[10.0], 10_000).map_err(|e| e.to_string())?;
    ensure((0.45..=0.55).contains(&heavy[0].ber), || {
        format!("ber(10) = {}", heavy[0].ber)
    })?;
    let sweep = ber_sweep(&base, &[0.0, 0.3, 0.6, 1.0], 10_000).map_err(|e| e.to_string())?;
    let bers: Vec<f64> = sweep.iter().map(|p| p.ber).collect();
    ensure(bers.windows(2).all(|w| w[0] <= w[1]), || {
        format!("not monotone: {bers:?}")
    })?;
    Ok(format!("ber(10) = {}, sweep {bers:?}", heavy[0].ber))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_chanmod"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok([
        o.stdout,
        o.stderr,
        vec![o.status.code().unwrap_or(-1) as u8],
    ]
    .concat())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let (t1, t2, s1, s2) = (
        file("t1.csv"),
        file("t2.csv"),
        file("s1.csv"),
        file("s2.csv"),
    );
    let flags = [
        "--noise-sigma",
        "0.02",
        "--key-seed",
        "0xBEEF",
        "--noise-seed",
        "17",
        "--message",
        "OE1GAQ de OE1XTU",
    ];
    let mut outputs = Vec::new();
    for out in [&t1, &t2] {
        let mut args = vec!["transmit", "--out", out.as_str()];
        args.extend(flags);
        outputs.push(run_cli(&args)?);
    }
    ensure(outputs[0] == outputs[1], || {
        "transmit stdout differs".into()
    })?;
    let read = |p: &str| std::fs::read(p).map_err(|e| e.to_string());
    ensure(read(&t1)? == read(&t2)?, || "trace files differ".into())?;

    for out in [&s1, &s2] {
        run_cli(&[
            "sweep",
            "--sigmas",
            "0,0.5,1,2",
            "--bits",
            "2000",
            "--out",
            out,
        ])?;
    }
    ensure(read(&s1)? == read(&s2)?, || "sweep files differ".into())?;

    for cmd in [
        vec!["calibrate", "--noise-sigma", "0.01", "--noise-seed", "3"],
        vec!["eavesdrop", t1.as_str(), "--knows-tx", "--knows-rx"],
        vec!["eavesdrop", t1.as_str(), "--knows-tx"],
        vec!["transmit", "--mode", "reversed", "--no-feedback"],
    ] {
        ensure(run_cli(&cmd)? == run_cli(&cmd)?, || {
            format!("{cmd:?} output differs")
        })?;
    }
    Ok("transmit, sweep, calibrate, eavesdrop byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 zero-BER reproduction", zero_ber_reproduction),
        ("2 phase-class geometry", phase_class_geometry),
        ("3 calibration wrap check", calibration_wrap_check),
        ("4 pilot reversal mode equivalence", mode_equivalence),
        ("5 secrecy properties", secrecy_properties),
        ("6 channel equals message", channel_equals_message),
        ("7 detector under noise", detector_under_noise),
        ("8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
