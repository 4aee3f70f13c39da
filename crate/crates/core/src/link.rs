//! Session state machine for the channel-modulation link.
//!
//! A session first calibrates: it sounds all four position combinations
//! and stores one reference phase per channel class. Each message bit is
//! then sent by placing the receive antenna at the key bit and the
//! transmit antenna at `message XOR key`, sounding once, and deciding the
//! class by the nearer reference phase on the circle.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{ChannelModel, SoundingDirection};
use crate::cipher::{self, KeyStream};
use crate::circular::{circular_distance, circular_mean, circular_spread};
use crate::codec;
use crate::error::{invalid, Error, Result};
use crate::geometry::{self, ChannelClass, PositionBit};

/// Reference phases of the two channel classes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationTable {
    pub phi_same: f64,
    pub phi_alt: f64,
    pub class_separation: f64,
    pub consistency_tolerance: f64,
    /// Circular spread measured within each class during calibration.
    pub same_spread: f64,
    pub alt_spread: f64,
}

impl CalibrationTable {
    pub const DEFAULT_TOLERANCE: f64 = 0.1;

    /// Builds a table from known reference phases.
    pub fn from_references(
        phi_same: f64,
        phi_alt: f64,
        consistency_tolerance: f64,
    ) -> Result<Self> {
        check_tolerance(consistency_tolerance)?;
        let phi_same = geometry::wrap_phase(phi_same)?;
        let phi_alt = geometry::wrap_phase(phi_alt)?;
        let class_separation = circular_distance(phi_same, phi_alt);
        check_separation(class_separation, consistency_tolerance)?;
        Ok(Self {
            phi_same,
            phi_alt,
            class_separation,
            consistency_tolerance,
            same_spread: 0.0,
            alt_spread: 0.0,
        })
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(invalid(
            "consistency_tolerance",
            format!("must be positive, got {tol}"),
        ))
    }
}

fn check_separation(separation: f64, tol: f64) -> Result<()> {
    if separation > 2.0 * tol {
        Ok(())
    } else {
        Err(Error::CalibrationSeparation {
            separation,
            required: 2.0 * tol,
        })
    }
}

/// Calibrates with the default consistency tolerance.
pub fn calibrate(channel: &mut ChannelModel) -> Result<CalibrationTable> {
    calibrate_with_tolerance(channel, CalibrationTable::DEFAULT_TOLERANCE)
}

/// Sounds (0,0), (0,1), (1,0), (1,1) once each in the forward direction.
///
/// Both members of a class must agree to within the tolerance, which for the
/// same-position class means the wavelength-longer path wraps onto the
/// direct one.
pub fn calibrate_with_tolerance(
    channel: &mut ChannelModel,
    consistency_tolerance: f64,
) -> Result<CalibrationTable> {
    check_tolerance(consistency_tolerance)?;
    let (p0, p1) = (PositionBit::HOME, PositionBit::DISPLACED);
    let mut sound = |a, b| channel.sound(a, b, SoundingDirection::Forward).phase_rad;
    let s00 = sound(p0, p0);
    let s01 = sound(p0, p1);
    let s10 = sound(p1, p0);
    let s11 = sound(p1, p1);

    let class_ref = |class: &'static str, members: [f64; 2]| -> Result<(f64, f64)> {
        let spread = circular_spread(&members);
        let mean = circular_mean(&members);
        match mean {
            Some(m) if spread <= consistency_tolerance => Ok((m, spread)),
            _ => Err(Error::CalibrationSpread {
                class,
                spread,
                tolerance: consistency_tolerance,
            }),
        }
    };
    let (phi_same, same_spread) = class_ref("same-position", [s00, s11])?;
    let (phi_alt, alt_spread) = class_ref("alternating", [s01, s10])?;
    let class_separation = circular_distance(phi_same, phi_alt);
    check_separation(class_separation, consistency_tolerance)?;
    Ok(CalibrationTable {
        phi_same,
        phi_alt,
        class_separation,
        consistency_tolerance,
        same_spread,
        alt_spread,
    })
}

/// Hard decision: the class whose reference phase is nearer on the circle.
/// Ties go to the same-position class.
pub fn decide(phase: f64, table: &CalibrationTable) -> ChannelClass {
    if circular_distance(phase, table.phi_same) <= circular_distance(phase, table.phi_alt) {
        ChannelClass::Same
    } else {
        ChannelClass::Alternating
    }
}

/// Who emits the sounding pilot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PilotMode {
    /// The transmitter emits and the receiver measures.
    Forward,
    /// The receiver emits; the passive transmitter side measures and the
    /// result only reaches the receiver over a feedback path.
    Reversed,
}

impl PilotMode {
    pub fn direction(self) -> SoundingDirection {
        match self {
            PilotMode::Forward => SoundingDirection::Forward,
            PilotMode::Reversed => SoundingDirection::Reverse,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PilotMode::Forward => "forward",
            PilotMode::Reversed => "reversed",
        }
    }
}

impl fmt::Display for PilotMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for PilotMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(PilotMode::Forward),
            "reversed" => Ok(PilotMode::Reversed),
            other => Err(invalid(
                "mode",
                format!("expected forward or reversed, got {other:?}"),
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub channel: ChannelModel,
    pub key_seed: u64,
    pub mode: PilotMode,
    /// Only consulted in [`PilotMode::Reversed`].
    pub feedback_available: bool,
}

impl SessionConfig {
    pub fn forward(channel: ChannelModel, key_seed: u64) -> Self {
        Self {
            channel,
            key_seed,
            mode: PilotMode::Forward,
            feedback_available: true,
        }
    }

    pub fn reversed(channel: ChannelModel, key_seed: u64, feedback_available: bool) -> Self {
        Self {
            channel,
            key_seed,
            mode: PilotMode::Reversed,
            feedback_available,
        }
    }

    /// Whether measured phases reach the receiver's decoder.
    pub fn receiver_has_measurements(&self) -> bool {
        match self.mode {
            PilotMode::Forward => true,
            PilotMode::Reversed => self.feedback_available,
        }
    }

    pub fn summary(&self) -> SessionSummary {
        let g = self.channel.geometry();
        SessionSummary {
            frequency_hz: g.wavelength().carrier_frequency_hz(),
            baseline_m: g.baseline_m(),
            displacement_m: g.displacement_m(),
            noise_sigma_rad: self.channel.phase_noise_sigma_rad(),
            position_jitter_m: self.channel.position_jitter_m(),
            key_seed: self.key_seed,
            noise_seed: self.channel.noise_seed(),
            mode: self.mode,
            feedback_available: self.feedback_available,
        }
    }
}

/// Parameters a trace was produced with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SessionSummary {
    pub frequency_hz: f64,
    pub baseline_m: f64,
    pub displacement_m: f64,
    pub noise_sigma_rad: f64,
    pub position_jitter_m: f64,
    pub key_seed: u64,
    pub noise_seed: u64,
    pub mode: PilotMode,
    pub feedback_available: bool,
}

/// One transmitted bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub index: usize,
    pub message_bit: bool,
    pub key_bit: bool,
    pub tx_pos: PositionBit,
    pub rx_pos: PositionBit,
    pub true_channel: ChannelClass,
    /// Noiseless phase of the selected geometry.
    pub true_phase_rad: f64,
    pub measured_phase_rad: f64,
    /// `None` when the receiver never sees the measurement.
    pub decided_channel: Option<ChannelClass>,
    pub decoded_bit: Option<bool>,
}

impl TraceRecord {
    pub fn is_error(&self) -> bool {
        self.decoded_bit != Some(self.message_bit)
    }
}

/// What the receiver made of the session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodedText {
    Text(String),
    /// Reversed pilot without a feedback path.
    NoFeedback,
    /// Bits arrived but do not form ASCII.
    Undecodable,
}

impl DecodedText {
    pub const NO_FEEDBACK: &'static str = "NO_FEEDBACK";
    pub const UNDECODABLE: &'static str = "UNDECODABLE";

    pub fn text(&self) -> Option<&str> {
        match self {
            DecodedText::Text(t) => Some(t),
            _ => None,
        }
    }

    fn from_records(records: &[TraceRecord]) -> Self {
        let bits: Option<Vec<bool>> = records.iter().map(|r| r.decoded_bit).collect();
        match bits {
            None => DecodedText::NoFeedback,
            Some(bits) => match codec::decode_ascii(&bits) {
                Ok(t) => DecodedText::Text(t),
                Err(_) => DecodedText::Undecodable,
            },
        }
    }
}

impl fmt::Display for DecodedText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodedText::Text(t) => f.write_str(t),
            DecodedText::NoFeedback => f.write_str(Self::NO_FEEDBACK),
            DecodedText::Undecodable => f.write_str(Self::UNDECODABLE),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionTrace {
    pub summary: SessionSummary,
    pub calibration: CalibrationTable,
    pub message: String,
    pub records: Vec<TraceRecord>,
    pub decoded_text: DecodedText,
    pub bit_errors: usize,
}

impl SessionTrace {
    /// Assembles a trace, deriving the decoded text and error count from
    /// the records.
    pub fn from_records(
        summary: SessionSummary,
        calibration: CalibrationTable,
        message: String,
        records: Vec<TraceRecord>,
    ) -> Self {
        let bit_errors = records.iter().filter(|r| r.is_error()).count();
        let decoded_text = DecodedText::from_records(&records);
        Self {
            summary,
            calibration,
            message,
            records,
            decoded_text,
            bit_errors,
        }
    }

    pub fn delivered(&self) -> bool {
        self.decoded_text.text() == Some(self.message.as_str())
    }
}

/// A running link session.
#[derive(Debug)]
pub struct Session {
    config: SessionConfig,
    keys: KeyStream,
    calibration: Option<CalibrationTable>,
    records: Vec<TraceRecord>,
}

impl Session {
    pub fn new(config: SessionConfig) -> Self {
        Self {
            keys: KeyStream::new(config.key_seed),
            config,
            calibration: None,
            records: Vec::new(),
        }
    }

    /// Starts a session from a previously measured table.
    pub fn with_calibration(config: SessionConfig, table: CalibrationTable) -> Self {
        let mut s = Self::new(config);
        s.calibration = Some(table);
        s
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn calibration(&self) -> Option<&CalibrationTable> {
        self.calibration.as_ref()
    }

    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn calibrate(&mut self) -> Result<CalibrationTable> {
        let table = calibrate(&mut self.config.channel)?;
        self.calibration = Some(table);
        Ok(table)
    }

    pub fn send_bit(&mut self, message_bit: bool) -> Result<&TraceRecord> {
        let table = self.calibration.ok_or(Error::NotCalibrated)?;
        let key_bit = self.keys.next_key_bit();
        let rx_pos = cipher::rx_position_for(key_bit);
        let tx_pos = cipher::tx_position_for(message_bit, key_bit);
        let channel = &mut self.config.channel;
        let measured = channel.sound(tx_pos, rx_pos, self.config.mode.direction());
        let true_phase_rad = geometry::propagation_phase(channel.geometry(), tx_pos, rx_pos);
        let decided_channel = self
            .config
            .receiver_has_measurements()
            .then(|| decide(measured.phase_rad, &table));
        self.records.push(TraceRecord {
            index: self.records.len(),
            message_bit,
            key_bit,
            tx_pos,
            rx_pos,
            true_channel: geometry::channel_bit(tx_pos, rx_pos),
            true_phase_rad,
            measured_phase_rad: measured.phase_rad,
            decided_channel,
            decoded_bit: decided_channel.map(codec::channel_to_bit),
        });
        Ok(self.records.last().expect("just pushed"))
    }

    pub fn finish(self, message: String) -> Result<SessionTrace> {
        let calibration = self.calibration.ok_or(Error::NotCalibrated)?;
        Ok(SessionTrace::from_records(
            self.config.summary(),
            calibration,
            message,
            self.records,
        ))
    }
}

/// Calibrates, then sends `text` one bit per sounding.
pub fn transmit(config: SessionConfig, text: &str) -> Result<SessionTrace> {
    let bits = codec::encode_ascii(text)?;
    let mut session = Session::new(config);
    session.calibrate()?;
    for bit in bits.iter() {
        session.send_bit(bit)?;
    }
    session.finish(text.to_owned())
}

/// Result of a third party trying to read a session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EavesdropOutcome {
    Decoded(String),
    Indeterminate,
}

impl EavesdropOutcome {
    pub const INDETERMINATE: &'static str = "INDETERMINATE";
    pub const EXPLANATION: &'static str = "for any message of this length there is exactly one \
receive-position sequence that maps it onto the observed transmit positions, so every message \
is equally consistent with what was seen";
}

impl fmt::Display for EavesdropOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EavesdropOutcome::Decoded(t) => f.write_str(t),
            EavesdropOutcome::Indeterminate => f.write_str(Self::INDETERMINATE),
        }
    }
}

/// Decodes a trace from the antenna positions an observer could see.
///
/// Only an observer who sees both antennas learns anything: with one side
/// hidden the visible positions are a one-time-pad ciphertext.
pub fn eavesdrop(
    trace: &SessionTrace,
    knows_tx_positions: bool,
    knows_rx_positions: bool,
) -> Result<EavesdropOutcome> {
    if !(knows_tx_positions && knows_rx_positions) {
        return Ok(EavesdropOutcome::Indeterminate);
    }
    let bits: Vec<bool> = trace
        .records
        .iter()
        .map(|r| cipher::recover_from_positions(r.tx_pos, r.rx_pos))
        .collect();
    Ok(EavesdropOutcome::Decoded(codec::decode_ascii(&bits)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerPoint {
    pub sigma_rad: f64,
    pub bits: usize,
    pub errors: usize,
    pub ber: f64,
}

pub const MIN_BITS_PER_POINT: usize = 1000;

/// Bit error rate of one sweep point.
///
/// Point `index` uses noise seed `base + index` and key seed `base + index`.
/// Message bits are drawn from a separate stream of the point's noise seed.
/// The reference phases come from a noiseless sounding of the same
/// geometry, so the detector is judged against the true class references.
pub fn ber_point(
    base: &SessionConfig,
    sigma_rad: f64,
    index: u64,
    bits_per_point: usize,
) -> Result<BerPoint> {
    if bits_per_point < MIN_BITS_PER_POINT {
        return Err(invalid(
            "bits_per_point",
            format!("must be at least {MIN_BITS_PER_POINT}, got {bits_per_point}"),
        ));
    }
    if !base.receiver_has_measurements() {
        return Err(invalid(
            "feedback_available",
            "reversed pilot without feedback gives the receiver nothing to measure",
        ));
    }
    let noise_seed = base.channel.noise_seed().wrapping_add(index);
    let channel = ChannelModel::new(
        *base.channel.geometry(),
        sigma_rad,
        base.channel.position_jitter_m(),
        noise_seed,
    )?;
    let table = calibrate(&mut channel.noiseless())?;
    let config = SessionConfig {
        channel,
        key_seed: base.key_seed.wrapping_add(index),
        ..base.clone()
    };
    let mut message = ChaCha8Rng::seed_from_u64(noise_seed);
    message.set_stream(1);
    let mut session = Session::with_calibration(config, table);
    let mut errors = 0;
    for _ in 0..bits_per_point {
        let bit: bool = message.random();
        if session.send_bit(bit)?.is_error() {
            errors += 1;
        }
    }
    Ok(BerPoint {
        sigma_rad,
        bits: bits_per_point,
        errors,
        ber: errors as f64 / bits_per_point as f64,
    })
}

/// Runs [`ber_point`] for every sigma, in parallel. Output order and values
/// match a serial run.
pub fn ber_sweep(
    base: &SessionConfig,
    sigmas: &[f64],
    bits_per_point: usize,
) -> Result<Vec<BerPoint>> {
    if let Some(bad) = sigmas.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
        return Err(invalid(
            "sigma",
            format!("must be finite and non-negative, got {bad}"),
        ));
    }
    sigmas
        .par_iter()
        .enumerate()
        .map(|(i, &s)| ber_point(base, s, i as u64, bits_per_point))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::LinkGeometry;
    use std::f64::consts::{PI, TAU};

    fn ideal() -> ChannelModel {
        ChannelModel::ideal(LinkGeometry::default(), 0)
    }

    #[test]
    fn ideal_calibration() {
        let mut ch = ideal();
        let t = calibrate(&mut ch).unwrap();
        assert!((t.class_separation - PI).abs() < 1e-9);
        assert!(t.same_spread < 1e-9 && t.alt_spread < 1e-9);
        let p00 = ideal().sound(
            PositionBit::HOME,
            PositionBit::HOME,
            SoundingDirection::Forward,
        );
        assert!(circular_distance(t.phi_same, p00.phase_rad) < 1e-9);
    }

    #[test]
    fn heavy_noise_breaks_calibration() {
        let g = LinkGeometry::default();
        let failures = (0..100u64)
            .filter(|&seed| {
                let mut ch = ChannelModel::new(g, 5.0, 0.0, seed).unwrap();
                calibrate(&mut ch).is_err()
            })
            .count();
        assert!(failures >= 95, "{failures}");
    }

    #[test]
    fn spread_failure_names_class() {
        let g = LinkGeometry::default();
        // the (1,1) path is 0.9 λ longer instead of λ: classes no longer wrap
        let bad = LinkGeometry::new(g.wavelength(), 1.0, 0.45 * g.lambda_m()).unwrap();
        let err = calibrate(&mut ChannelModel::ideal(bad, 0)).unwrap_err();
        assert!(
            matches!(
                err,
                Error::CalibrationSpread {
                    class: "same-position",
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn separation_failure() {
        assert!(matches!(
            CalibrationTable::from_references(0.0, 0.15, 0.1),
            Err(Error::CalibrationSeparation { .. })
        ));
        assert!(CalibrationTable::from_references(0.0, 0.25, 0.1).is_ok());
    }

    #[test]
    fn decide_examples() {
        let t = CalibrationTable::from_references(0.0, PI, 0.1).unwrap();
        assert_eq!(decide(t.phi_same, &t), ChannelClass::Same);
        assert_eq!(decide(t.phi_alt, &t), ChannelClass::Alternating);
        assert_eq!(decide(PI / 2.0, &t), ChannelClass::Same);
        assert_eq!(decide(1.5 * PI, &t), ChannelClass::Same);
        assert_eq!(decide(PI / 2.0 + 1e-9, &t), ChannelClass::Alternating);
    }

    #[test]
    fn decision_boundary_has_two_crossings() {
        for (same, alt) in [(0.0, PI), (1.0, 1.0 + PI), (5.9, 2.3), (0.2, 1.9)] {
            let t = CalibrationTable::from_references(same, alt, 0.1).unwrap();
            let n = 10_000;
            let d: Vec<ChannelClass> = (0..n)
                .map(|i| decide(TAU * i as f64 / n as f64, &t))
                .collect();
            let flips = (0..n).filter(|&i| d[i] != d[(i + 1) % n]).count();
            assert_eq!(flips, 2, "({same}, {alt})");
        }
    }

    #[test]
    fn send_requires_calibration() {
        let mut s = Session::new(SessionConfig::forward(ideal(), 1));
        assert_eq!(s.send_bit(true).unwrap_err(), Error::NotCalibrated);
    }

    #[test]
    fn ideal_transmission() {
        let trace = transmit(SessionConfig::forward(ideal(), 7), "OE1GAQ").unwrap();
        assert_eq!(trace.records.len(), 48);
        assert_eq!(trace.bit_errors, 0);
        assert_eq!(trace.decoded_text, DecodedText::Text("OE1GAQ".into()));
        assert!(trace.delivered());
        for r in &trace.records {
            assert_eq!(r.true_channel.bit(), r.message_bit);
            assert_eq!(r.true_channel, geometry::channel_bit(r.tx_pos, r.rx_pos));
            assert_eq!(r.decoded_bit, r.decided_channel.map(|c| c.bit()));
        }
    }

    #[test]
    fn empty_message() {
        let trace = transmit(SessionConfig::forward(ideal(), 7), "").unwrap();
        assert!(trace.records.is_empty());
        assert_eq!(trace.decoded_text, DecodedText::Text(String::new()));
        assert_eq!(trace.bit_errors, 0);
    }

    #[test]
    fn non_ascii_rejected() {
        assert!(matches!(
            transmit(SessionConfig::forward(ideal(), 7), "\u{3c0}"),
            Err(Error::NonAscii { index: 0, .. })
        ));
    }

    #[test]
    fn reversed_without_feedback() {
        let trace = transmit(SessionConfig::reversed(ideal(), 7, false), "OE1GAQ").unwrap();
        assert_eq!(trace.decoded_text, DecodedText::NoFeedback);
        assert_eq!(trace.decoded_text.to_string(), "NO_FEEDBACK");
        assert_eq!(trace.bit_errors, 48);
        assert!(!trace.delivered());
        assert!(trace
            .records
            .iter()
            .all(|r| r.true_channel.bit() == r.message_bit));
    }

    #[test]
    fn reversed_with_feedback_matches_forward() {
        let ch = ChannelModel::new(LinkGeometry::default(), 0.05, 0.02e-3, 31).unwrap();
        let fwd = transmit(SessionConfig::forward(ch.clone(), 9), "pilot").unwrap();
        let rev = transmit(SessionConfig::reversed(ch, 9, true), "pilot").unwrap();
        assert_eq!(fwd.records, rev.records);
        assert_eq!(fwd.decoded_text, rev.decoded_text);
        assert_eq!(fwd.calibration, rev.calibration);
    }

    #[test]
    fn eavesdrop_needs_both_positions() {
        let trace = transmit(SessionConfig::forward(ideal(), 3), "OE1GAQ").unwrap();
        assert_eq!(
            eavesdrop(&trace, true, true).unwrap(),
            EavesdropOutcome::Decoded("OE1GAQ".into())
        );
        assert_eq!(
            eavesdrop(&trace, true, false).unwrap(),
            EavesdropOutcome::Indeterminate
        );
        assert_eq!(
            eavesdrop(&trace, false, true).unwrap(),
            EavesdropOutcome::Indeterminate
        );
        assert_eq!(
            eavesdrop(&trace, false, false).unwrap(),
            EavesdropOutcome::Indeterminate
        );
    }

    #[test]
    fn sweep_rejects_bad_input() {
        let base = SessionConfig::forward(ideal(), 1);
        assert!(ber_sweep(&base, &[0.1, -0.2], 1000).is_err());
        assert!(ber_sweep(&base, &[0.1], 999).is_err());
        let no_fb = SessionConfig::reversed(ideal(), 1, false);
        assert!(ber_sweep(&no_fb, &[0.1], 1000).is_err());
    }

    #[test]
    fn sweep_is_serial_equivalent() {
        let ch = ChannelModel::new(LinkGeometry::default(), 0.0, 0.02e-3, 100).unwrap();
        let base = SessionConfig::forward(ch, 200);
        let sigmas = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0];
        let parallel = ber_sweep(&base, &sigmas, 2000).unwrap();
        let serial: Vec<BerPoint> = sigmas
            .iter()
            .enumerate()
            .map(|(i, &s)| ber_point(&base, s, i as u64, 2000).unwrap())
            .collect();
        assert_eq!(parallel, serial);
        assert_eq!(parallel[0].ber, 0.0);
    }
}
