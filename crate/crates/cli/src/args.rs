use std::path::PathBuf;

use chanmod::{ChannelModel, LinkGeometry, PilotMode, SessionConfig, Wavelength};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "chanmod", version, about = "Channel-modulation link simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Calibrate, send a message and write the per-bit trace.
    Transmit(TransmitArgs),
    /// Sound all four position pairs and print the reference phases.
    Calibrate(RunConfig),
    /// Bit error rate versus phase-noise sigma.
    Sweep(SweepArgs),
    /// Try to read a recorded trace from the positions an observer saw.
    Eavesdrop(EavesdropArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Forward,
    Reversed,
}

impl From<ModeArg> for PilotMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Forward => PilotMode::Forward,
            ModeArg::Reversed => PilotMode::Reversed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Carrier frequency in Hz.
    #[arg(long = "freq-hz", default_value_t = 2.45e9)]
    pub frequency_hz: f64,
    /// Antenna separation with both antennas at home, in meters.
    #[arg(long = "baseline-m", default_value_t = 1.0)]
    pub baseline_m: f64,
    /// Antenna displacement for a position bit of 1 [default: half a wavelength].
    #[arg(long = "displacement-m")]
    pub displacement_m: Option<f64>,
    /// Standard deviation of the additive phase noise, radians.
    #[arg(long = "noise-sigma", default_value_t = 0.0)]
    pub noise_sigma_rad: f64,
    /// Bound of the uniform per-antenna position jitter, meters.
    #[arg(long = "pos-jitter-m", default_value_t = ChannelModel::DEFAULT_POSITION_JITTER_M)]
    pub position_jitter_m: f64,
    /// Keystream seed, decimal or 0x-prefixed hex.
    #[arg(long = "key-seed", default_value = "1", value_parser = parse_seed)]
    pub key_seed: u64,
    /// Noise stream seed, decimal or 0x-prefixed hex.
    #[arg(long = "noise-seed", default_value = "0", value_parser = parse_seed)]
    pub noise_seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Forward)]
    pub mode: ModeArg,
    /// Measured phases reach the receiver in reversed mode (default).
    #[arg(long, overrides_with = "no_feedback")]
    pub feedback: bool,
    /// No feedback path in reversed mode.
    #[arg(long = "no-feedback")]
    pub no_feedback: bool,
}

impl RunConfig {
    pub fn session_config(&self) -> chanmod::Result<SessionConfig> {
        self.session_config_with_sigma(self.noise_sigma_rad)
    }

    pub fn session_config_with_sigma(&self, sigma: f64) -> chanmod::Result<SessionConfig> {
        let wl = Wavelength::from_frequency(self.frequency_hz)?;
        let displacement = self.displacement_m.unwrap_or(wl.lambda_m() / 2.0);
        let geometry = LinkGeometry::new(wl, self.baseline_m, displacement)?;
        let channel = ChannelModel::new(geometry, sigma, self.position_jitter_m, self.noise_seed)?;
        Ok(SessionConfig {
            channel,
            key_seed: self.key_seed,
            mode: self.mode.into(),
            feedback_available: !self.no_feedback,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct TransmitArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// ASCII text to send.
    #[arg(long, default_value = "OE1GAQ")]
    pub message: String,
    /// Trace CSV output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Comma-separated phase-noise sigmas in radians.
    #[arg(long, value_parser = parse_sigmas)]
    pub sigmas: Sigmas,
    /// Bits per sweep point.
    #[arg(long, default_value_t = 10_000)]
    pub bits: usize,
    /// Sweep CSV output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EavesdropArgs {
    /// Trace CSV written by `chanmod transmit`.
    pub trace: PathBuf,
    /// The observer sees the transmit antenna.
    #[arg(long = "knows-tx")]
    pub knows_tx: bool,
    /// The observer sees the receive antenna.
    #[arg(long = "knows-rx")]
    pub knows_rx: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sigmas(pub Vec<f64>);

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

pub fn parse_sigmas(s: &str) -> Result<Sigmas, String> {
    let values = s
        .split(',')
        .map(|part| {
            let part = part.trim();
            match part.parse::<f64>() {
                Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
                _ => Err(format!(
                    "invalid sigma {part:?}: expected a non-negative number"
                )),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sigmas(values))
}
