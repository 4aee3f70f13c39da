use thiserror::Error;

/// Errors produced by the link simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("phase must be finite, got {0}")]
    NonFinitePhase(f64),

    #[error("non-ASCII character {ch:?} at index {index}")]
    NonAscii { index: usize, ch: char },

    #[error("bitstream length {0} is not a multiple of 8")]
    RaggedBitstream(usize),

    #[error("byte {index} has value {value} > 127")]
    ByteOutOfRange { index: usize, value: u8 },

    #[error("observer is within 1e-6 m of the emitting antenna (distance {distance_m:e} m)")]
    ObserverCoincident { distance_m: f64 },

    #[error("calibration failed: {class} class spread {spread:.6} rad exceeds tolerance {tolerance:.6} rad")]
    CalibrationSpread {
        class: &'static str,
        spread: f64,
        tolerance: f64,
    },

    #[error(
        "calibration failed: class separation {separation:.6} rad is not above {required:.6} rad"
    )]
    CalibrationSeparation { separation: f64, required: f64 },

    #[error("session is not calibrated")]
    NotCalibrated,

    #[error("malformed trace at line {line}: {reason}")]
    MalformedTrace { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
