//! Channel-modulation link simulator.
//!
//! Information is carried by which propagation channel the two antennas
//! jointly select, not by the transmitted waveform. The receiver's planned
//! antenna positions act as a one-time-pad key, channels are told apart by
//! hard decisions on the measured phase, and the sounding pilot may be sent
//! by either side.

pub mod channel;
pub mod cipher;
pub mod circular;
pub mod codec;
pub mod csv_format;
pub mod error;
pub mod geometry;
pub mod link;

pub use channel::{ChannelModel, Emitter, Measurement, ObserverPoint, SoundingDirection};
pub use cipher::KeyStream;
pub use codec::Bitstream;
pub use error::{Error, Result};
pub use geometry::{ChannelClass, LinkGeometry, PositionBit, Wavelength};
pub use link::{
    BerPoint, CalibrationTable, DecodedText, EavesdropOutcome, PilotMode, Session, SessionConfig,
    SessionSummary, SessionTrace, TraceRecord,
};
