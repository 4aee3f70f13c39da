//! Receiver position keystream and the XOR position rule.
//!
//! The receiver's planned positions are the key. The transmitter, knowing
//! them, places its own antenna at `message XOR key`, so the jointly
//! selected channel class equals the message bit while the transmit
//! position alone is uniformly distributed and independent of the message.

use crate::geometry::PositionBit;

const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
const INCREMENT: u64 = 1_442_695_040_888_963_407;

/// Deterministic key bit generator.
///
/// 64-bit linear congruential recurrence with Knuth's MMIX constants; each
/// step emits the most significant bit of the new state. Not
/// cryptographically secure: it stands in for a pre-shared pad so that
/// traces are reproducible from a seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyStream {
    seed: u64,
    state: u64,
    emitted: u64,
}

impl KeyStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            state: seed,
            emitted: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    pub fn next_key_bit(&mut self) -> bool {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.emitted += 1;
        self.state >> 63 == 1
    }
}

impl Iterator for KeyStream {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        Some(self.next_key_bit())
    }
}

/// Transmit antenna position: `message XOR key`.
pub fn tx_position_for(message_bit: bool, key_bit: bool) -> PositionBit {
    PositionBit::new(message_bit ^ key_bit)
}

/// The receive antenna position is the key bit itself.
pub fn rx_position_for(key_bit: bool) -> PositionBit {
    PositionBit::new(key_bit)
}

/// Message bit as recovered by anyone who sees both antenna positions.
pub fn recover_from_positions(p_tx: PositionBit, p_rx: PositionBit) -> bool {
    (p_tx ^ p_rx).is_displaced()
}
