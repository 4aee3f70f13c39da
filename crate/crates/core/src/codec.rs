//! ASCII framing and the bit to channel-class mapping.
//!
//! Each character becomes eight bits, most significant first. There is no
//! parity or sync word; the link is symbol-synchronous.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::ChannelClass;

/// An ordered sequence of bits.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Bitstream(Vec<bool>);

impl Bitstream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn into_inner(self) -> Vec<bool> {
        self.0
    }
}

impl From<Vec<bool>> for Bitstream {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

impl FromIterator<bool> for Bitstream {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for Bitstream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn encode_ascii(text: &str) -> Result<Bitstream> {
    let mut bits = Vec::with_capacity(8 * text.len());
    for (index, ch) in text.chars().enumerate() {
        if !ch.is_ascii() {
            return Err(Error::NonAscii { index, ch });
        }
        let byte = ch as u8;
        bits.extend((0..8).rev().map(|i| (byte >> i) & 1 == 1));
    }
    Ok(Bitstream(bits))
}

pub fn decode_ascii(bits: &[bool]) -> Result<String> {
    if !bits.len().is_multiple_of(8) {
        return Err(Error::RaggedBitstream(bits.len()));
    }
    bits.chunks_exact(8)
        .enumerate()
        .map(|(index, chunk)| {
            let value = chunk.iter().fold(0u8, |acc, &b| (acc << 1) | u8::from(b));
            if value > 127 {
                Err(Error::ByteOutOfRange { index, value })
            } else {
                Ok(char::from(value))
            }
        })
        .collect()
}

/// 0 selects the same-position class, 1 the alternating class.
pub fn bit_to_channel(bit: bool) -> ChannelClass {
    ChannelClass::from_bit(bit)
}

pub fn channel_to_bit(class: ChannelClass) -> bool {
    class.bit()
}
