//! Path-length and phase mathematics for two antennas on a common axis.
//!
//! The transmit antenna sits at the origin and the receive antenna at
//! `baseline_m` along +x. A position bit of 1 moves an antenna by
//! `displacement_m` away from the other one, so every displaced antenna
//! lengthens the direct path by the same amount.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::BitXor;

use crate::error::{invalid, Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Carrier frequency and the matching free-space wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavelength {
    carrier_frequency_hz: f64,
    lambda_m: f64,
}

impl Wavelength {
    pub fn from_frequency(carrier_frequency_hz: f64) -> Result<Self> {
        if !(carrier_frequency_hz.is_finite() && carrier_frequency_hz > 0.0) {
            return Err(invalid(
                "carrier_frequency_hz",
                format!("must be positive and finite, got {carrier_frequency_hz}"),
            ));
        }
        Ok(Self {
            carrier_frequency_hz,
            lambda_m: SPEED_OF_LIGHT / carrier_frequency_hz,
        })
    }

    pub fn carrier_frequency_hz(&self) -> f64 {
        self.carrier_frequency_hz
    }

    pub fn lambda_m(&self) -> f64 {
        self.lambda_m
    }
}

/// Position of one antenna: home (0) or displaced away from the peer (1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PositionBit(bool);

impl PositionBit {
    pub const HOME: Self = Self(false);
    pub const DISPLACED: Self = Self(true);
    pub const ALL: [Self; 2] = [Self::HOME, Self::DISPLACED];

    pub const fn new(displaced: bool) -> Self {
        Self(displaced)
    }

    pub const fn is_displaced(self) -> bool {
        self.0
    }

    /// 0 or 1.
    pub const fn value(self) -> u8 {
        self.0 as u8
    }
}

impl From<bool> for PositionBit {
    fn from(b: bool) -> Self {
        Self(b)
    }
}

impl From<PositionBit> for bool {
    fn from(p: PositionBit) -> bool {
        p.0
    }
}

impl BitXor for PositionBit {
    type Output = PositionBit;

    fn bitxor(self, rhs: Self) -> Self {
        Self(self.0 ^ rhs.0)
    }
}

impl fmt::Display for PositionBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The two observable channel classes.
///
/// `Same` covers the equal-position geometries (the direct path and the
/// one a full wavelength longer); `Alternating` covers the two geometries
/// with exactly one antenna displaced. The classes sit half a turn apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelClass {
    Same,
    Alternating,
}

impl ChannelClass {
    pub const fn from_bit(bit: bool) -> Self {
        if bit {
            Self::Alternating
        } else {
            Self::Same
        }
    }

    pub const fn bit(self) -> bool {
        matches!(self, Self::Alternating)
    }

    pub const fn value(self) -> u8 {
        self.bit() as u8
    }
}

impl fmt::Display for ChannelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Collinear two-antenna arrangement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    wavelength: Wavelength,
    baseline_m: f64,
    displacement_m: f64,
}

impl LinkGeometry {
    pub const DEFAULT_BASELINE_M: f64 = 1.0;

    pub fn new(wavelength: Wavelength, baseline_m: f64, displacement_m: f64) -> Result<Self> {
        check_positive("baseline_m", baseline_m)?;
        check_positive("displacement_m", displacement_m)?;
        Ok(Self {
            wavelength,
            baseline_m,
            displacement_m,
        })
    }

    /// Geometry with the half-wavelength displacement.
    pub fn half_wave(wavelength: Wavelength, baseline_m: f64) -> Result<Self> {
        Self::new(wavelength, baseline_m, wavelength.lambda_m() / 2.0)
    }

    pub fn wavelength(&self) -> Wavelength {
        self.wavelength
    }

    pub fn lambda_m(&self) -> f64 {
        self.wavelength.lambda_m
    }

    pub fn baseline_m(&self) -> f64 {
        self.baseline_m
    }

    pub fn displacement_m(&self) -> f64 {
        self.displacement_m
    }

    /// x coordinate of the transmit antenna (displacement along -x).
    pub fn tx_x(&self, p: PositionBit) -> f64 {
        -self.displacement_m * f64::from(p.value())
    }

    /// x coordinate of the receive antenna (displacement along +x).
    pub fn rx_x(&self, p: PositionBit) -> f64 {
        self.baseline_m + self.displacement_m * f64::from(p.value())
    }
}

impl Default for LinkGeometry {
    /// 2.45 GHz carrier, 1 m baseline, half-wavelength displacement.
    fn default() -> Self {
        let wl = Wavelength::from_frequency(2.45e9).expect("constant frequency");
        Self::half_wave(wl, Self::DEFAULT_BASELINE_M).expect("constant geometry")
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(
            name,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

pub fn path_length(geom: &LinkGeometry, p_tx: PositionBit, p_rx: PositionBit) -> f64 {
    geom.baseline_m + geom.displacement_m * f64::from(p_tx.value() + p_rx.value())
}

/// Reduces a phase to `[0, 2π)`.
pub fn wrap_phase(phi: f64) -> Result<f64> {
    if !phi.is_finite() {
        return Err(Error::NonFinitePhase(phi));
    }
    Ok(wrap_finite(phi))
}

pub(crate) fn wrap_finite(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly 2π
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Phase delay `-2πL/λ` of a path of length `length_m`, wrapped.
pub fn phase_of_length(geom: &LinkGeometry, length_m: f64) -> f64 {
    wrap_finite(-TAU * length_m / geom.lambda_m())
}

pub fn propagation_phase(geom: &LinkGeometry, p_tx: PositionBit, p_rx: PositionBit) -> f64 {
    phase_of_length(geom, path_length(geom, p_tx, p_rx))
}

/// Channel class jointly selected by the two antenna positions.
pub fn channel_bit(p_tx: PositionBit, p_rx: PositionBit) -> ChannelClass {
    ChannelClass::from_bit((p_tx ^ p_rx).is_displaced())
}
