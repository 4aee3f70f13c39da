//! Stochastic channel sounding.
//!
//! A [`ChannelModel`] turns a joint antenna position choice into a measured
//! phase. Each call to [`ChannelModel::sound`] or [`ChannelModel::observe`]
//! consumes exactly three draws from the model's noise stream, in this order:
//! transmit-antenna jitter, receive-antenna jitter, phase noise. The draws are
//! taken even when the corresponding magnitude is zero, and regardless of the
//! sounding direction, so runs that differ only in direction or noise level
//! stay aligned draw for draw.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};
use crate::geometry::{self, LinkGeometry, PositionBit};

/// Which side emits the sounding pilot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoundingDirection {
    /// Transmitter emits, receiver measures (S21).
    Forward,
    /// Receiver emits, transmitter measures (S12).
    Reverse,
}

/// Which antenna an outside observer listens to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Emitter {
    TxAntenna,
    RxAntenna,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub phase_rad: f64,
    /// Linear amplitude relative to the baseline path. Detection ignores it.
    pub amplitude: f64,
}

/// A point in the plane of the antenna axis. The transmit antenna's home
/// position is the origin and the receive antenna's home is `(baseline_m, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObserverPoint {
    pub x_m: f64,
    pub y_m: f64,
}

impl ObserverPoint {
    pub const MIN_DISTANCE_M: f64 = 1e-6;

    pub fn new(x_m: f64, y_m: f64) -> Self {
        Self { x_m, y_m }
    }

    fn distance_to_axis_point(&self, x: f64) -> f64 {
        (self.x_m - x).hypot(self.y_m)
    }
}

#[derive(Debug, Clone)]
pub struct ChannelModel {
    geometry: LinkGeometry,
    phase_noise_sigma_rad: f64,
    position_jitter_m: f64,
    noise_seed: u64,
    rng: ChaCha8Rng,
}

struct Draws {
    tx_offset_m: f64,
    rx_offset_m: f64,
    phase_noise_rad: f64,
}

impl ChannelModel {
    /// CNC positioning precision, used as the default jitter bound.
    pub const DEFAULT_POSITION_JITTER_M: f64 = 0.02e-3;

    pub fn new(
        geometry: LinkGeometry,
        phase_noise_sigma_rad: f64,
        position_jitter_m: f64,
        noise_seed: u64,
    ) -> Result<Self> {
        if !(phase_noise_sigma_rad.is_finite() && phase_noise_sigma_rad >= 0.0) {
            return Err(invalid(
                "phase_noise_sigma_rad",
                format!("must be finite and non-negative, got {phase_noise_sigma_rad}"),
            ));
        }
        if !(position_jitter_m.is_finite() && position_jitter_m >= 0.0) {
            return Err(invalid(
                "position_jitter_m",
                format!("must be finite and non-negative, got {position_jitter_m}"),
            ));
        }
        Ok(Self {
            geometry,
            phase_noise_sigma_rad,
            position_jitter_m,
            noise_seed,
            rng: ChaCha8Rng::seed_from_u64(noise_seed),
        })
    }

    /// A model without phase noise or jitter.
    pub fn ideal(geometry: LinkGeometry, noise_seed: u64) -> Self {
        Self::new(geometry, 0.0, 0.0, noise_seed).expect("zero noise is valid")
    }

    pub fn geometry(&self) -> &LinkGeometry {
        &self.geometry
    }

    pub fn phase_noise_sigma_rad(&self) -> f64 {
        self.phase_noise_sigma_rad
    }

    pub fn position_jitter_m(&self) -> f64 {
        self.position_jitter_m
    }

    pub fn noise_seed(&self) -> u64 {
        self.noise_seed
    }

    /// Fresh model with the same parameters and a different seed.
    pub fn reseeded(&self, noise_seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(noise_seed),
            noise_seed,
            ..self.clone()
        }
    }

    /// Same geometry and seed with noise and jitter switched off.
    pub fn noiseless(&self) -> Self {
        Self::ideal(self.geometry, self.noise_seed)
    }

    fn draw(&mut self) -> Draws {
        let u_tx: f64 = self.rng.random_range(-1.0..=1.0);
        let u_rx: f64 = self.rng.random_range(-1.0..=1.0);
        let z: f64 = self.rng.sample(StandardNormal);
        Draws {
            tx_offset_m: u_tx * self.position_jitter_m,
            rx_offset_m: u_rx * self.position_jitter_m,
            phase_noise_rad: z * self.phase_noise_sigma_rad,
        }
    }

    /// Sounds the direct path between the two antennas.
    ///
    /// The direction does not enter the result: the path is reciprocal and
    /// the noise stream advances identically for both directions.
    pub fn sound(
        &mut self,
        p_tx: PositionBit,
        p_rx: PositionBit,
        _direction: SoundingDirection,
    ) -> Measurement {
        let d = self.draw();
        let length =
            geometry::path_length(&self.geometry, p_tx, p_rx) + d.tx_offset_m + d.rx_offset_m;
        self.measure(length, d.phase_noise_rad)
    }

    /// What a third party at `obs` measures from the emitting antenna.
    ///
    /// Only the emitter's position matters; the passive antenna does not
    /// re-radiate.
    pub fn observe(
        &mut self,
        obs: ObserverPoint,
        emitter: Emitter,
        p_tx: PositionBit,
        p_rx: PositionBit,
    ) -> Result<Measurement> {
        let nominal_x = self.emitter_x(emitter, p_tx, p_rx, 0.0);
        let nominal = obs.distance_to_axis_point(nominal_x);
        if nominal.is_nan() || nominal <= ObserverPoint::MIN_DISTANCE_M {
            return Err(Error::ObserverCoincident {
                distance_m: nominal,
            });
        }
        let d = self.draw();
        let offset = match emitter {
            Emitter::TxAntenna => d.tx_offset_m,
            Emitter::RxAntenna => d.rx_offset_m,
        };
        let x = self.emitter_x(emitter, p_tx, p_rx, offset);
        Ok(self.measure(obs.distance_to_axis_point(x), d.phase_noise_rad))
    }

    fn emitter_x(
        &self,
        emitter: Emitter,
        p_tx: PositionBit,
        p_rx: PositionBit,
        offset: f64,
    ) -> f64 {
        match emitter {
            Emitter::TxAntenna => self.geometry.tx_x(p_tx) - offset,
            Emitter::RxAntenna => self.geometry.rx_x(p_rx) + offset,
        }
    }

    fn measure(&self, length_m: f64, phase_noise_rad: f64) -> Measurement {
        let lambda = self.geometry.lambda_m();
        let phase = -std::f64::consts::TAU * length_m / lambda + phase_noise_rad;
        Measurement {
            phase_rad: geometry::wrap_finite(phase),
            amplitude: self.geometry.baseline_m() / length_m,
        }
    }
}
