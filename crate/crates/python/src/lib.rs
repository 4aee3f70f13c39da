//! Python bindings for the chanmod link simulator.

use chanmod::link::{self, EavesdropOutcome};
use chanmod::{cipher, codec, csv_format, geometry};
use chanmod::{Emitter, ObserverPoint, PilotMode, PositionBit, SessionConfig, SoundingDirection};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: chanmod::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn position(value: u8) -> PyResult<PositionBit> {
    match value {
        0 => Ok(PositionBit::HOME),
        1 => Ok(PositionBit::DISPLACED),
        v => Err(PyValueError::new_err(format!(
            "position bit must be 0 or 1, got {v}"
        ))),
    }
}

fn bit(value: impl Into<u32>) -> PyResult<bool> {
    let value = value.into();
    match value {
        0 | 1 => Ok(value == 1),
        v => Err(PyValueError::new_err(format!(
            "bit must be 0 or 1, got {v}"
        ))),
    }
}

fn direction(name: &str) -> PyResult<SoundingDirection> {
    match name {
        "forward" => Ok(SoundingDirection::Forward),
        "reverse" | "reversed" => Ok(SoundingDirection::Reverse),
        other => Err(PyValueError::new_err(format!(
            "unknown direction {other:?}"
        ))),
    }
}

#[pyclass(name = "LinkGeometry", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLinkGeometry(chanmod::LinkGeometry);

#[pymethods]
impl PyLinkGeometry {
    #[new]
    #[pyo3(signature = (frequency_hz = 2.45e9, baseline_m = 1.0, displacement_m = None))]
    fn new(frequency_hz: f64, baseline_m: f64, displacement_m: Option<f64>) -> PyResult<Self> {
        let wl = chanmod::Wavelength::from_frequency(frequency_hz).map_err(py_err)?;
        let d = displacement_m.unwrap_or(wl.lambda_m() / 2.0);
        chanmod::LinkGeometry::new(wl, baseline_m, d)
            .map(Self)
            .map_err(py_err)
    }

    #[getter]
    fn frequency_hz(&self) -> f64 {
        self.0.wavelength().carrier_frequency_hz()
    }

    #[getter]
    fn lambda_m(&self) -> f64 {
        self.0.lambda_m()
    }

    #[getter]
    fn baseline_m(&self) -> f64 {
        self.0.baseline_m()
    }

    #[getter]
    fn displacement_m(&self) -> f64 {
        self.0.displacement_m()
    }

    fn path_length(&self, p_tx: u8, p_rx: u8) -> PyResult<f64> {
        Ok(geometry::path_length(
            &self.0,
            position(p_tx)?,
            position(p_rx)?,
        ))
    }

    fn propagation_phase(&self, p_tx: u8, p_rx: u8) -> PyResult<f64> {
        Ok(geometry::propagation_phase(
            &self.0,
            position(p_tx)?,
            position(p_rx)?,
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "LinkGeometry(frequency_hz={}, baseline_m={}, displacement_m={})",
            self.frequency_hz(),
            self.0.baseline_m(),
            self.0.displacement_m()
        )
    }
}

#[pyclass(name = "KeyStream")]
struct PyKeyStream(cipher::KeyStream);

#[pymethods]
impl PyKeyStream {
    #[new]
    fn new(seed: u64) -> Self {
        Self(cipher::KeyStream::new(seed))
    }

    fn next_key_bit(&mut self) -> u8 {
        u8::from(self.0.next_key_bit())
    }

    fn take(&mut self, n: usize) -> Vec<u32> {
        (0..n).map(|_| u32::from(self.next_key_bit())).collect()
    }

    #[getter]
    fn state(&self) -> u64 {
        self.0.state()
    }

    #[getter]
    fn emitted(&self) -> u64 {
        self.0.emitted()
    }
}

#[pyclass(name = "CalibrationTable", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCalibrationTable(link::CalibrationTable);

#[pymethods]
impl PyCalibrationTable {
    #[getter]
    fn phi_same(&self) -> f64 {
        self.0.phi_same
    }

    #[getter]
    fn phi_alt(&self) -> f64 {
        self.0.phi_alt
    }

    #[getter]
    fn class_separation(&self) -> f64 {
        self.0.class_separation
    }

    #[getter]
    fn consistency_tolerance(&self) -> f64 {
        self.0.consistency_tolerance
    }

    #[getter]
    fn same_spread(&self) -> f64 {
        self.0.same_spread
    }

    #[getter]
    fn alt_spread(&self) -> f64 {
        self.0.alt_spread
    }

    /// Hard decision for a measured phase: 0 same-position, 1 alternating.
    fn decide(&self, phase: f64) -> u8 {
        link::decide(phase, &self.0).value()
    }
}

#[pyclass(name = "ChannelModel")]
struct PyChannelModel(chanmod::ChannelModel);

#[pymethods]
impl PyChannelModel {
    #[new]
    #[pyo3(signature = (geometry, phase_noise_sigma_rad = 0.0, position_jitter_m = 0.02e-3, noise_seed = 0))]
    fn new(
        geometry: &PyLinkGeometry,
        phase_noise_sigma_rad: f64,
        position_jitter_m: f64,
        noise_seed: u64,
    ) -> PyResult<Self> {
        chanmod::ChannelModel::new(
            geometry.0,
            phase_noise_sigma_rad,
            position_jitter_m,
            noise_seed,
        )
        .map(Self)
        .map_err(py_err)
    }

    /// Returns `(phase_rad, amplitude)`.
    #[pyo3(signature = (p_tx, p_rx, direction = "forward"))]
    fn sound(&mut self, p_tx: u8, p_rx: u8, direction: &str) -> PyResult<(f64, f64)> {
        let m = self.0.sound(
            position(p_tx)?,
            position(p_rx)?,
            self::direction(direction)?,
        );
        Ok((m.phase_rad, m.amplitude))
    }

    /// Phase and amplitude seen from `(x_m, y_m)`; `emitter` is "tx" or "rx".
    fn observe(
        &mut self,
        x_m: f64,
        y_m: f64,
        emitter: &str,
        p_tx: u8,
        p_rx: u8,
    ) -> PyResult<(f64, f64)> {
        let emitter = match emitter {
            "tx" => Emitter::TxAntenna,
            "rx" => Emitter::RxAntenna,
            other => return Err(PyValueError::new_err(format!("unknown emitter {other:?}"))),
        };
        let m = self
            .0
            .observe(
                ObserverPoint::new(x_m, y_m),
                emitter,
                position(p_tx)?,
                position(p_rx)?,
            )
            .map_err(py_err)?;
        Ok((m.phase_rad, m.amplitude))
    }

    fn calibrate(&mut self) -> PyResult<PyCalibrationTable> {
        link::calibrate(&mut self.0)
            .map(PyCalibrationTable)
            .map_err(py_err)
    }

    #[getter]
    fn noise_seed(&self) -> u64 {
        self.0.noise_seed()
    }
}

fn session_config(
    channel: &PyChannelModel,
    key_seed: u64,
    mode: &str,
    feedback: bool,
) -> PyResult<SessionConfig> {
    let mode: PilotMode = mode.parse().map_err(py_err)?;
    Ok(SessionConfig {
        channel: channel.0.clone(),
        key_seed,
        mode,
        feedback_available: feedback,
    })
}

#[pyclass(name = "SessionTrace", frozen, skip_from_py_object)]
struct PySessionTrace(link::SessionTrace);

#[pymethods]
impl PySessionTrace {
    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        csv_format::read_trace(text).map(Self).map_err(py_err)
    }

    fn to_csv(&self) -> String {
        csv_format::write_trace(&self.0)
    }

    #[getter]
    fn message(&self) -> &str {
        &self.0.message
    }

    /// The decoded text, or `NO_FEEDBACK` / `UNDECODABLE`.
    #[getter]
    fn decoded_text(&self) -> String {
        self.0.decoded_text.to_string()
    }

    #[getter]
    fn bit_errors(&self) -> usize {
        self.0.bit_errors
    }

    #[getter]
    fn delivered(&self) -> bool {
        self.0.delivered()
    }

    #[getter]
    fn calibration(&self) -> PyCalibrationTable {
        PyCalibrationTable(self.0.calibration)
    }

    /// Per-bit records as dicts keyed like the trace CSV columns.
    fn records<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.0
            .records
            .iter()
            .map(|r| {
                let d = PyDict::new(py);
                d.set_item("index", r.index)?;
                d.set_item("message_bit", u8::from(r.message_bit))?;
                d.set_item("key_bit", u8::from(r.key_bit))?;
                d.set_item("tx_pos", r.tx_pos.value())?;
                d.set_item("rx_pos", r.rx_pos.value())?;
                d.set_item("true_channel_bit", r.true_channel.value())?;
                d.set_item("true_phase_rad", r.true_phase_rad)?;
                d.set_item("measured_phase_rad", r.measured_phase_rad)?;
                d.set_item("decided_channel_bit", r.decided_channel.map(|c| c.value()))?;
                d.set_item("decoded_bit", r.decoded_bit.map(u8::from))?;
                Ok(d)
            })
            .collect()
    }

    /// Decoded text, or `None` when the observer cannot tell.
    #[pyo3(signature = (knows_tx = false, knows_rx = false))]
    fn eavesdrop(&self, knows_tx: bool, knows_rx: bool) -> PyResult<Option<String>> {
        Ok(
            match link::eavesdrop(&self.0, knows_tx, knows_rx).map_err(py_err)? {
                EavesdropOutcome::Decoded(t) => Some(t),
                EavesdropOutcome::Indeterminate => None,
            },
        )
    }

    fn __len__(&self) -> usize {
        self.0.records.len()
    }
}

#[pyfunction]
#[pyo3(signature = (channel, text, key_seed = 1, mode = "forward", feedback = true))]
fn transmit(
    channel: &PyChannelModel,
    text: &str,
    key_seed: u64,
    mode: &str,
    feedback: bool,
) -> PyResult<PySessionTrace> {
    let config = session_config(channel, key_seed, mode, feedback)?;
    link::transmit(config, text)
        .map(PySessionTrace)
        .map_err(py_err)
}

/// Returns a list of `(sigma_rad, ber)`.
#[pyfunction]
#[pyo3(signature = (channel, sigmas, bits_per_point = 10_000, key_seed = 1, mode = "forward", feedback = true))]
fn ber_sweep(
    py: Python<'_>,
    channel: &PyChannelModel,
    sigmas: Vec<f64>,
    bits_per_point: usize,
    key_seed: u64,
    mode: &str,
    feedback: bool,
) -> PyResult<Vec<(f64, f64)>> {
    let config = session_config(channel, key_seed, mode, feedback)?;
    let points = py
        .detach(|| link::ber_sweep(&config, &sigmas, bits_per_point))
        .map_err(py_err)?;
    Ok(points.iter().map(|p| (p.sigma_rad, p.ber)).collect())
}

#[pyfunction]
fn wrap_phase(phi: f64) -> PyResult<f64> {
    geometry::wrap_phase(phi).map_err(py_err)
}

#[pyfunction]
fn channel_bit(p_tx: u8, p_rx: u8) -> PyResult<u8> {
    Ok(geometry::channel_bit(position(p_tx)?, position(p_rx)?).value())
}

#[pyfunction]
fn encode_ascii(text: &str) -> PyResult<Vec<u32>> {
    let bits = codec::encode_ascii(text).map_err(py_err)?;
    Ok(bits.iter().map(u32::from).collect())
}

#[pyfunction]
fn decode_ascii(bits: Vec<u32>) -> PyResult<String> {
    let bits = bits.into_iter().map(bit).collect::<PyResult<Vec<bool>>>()?;
    codec::decode_ascii(&bits).map_err(py_err)
}

#[pyfunction]
fn tx_position_for(message_bit: u8, key_bit: u8) -> PyResult<u8> {
    Ok(cipher::tx_position_for(bit(message_bit)?, bit(key_bit)?).value())
}

#[pyfunction]
fn rx_position_for(key_bit: u8) -> PyResult<u8> {
    Ok(cipher::rx_position_for(bit(key_bit)?).value())
}

#[pyfunction]
fn recover_from_positions(p_tx: u8, p_rx: u8) -> PyResult<u8> {
    Ok(u8::from(cipher::recover_from_positions(
        position(p_tx)?,
        position(p_rx)?,
    )))
}

#[pymodule]
#[pyo3(name = "chanmod")]
fn chanmod_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLinkGeometry>()?;
    m.add_class::<PyKeyStream>()?;
    m.add_class::<PyChannelModel>()?;
    m.add_class::<PyCalibrationTable>()?;
    m.add_class::<PySessionTrace>()?;
    m.add_function(wrap_pyfunction!(transmit, m)?)?;
    m.add_function(wrap_pyfunction!(ber_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(wrap_phase, m)?)?;
    m.add_function(wrap_pyfunction!(channel_bit, m)?)?;
    m.add_function(wrap_pyfunction!(encode_ascii, m)?)?;
    m.add_function(wrap_pyfunction!(decode_ascii, m)?)?;
    m.add_function(wrap_pyfunction!(tx_position_for, m)?)?;
    m.add_function(wrap_pyfunction!(rx_position_for, m)?)?;
    m.add_function(wrap_pyfunction!(recover_from_positions, m)?)?;
    m.add("NO_FEEDBACK", link::DecodedText::NO_FEEDBACK)?;
    m.add("INDETERMINATE", EavesdropOutcome::INDETERMINATE)?;
    Ok(())
}
