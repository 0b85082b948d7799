//! Detection chain: preamplification, differential stage, synchronous
//! demodulation.
//!
//! The phasor path here treats the low-pass after the demodulator as ideal
//! (perfect rejection of the 2ω_x product). The time-domain path in
//! [`crate::montecarlo`] uses a single-pole filter at `lowpass_bandwidth`.

use crate::components::OpAmpModel;
use crate::error::{Error, Result};
use crate::preamp::{charge_gain, Topology};
use crate::signal::{charge_phasors, ChargePair, Phasor, ResonatorParams};

#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    pub resonator: ResonatorParams,
    pub topology: Topology,
    pub amp: OpAmpModel,
    /// Offset of the demodulation reference from `sin(ω_x t)`, radians.
    pub demod_phase_error: f64,
    /// Post-demodulation low-pass corner, Hz.
    pub lowpass_bandwidth: f64,
}

impl ChainConfig {
    pub fn new(resonator: ResonatorParams, topology: Topology, amp: OpAmpModel) -> Self {
        Self {
            resonator,
            topology,
            amp,
            demod_phase_error: 0.0,
            lowpass_bandwidth: 1000.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.resonator.validate()?;
        self.topology.validate()?;
        self.amp.validate()?;
        if let Topology::VoltageAmp { gain, .. } = self.topology {
            if gain > self.amp.open_loop_gain {
                return Err(Error::validation(
                    "gain",
                    "voltage amplifier gain exceeds the op-amp open-loop gain",
                ));
            }
        }
        if !(self.lowpass_bandwidth > 0.0 && self.lowpass_bandwidth.is_finite()) {
            return Err(Error::validation("chain.lowpass_bandwidth", "must be > 0"));
        }
        if !(self.demod_phase_error.abs() < std::f64::consts::PI) {
            return Err(Error::validation(
                "chain.demod_phase_error",
                "magnitude must be below pi",
            ));
        }
        Ok(())
    }

    pub fn gain_at(&self, t_celsius: f64) -> f64 {
        charge_gain(&self.topology, &self.resonator, t_celsius)
    }
}

/// Demodulated chain output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateOutput {
    /// In-phase (rate) channel, V.
    pub dc_value: f64,
    /// Quadrature channel, V.
    pub quadrature_residual: f64,
}

/// `q_plus − q_minus`. Common-mode charge cancels exactly.
pub fn differential(q: &ChargePair) -> Phasor {
    q.q_plus - q.q_minus
}

/// Multiplies by `sin(ω_x t + phase_error)` and keeps the baseband term.
///
/// Returns `(dc, quad)`; the factor 1/2 is the mean of `sin²`.
pub fn demodulate(p: Phasor, phase_error: f64) -> (f64, f64) {
    let (s, c) = phase_error.sin_cos();
    let dc = 0.5 * (p.in_phase * c + p.quadrature * s);
    let quad = 0.5 * (-p.in_phase * s + p.quadrature * c);
    (dc, quad)
}

/// Chain output at angular rate `rate` (rad/s) and temperature `t_celsius`.
pub fn rate_output(cfg: &ChainConfig, rate: f64, t_celsius: f64) -> RateOutput {
    let gain = cfg.gain_at(t_celsius);
    let diff = differential(&charge_phasors(&cfg.resonator, rate));
    let (dc, quad) = demodulate(diff, cfg.demod_phase_error);
    RateOutput {
        dc_value: gain * dc,
        quadrature_residual: gain * quad,
    }
}

/// d(dc_value)/dΩ, V/(rad/s).
pub fn scale_factor(cfg: &ChainConfig, t_celsius: f64) -> f64 {
    cfg.gain_at(t_celsius) * cfg.resonator.rate_sensitivity * cfg.demod_phase_error.cos()
}
