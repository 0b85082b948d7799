//! Drive and detection-electrode signal model.
//!
//! The drive electrode is excited at the drive-mode resonance, and each of
//! the two detection electrodes collects a narrowband charge at the same
//! frequency made of three parts:
//!
//! | part                 | `q_plus`          | `q_minus`          | phase      |
//! |----------------------|-------------------|--------------------|------------|
//! | Coriolis signal      | `+S_q·Ω`          | `-S_q·Ω`           | `sin ω_x t` |
//! | capacitive coupling  | `+C_amp`          | `+C_amp`           | `sin ω_x t` |
//! | mechanical coupling  | `+M_amp`          | `-M_amp`           | `cos ω_x t` |
//!
//! Everything downstream works on [`Phasor`]s, the (sin, cos) coefficient
//! pair of a signal at the carrier.

use std::f64::consts::PI;

use crate::components::T_REF_CELSIUS;
use crate::error::{Error, Result};

/// Excitation applied to the drive electrode: `X·cos(ω_x·t + φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveState {
    /// Volts, non-negative.
    pub amplitude: f64,
    /// Radians.
    pub phase: f64,
    /// Drive resonance, rad/s.
    pub omega_x: f64,
}

impl DriveState {
    pub fn validate(&self) -> Result<()> {
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(Error::validation("drive.amplitude", "must be >= 0"));
        }
        if !(self.omega_x > 0.0 && self.omega_x.is_finite()) {
            return Err(Error::validation("drive.omega_x", "must be > 0"));
        }
        Ok(())
    }
}

/// Instantaneous drive voltage at time `t` (seconds).
pub fn drive_voltage(state: &DriveState, t: f64) -> f64 {
    state.amplitude * (state.omega_x * t + state.phase).cos()
}

/// Electrical and coupling parameters of the resonator seen by the preamplifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonatorParams {
    /// Inter-electrode capacitance, F.
    pub c0: f64,
    /// Motional resistance at resonance, Ω.
    pub ro: f64,
    /// Drive resonance at the reference temperature, rad/s.
    pub omega_x: f64,
    /// Coriolis charge per unit angular rate, C/(rad/s).
    pub rate_sensitivity: f64,
    /// In-phase common-mode coupling charge amplitude, C.
    pub coupling_cap: f64,
    /// Quadrature coupling charge amplitude, C.
    pub coupling_mech: f64,
    /// Linear temperature coefficient of `omega_x`, ppm/°C.
    pub freq_tempco: f64,
}

impl Default for ResonatorParams {
    /// VIG quartz gyro: 1 pF, 1.5 MΩ, 2e5 rad/s. Rate sensitivity and
    /// coupling amplitudes are placeholders scaled to a 1 rad/s full scale.
    fn default() -> Self {
        let rate_sensitivity = 1e-16;
        let full_scale = 1.0;
        Self {
            c0: 1e-12,
            ro: 1.5e6,
            omega_x: 2e5,
            rate_sensitivity,
            coupling_cap: 10.0 * rate_sensitivity * full_scale,
            coupling_mech: 5.0 * rate_sensitivity * full_scale,
            freq_tempco: -30.0,
        }
    }
}

impl ResonatorParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("resonator.c0", self.c0),
            ("resonator.ro", self.ro),
            ("resonator.omega_x", self.omega_x),
        ];
        for (field, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::validation(field, format!("must be > 0, got {v}")));
            }
        }
        let non_negative = [
            ("resonator.rate_sensitivity", self.rate_sensitivity),
            ("resonator.coupling_cap", self.coupling_cap),
            ("resonator.coupling_mech", self.coupling_mech),
        ];
        for (field, v) in non_negative {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::validation(field, format!("must be >= 0, got {v}")));
            }
        }
        if !self.freq_tempco.is_finite() {
            return Err(Error::validation("resonator.freq_tempco", "must be finite"));
        }
        Ok(())
    }

    /// Drive resonance at temperature `t_celsius`.
    pub fn omega_at(&self, t_celsius: f64) -> f64 {
        self.omega_x * (1.0 + self.freq_tempco * 1e-6 * (t_celsius - T_REF_CELSIUS))
    }

    /// Carrier frequency in Hz at the reference temperature.
    pub fn carrier_hz(&self) -> f64 {
        self.omega_x / (2.0 * PI)
    }
}

/// Narrowband signal `i·sin(ω_x t) + q·cos(ω_x t)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Phasor {
    pub in_phase: f64,
    pub quadrature: f64,
}

impl Phasor {
    pub const ZERO: Phasor = Phasor {
        in_phase: 0.0,
        quadrature: 0.0,
    };

    pub fn new(in_phase: f64, quadrature: f64) -> Self {
        Self {
            in_phase,
            quadrature,
        }
    }

    pub fn magnitude(&self) -> f64 {
        self.in_phase.hypot(self.quadrature)
    }

    pub fn scale(self, k: f64) -> Phasor {
        Phasor::new(self.in_phase * k, self.quadrature * k)
    }

    /// Value at carrier phase `theta = ω_x·t`.
    pub fn sample(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        self.in_phase * s + self.quadrature * c
    }
}

impl std::ops::Add for Phasor {
    type Output = Phasor;
    fn add(self, rhs: Phasor) -> Phasor {
        Phasor::new(
            self.in_phase + rhs.in_phase,
            self.quadrature + rhs.quadrature,
        )
    }
}

impl std::ops::Sub for Phasor {
    type Output = Phasor;
    fn sub(self, rhs: Phasor) -> Phasor {
        Phasor::new(
            self.in_phase - rhs.in_phase,
            self.quadrature - rhs.quadrature,
        )
    }
}

/// Charges on the two detection electrodes, in coulombs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargePair {
    pub q_plus: Phasor,
    pub q_minus: Phasor,
}

/// Electrode charge phasors at angular rate `rate` (rad/s).
pub fn charge_phasors(params: &ResonatorParams, rate: f64) -> ChargePair {
    let coriolis = params.rate_sensitivity * rate;
    ChargePair {
        q_plus: Phasor::new(coriolis + params.coupling_cap, params.coupling_mech),
        q_minus: Phasor::new(-coriolis + params.coupling_cap, -params.coupling_mech),
    }
}

/// Sampled electrode charges.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeSeries {
    pub fs: f64,
    pub q_plus: Vec<f64>,
    pub q_minus: Vec<f64>,
}

/// Renders [`charge_phasors`] as `round(fs·duration)` samples per electrode.
pub fn charge_timeseries(
    params: &ResonatorParams,
    rate: f64,
    fs: f64,
    duration: f64,
) -> Result<ChargeSeries> {
    if !(fs > params.omega_x / PI) {
        return Err(Error::Sampling {
            fs,
            reason: format!(
                "must exceed the carrier Nyquist rate {:.6e} Hz",
                params.omega_x / PI
            ),
        });
    }
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::validation("duration", "must be > 0"));
    }
    let n = (fs * duration).round() as usize;
    let pair = charge_phasors(params, rate);
    let step = params.omega_x / fs;
    let (q_plus, q_minus) = (0..n)
        .map(|k| {
            let theta = step * k as f64;
            (pair.q_plus.sample(theta), pair.q_minus.sample(theta))
        })
        .unzip();
    Ok(ChargeSeries {
        fs,
        q_plus,
        q_minus,
    })
}
