//! The five preamplifier topologies: charge-to-voltage gain and
//! input-referred charge noise.
//!
//! All noise densities are single-sided. Independent sources are combined
//! root-sum-square; the individual terms are kept in [`NoiseBreakdown`] so a
//! budget can show where the noise comes from.
//!
//! Noise is evaluated with nominal component values. Temperature enters
//! through [`charge_gain`] only.

use std::f64::consts::PI;
use std::fmt;

use crate::components::{MatchedGroup, OpAmpModel, TempcoValue};
use crate::error::{Error, Result};
use crate::signal::ResonatorParams;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Default absolute temperature for thermal noise, K.
pub const DEFAULT_T_ABS: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TopologyKind {
    Current,
    Charge,
    Voltage,
    DiffCharge,
    SwitchedCap,
}

impl TopologyKind {
    pub const ALL: [TopologyKind; 5] = [
        TopologyKind::Current,
        TopologyKind::Charge,
        TopologyKind::Voltage,
        TopologyKind::DiffCharge,
        TopologyKind::SwitchedCap,
    ];

    /// Identifier used in config files and CSV output.
    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Current => "current",
            TopologyKind::Charge => "charge",
            TopologyKind::Voltage => "voltage",
            TopologyKind::DiffCharge => "diff_charge",
            TopologyKind::SwitchedCap => "switched_cap",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Whether the feedback network fits on chip. The current amplifier
    /// needs a stable ~10 MΩ feedback resistor, which does not.
    pub fn integrable(self) -> bool {
        !matches!(self, TopologyKind::Current)
    }

    /// Design simplicity. Switching and differential variants need extra
    /// clocking or a second matched signal path.
    pub fn simple(self) -> bool {
        !matches!(self, TopologyKind::SwitchedCap | TopologyKind::DiffCharge)
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A preamplifier and the component values that set its gain and noise.
#[derive(Debug, Clone, PartialEq)]
pub enum Topology {
    /// Transimpedance stage, gain set by `r_fb`.
    CurrentAmp { r_fb: TempcoValue },
    /// Feedback capacitor with a bleed resistor.
    ChargeAmp {
        c_fb: TempcoValue,
        r_fb: TempcoValue,
    },
    /// Voltage follower with gain `gain` after the electrode capacitance.
    /// `r` discharges C0 at low frequency; `c_p` is input parasitic capacitance.
    VoltageAmp {
        r: TempcoValue,
        c_p: TempcoValue,
        gain: f64,
    },
    /// Differential charge amplifier with matched feedback capacitors.
    /// Member 0 sets the gain.
    DiffChargeAmp {
        c_fb_pair: MatchedGroup,
        r_fb: TempcoValue,
    },
    /// Charge amplifier whose feedback capacitor is reset by switches at `f_switch`.
    SwitchedCapAmp { c_fb: TempcoValue, f_switch: f64 },
}

impl Topology {
    pub fn kind(&self) -> TopologyKind {
        match self {
            Topology::CurrentAmp { .. } => TopologyKind::Current,
            Topology::ChargeAmp { .. } => TopologyKind::Charge,
            Topology::VoltageAmp { .. } => TopologyKind::Voltage,
            Topology::DiffChargeAmp { .. } => TopologyKind::DiffCharge,
            Topology::SwitchedCapAmp { .. } => TopologyKind::SwitchedCap,
        }
    }

    /// Feedback capacitor of the charge-amplifier family.
    pub fn feedback_cap(&self) -> Option<TempcoValue> {
        match self {
            Topology::ChargeAmp { c_fb, .. } | Topology::SwitchedCapAmp { c_fb, .. } => Some(*c_fb),
            Topology::DiffChargeAmp { c_fb_pair, .. } => c_fb_pair.member(0).ok(),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Topology::CurrentAmp { r_fb } => r_fb.validate("r_fb", false),
            Topology::ChargeAmp { c_fb, r_fb } => {
                c_fb.validate("c_fb", false)?;
                r_fb.validate("r_fb", false)
            }
            Topology::VoltageAmp { r, c_p, gain } => {
                r.validate("r", false)?;
                c_p.validate("c_p", true)?;
                if !(*gain > 0.0 && gain.is_finite()) {
                    return Err(Error::validation("gain", "must be > 0"));
                }
                Ok(())
            }
            Topology::DiffChargeAmp { c_fb_pair, r_fb } => {
                if c_fb_pair.len() < 2 {
                    return Err(Error::validation(
                        "c_fb_pair",
                        "a differential stage needs two matched capacitors",
                    ));
                }
                for i in 0..c_fb_pair.len() {
                    c_fb_pair.member(i)?.validate("c_fb_pair", false)?;
                }
                r_fb.validate("r_fb", false)
            }
            Topology::SwitchedCapAmp { c_fb, f_switch } => {
                c_fb.validate("c_fb", false)?;
                if !(*f_switch > 0.0 && f_switch.is_finite()) {
                    return Err(Error::validation("f_switch", "must be > 0"));
                }
                Ok(())
            }
        }
    }
}

/// Output voltage per unit differential charge at temperature `t_celsius`, V/C.
pub fn charge_gain(topo: &Topology, res: &ResonatorParams, t_celsius: f64) -> f64 {
    match topo {
        Topology::CurrentAmp { r_fb } => r_fb.value_at(t_celsius) * res.omega_at(t_celsius),
        Topology::ChargeAmp { c_fb, .. } | Topology::SwitchedCapAmp { c_fb, .. } => {
            1.0 / c_fb.value_at(t_celsius)
        }
        Topology::DiffChargeAmp { c_fb_pair, .. } => {
            1.0 / c_fb_pair.value_at(0, t_celsius).unwrap_or(f64::NAN)
        }
        Topology::VoltageAmp { c_p, gain, .. } => gain / (res.c0 + c_p.value_at(t_celsius)),
    }
}

/// Feedback capacitance giving a charge amplifier the same output as a
/// current amplifier with feedback resistance `r_fb` at `omega`.
pub fn equal_output_cfb(r_fb: f64, omega: f64) -> f64 {
    1.0 / (r_fb * omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseUnits {
    /// C/√Hz, referred to the preamp input.
    Charge,
    /// V/√Hz, at the preamp output.
    Voltage,
}

impl NoiseUnits {
    pub fn label(self) -> &'static str {
        match self {
            NoiseUnits::Charge => "C/sqrtHz",
            NoiseUnits::Voltage => "V/sqrtHz",
        }
    }
}

/// Per-source noise densities and their root-sum-square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseBreakdown {
    pub johnson: f64,
    pub opamp_current: f64,
    pub opamp_voltage: f64,
    pub ktc: f64,
    pub total_rss: f64,
    pub units: NoiseUnits,
}

/// Names of the individual noise sources, in breakdown order.
pub const NOISE_SOURCES: [&str; 4] = ["johnson", "opamp_current", "opamp_voltage", "ktc"];

impl NoiseBreakdown {
    pub fn new(
        johnson: f64,
        opamp_current: f64,
        opamp_voltage: f64,
        ktc: f64,
        units: NoiseUnits,
    ) -> Self {
        let total_rss = (johnson * johnson
            + opamp_current * opamp_current
            + opamp_voltage * opamp_voltage
            + ktc * ktc)
            .sqrt();
        Self {
            johnson,
            opamp_current,
            opamp_voltage,
            ktc,
            total_rss,
            units,
        }
    }

    /// Source densities in [`NOISE_SOURCES`] order.
    pub fn sources(&self) -> [f64; 4] {
        [
            self.johnson,
            self.opamp_current,
            self.opamp_voltage,
            self.ktc,
        ]
    }

    pub fn source(&self, name: &str) -> Option<f64> {
        NOISE_SOURCES
            .iter()
            .position(|&n| n == name)
            .map(|i| self.sources()[i])
    }

    /// Every component multiplied by `factor`, total recomputed.
    pub fn scaled(&self, factor: f64, units: NoiseUnits) -> Self {
        let k = factor.abs();
        Self::new(
            self.johnson * k,
            self.opamp_current * k,
            self.opamp_voltage * k,
            self.ktc * k,
            units,
        )
    }
}

fn parallel(a: f64, b: f64) -> f64 {
    a * b / (a + b)
}

fn johnson_current(r: f64, t_abs: f64) -> f64 {
    (4.0 * BOLTZMANN * t_abs / r).sqrt()
}

/// Input-referred charge noise at frequency `f` (Hz) and absolute temperature `t_abs` (K).
pub fn input_noise_psd(
    topo: &Topology,
    res: &ResonatorParams,
    amp: &OpAmpModel,
    f: f64,
    t_abs: f64,
) -> NoiseBreakdown {
    let omega = 2.0 * PI * f;
    let opamp_current = amp.in_noise / omega;
    let charge_family = |c_fb: f64, r_fb: f64| {
        (
            johnson_current(parallel(r_fb, res.ro), t_abs) / omega,
            amp.en * (res.c0 + c_fb),
        )
    };
    let (johnson, opamp_voltage, ktc) = match topo {
        Topology::CurrentAmp { r_fb } => {
            let r_fb = r_fb.nominal;
            (
                johnson_current(parallel(r_fb, res.ro), t_abs) / omega,
                amp.en * res.c0 + amp.en / (r_fb * omega),
                0.0,
            )
        }
        Topology::VoltageAmp { r, .. } => (
            johnson_current(r.nominal, t_abs) / omega,
            amp.en * res.c0,
            0.0,
        ),
        Topology::ChargeAmp { c_fb, r_fb } => {
            let (j, v) = charge_family(c_fb.nominal, r_fb.nominal);
            (j, v, 0.0)
        }
        Topology::DiffChargeAmp { c_fb_pair, r_fb } => {
            let c_fb = c_fb_pair.nominals.first().copied().unwrap_or(f64::NAN);
            let (j, v) = charge_family(c_fb, r_fb.nominal);
            (j, v, 0.0)
        }
        Topology::SwitchedCapAmp { c_fb, f_switch } => {
            // Switches stand in for the bleed resistor; what remains of the
            // Johnson term comes from the resonator's motional resistance.
            let (_, v) = charge_family(c_fb.nominal, f64::INFINITY);
            let j = johnson_current(res.ro, t_abs) / omega;
            let ktc = (2.0 * BOLTZMANN * t_abs * c_fb.nominal / f_switch).sqrt();
            (j, v, ktc)
        }
    };
    NoiseBreakdown::new(
        johnson,
        opamp_current,
        opamp_voltage,
        ktc,
        NoiseUnits::Charge,
    )
}

/// Output-referred voltage noise: [`input_noise_psd`] scaled by the gain at `t_celsius`.
pub fn output_noise_psd(
    topo: &Topology,
    res: &ResonatorParams,
    amp: &OpAmpModel,
    f: f64,
    t_abs: f64,
    t_celsius: f64,
) -> NoiseBreakdown {
    input_noise_psd(topo, res, amp, f, t_abs)
        .scaled(charge_gain(topo, res, t_celsius), NoiseUnits::Voltage)
}

/// Finds the charge-amplifier feedback capacitance in `[lo, hi]` whose output
/// noise density at `f` equals `target` (V/√Hz), by bisection. Output noise
/// falls monotonically with feedback capacitance.
pub fn calibrate_feedback_cap(
    r_fb: TempcoValue,
    res: &ResonatorParams,
    amp: &OpAmpModel,
    f: f64,
    t_abs: f64,
    target: f64,
    (lo, hi): (f64, f64),
) -> Result<f64> {
    let density = |c: f64| {
        let topo = Topology::ChargeAmp {
            c_fb: TempcoValue::fixed(c),
            r_fb,
        };
        input_noise_psd(&topo, res, amp, f, t_abs).total_rss / c
    };
    let (mut a, mut b) = (lo, hi);
    if !(density(a) >= target && density(b) <= target) {
        return Err(Error::Config(format!(
            "target {target:e} V/sqrtHz not bracketed by C_FB in [{lo:e}, {hi:e}] F"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if density(mid) > target {
            a = mid;
        } else {
            b = mid;
        }
        if (b - a) <= 1e-12 * b {
            break;
        }
    }
    Ok(0.5 * (a + b))
}
