//! Noise budgets, temperature sweeps and the five-topology comparison.

use crate::chain::{demodulate, rate_output, scale_factor, ChainConfig};
use crate::components::{OpAmpModel, TempcoValue, T_REF_CELSIUS};
use crate::error::{Error, Result};
use crate::preamp::{
    charge_gain, input_noise_psd, NoiseBreakdown, NoiseUnits, Topology, TopologyKind, DEFAULT_T_ABS,
};
use crate::signal::{charge_phasors, ResonatorParams};

/// Where a budget is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Applied angular rate, rad/s.
    pub rate: f64,
    /// Ambient temperature for component values, °C.
    pub t_celsius: f64,
    /// Absolute temperature for thermal noise, K.
    pub t_abs: f64,
    /// Noise evaluation frequency, Hz. `None` means the carrier.
    pub frequency: Option<f64>,
}

impl Default for OperatingPoint {
    fn default() -> Self {
        Self {
            rate: 1.0,
            t_celsius: T_REF_CELSIUS,
            t_abs: DEFAULT_T_ABS,
            frequency: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Budget {
    pub frequency: f64,
    /// Input-referred densities, C/√Hz.
    pub input: NoiseBreakdown,
    /// Output densities, V/√Hz.
    pub breakdown: NoiseBreakdown,
    pub bandwidth: f64,
    /// V rms in `bandwidth`.
    pub rms_noise: f64,
    /// Rms of the Coriolis carrier at the preamp output, V.
    pub signal_rms: f64,
    /// `f64::INFINITY` when the chain is noiseless.
    pub snr: f64,
    pub snr_unbounded: bool,
    /// Noise-equivalent rate, (rad/s)/√Hz.
    pub rate_resolution: f64,
}

pub fn noise_budget(cfg: &ChainConfig, at: &OperatingPoint, bandwidth: f64) -> Result<Budget> {
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::validation("bandwidth", "must be > 0"));
    }
    let frequency = at.frequency.unwrap_or_else(|| cfg.resonator.carrier_hz());
    let gain = cfg.gain_at(at.t_celsius);
    let input = input_noise_psd(&cfg.topology, &cfg.resonator, &cfg.amp, frequency, at.t_abs);
    let breakdown = input.scaled(gain, NoiseUnits::Voltage);
    let rms_noise = breakdown.total_rss * bandwidth.sqrt();
    let coriolis_amplitude = gain.abs() * 2.0 * cfg.resonator.rate_sensitivity * at.rate.abs();
    let signal_rms = coriolis_amplitude / std::f64::consts::SQRT_2;
    let snr_unbounded = rms_noise == 0.0;
    let snr = if snr_unbounded {
        f64::INFINITY
    } else {
        signal_rms / rms_noise
    };
    let sf = scale_factor(cfg, at.t_celsius).abs();
    let rate_resolution = if sf == 0.0 {
        f64::INFINITY
    } else {
        breakdown.total_rss / sf
    };
    Ok(Budget {
        frequency,
        input,
        breakdown,
        bandwidth,
        rms_noise,
        signal_rms,
        snr,
        snr_unbounded,
        rate_resolution,
    })
}

/// Inclusive temperature grid `t_min, t_min + step, …, ≤ t_max`.
pub fn temperature_grid(t_min: f64, t_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(t_min < t_max) {
        return Err(Error::validation("sweep.t_min", "must be below t_max"));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::validation("sweep.step", "must be > 0"));
    }
    let n = ((t_max - t_min) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| t_min + step * i as f64).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub temperatures: Vec<f64>,
    /// V/C.
    pub gains: Vec<f64>,
    /// Demodulated rate output, V.
    pub outputs: Vec<f64>,
    /// Gain change relative to the first point, ppm.
    pub drift_ppm: Vec<f64>,
    /// Last output minus first, V.
    pub total_drift_volts: f64,
    /// Last-to-first gain change, ppm.
    pub total_drift_ppm: f64,
    /// `total_drift_ppm` over the temperature span, ppm/°C.
    pub drift_slope: f64,
    /// Least-squares slope of `drift_ppm` against temperature, ppm/°C.
    pub lsq_slope: f64,
}

impl SweepSeries {
    pub fn len(&self) -> usize {
        self.temperatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.temperatures.is_empty()
    }
}

/// Evaluates the chain output at `rate` across the temperature grid.
pub fn thermal_sweep(
    cfg: &ChainConfig,
    t_min: f64,
    t_max: f64,
    step: f64,
    rate: f64,
) -> Result<SweepSeries> {
    let temperatures = temperature_grid(t_min, t_max, step)?;
    let gains: Vec<f64> = temperatures.iter().map(|&t| cfg.gain_at(t)).collect();
    let outputs: Vec<f64> = temperatures
        .iter()
        .map(|&t| rate_output(cfg, rate, t).dc_value)
        .collect();
    let g0 = gains[0];
    let drift_ppm: Vec<f64> = gains.iter().map(|g| 1e6 * (g / g0 - 1.0)).collect();
    let last = temperatures.len() - 1;
    let span = temperatures[last] - temperatures[0];
    let total_drift_ppm = drift_ppm[last];
    let drift_slope = if span > 0.0 {
        total_drift_ppm / span
    } else {
        0.0
    };
    Ok(SweepSeries {
        total_drift_volts: outputs[last] - outputs[0],
        total_drift_ppm,
        drift_slope,
        lsq_slope: least_squares_slope(&temperatures, &drift_ppm),
        temperatures,
        gains,
        outputs,
        drift_ppm,
    })
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// The component whose tempco sets a topology's gain, with its sign replaced.
fn with_gain_tempco_sign(topo: &Topology, sign: f64) -> Topology {
    let flip = |v: &TempcoValue| TempcoValue {
        tempco: sign * v.tempco.abs(),
        ..*v
    };
    match topo {
        Topology::CurrentAmp { r_fb } => Topology::CurrentAmp { r_fb: flip(r_fb) },
        Topology::ChargeAmp { c_fb, r_fb } => Topology::ChargeAmp {
            c_fb: flip(c_fb),
            r_fb: *r_fb,
        },
        Topology::VoltageAmp { r, c_p, gain } => Topology::VoltageAmp {
            r: *r,
            c_p: flip(c_p),
            gain: *gain,
        },
        Topology::DiffChargeAmp { c_fb_pair, r_fb } => {
            let mut pair = c_fb_pair.clone();
            pair.tempco = sign * pair.tempco.abs();
            Topology::DiffChargeAmp {
                c_fb_pair: pair,
                r_fb: *r_fb,
            }
        }
        Topology::SwitchedCapAmp { c_fb, f_switch } => Topology::SwitchedCapAmp {
            c_fb: flip(c_fb),
            f_switch: *f_switch,
        },
    }
}

/// Gains of the `q_plus` and `q_minus` preamplifiers at `t_celsius`.
///
/// Only the differential charge amplifier has matched feedback parts; its
/// electrodes use members 0 and 1 of the group. Every other topology is
/// built from two independent parts, and the `q_minus` side is modeled as
/// the opposite tempco corner of the same part.
pub fn electrode_gains(topo: &Topology, res: &ResonatorParams, t_celsius: f64) -> (f64, f64) {
    match topo {
        Topology::DiffChargeAmp { c_fb_pair, .. } => {
            let g = |i| 1.0 / c_fb_pair.value_at(i, t_celsius).unwrap_or(f64::NAN);
            (g(0), g(1))
        }
        _ => {
            let plus = charge_gain(topo, res, t_celsius);
            let minus = match topo {
                Topology::CurrentAmp { r_fb } => Topology::CurrentAmp {
                    r_fb: r_fb.mirrored(),
                },
                Topology::ChargeAmp { c_fb, r_fb } => Topology::ChargeAmp {
                    c_fb: c_fb.mirrored(),
                    r_fb: *r_fb,
                },
                Topology::VoltageAmp { r, c_p, gain } => Topology::VoltageAmp {
                    r: *r,
                    c_p: c_p.mirrored(),
                    gain: *gain,
                },
                Topology::SwitchedCapAmp { c_fb, f_switch } => Topology::SwitchedCapAmp {
                    c_fb: c_fb.mirrored(),
                    f_switch: *f_switch,
                },
                Topology::DiffChargeAmp { .. } => unreachable!(),
            };
            (plus, charge_gain(&minus, res, t_celsius))
        }
    }
}

/// Largest deviation of `g_plus/g_minus` from its value at `t_ref` over the
/// grid, ppm. Zero for a matched pair.
pub fn gain_ratio_drift_ppm(
    topo: &Topology,
    res: &ResonatorParams,
    t_min: f64,
    t_max: f64,
    step: f64,
) -> Result<f64> {
    let (p0, m0) = electrode_gains(topo, res, T_REF_CELSIUS);
    let r0 = p0 / m0;
    Ok(temperature_grid(t_min, t_max, step)?
        .into_iter()
        .map(|t| {
            let (p, m) = electrode_gains(topo, res, t);
            1e6 * ((p / m) / r0 - 1.0).abs()
        })
        .fold(0.0, f64::max))
}

/// Demodulated differential output with per-electrode gains, V.
fn dual_preamp_output(
    topo: &Topology,
    res: &ResonatorParams,
    rate: f64,
    phase_error: f64,
    t: f64,
) -> f64 {
    let (g_plus, g_minus) = electrode_gains(topo, res, t);
    let q = charge_phasors(res, rate);
    let v = q.q_plus.scale(g_plus) - q.q_minus.scale(g_minus);
    demodulate(v, phase_error).0
}

/// Worst-case full-scale output drift between `t_min` and `t_max`, ppm,
/// taken over both tempco sign corners of each independent gain-setting part.
pub fn worst_case_drift_ppm(
    topo: &Topology,
    res: &ResonatorParams,
    rate: f64,
    phase_error: f64,
    t_min: f64,
    t_max: f64,
) -> f64 {
    let corners: &[f64] = &[1.0, -1.0];
    let mut worst: f64 = 0.0;
    for &sign in corners {
        let shared = with_gain_tempco_sign(topo, sign);
        let drift = |t: &Topology| {
            let a = dual_preamp_output(t, res, rate, phase_error, t_min);
            let b = dual_preamp_output(t, res, rate, phase_error, t_max);
            1e6 * (b / a - 1.0).abs()
        };
        // `electrode_gains` gives the q_minus part the opposite sign.
        worst = worst.max(drift(&shared));
        if !matches!(topo, Topology::DiffChargeAmp { .. }) {
            // Both parts on the same corner: only the common gain moves.
            let g = |t: f64| charge_gain(&shared, res, t);
            let a = g(t_min);
            let b = g(t_max);
            worst = worst.max(1e6 * (b / a - 1.0).abs());
        }
    }
    worst
}

/// Shared parameters for [`compare_topologies`].
#[derive(Debug, Clone, PartialEq)]
pub struct CompareBase {
    pub resonator: ResonatorParams,
    pub amp: OpAmpModel,
    pub t_abs: f64,
    /// Full-scale rate used for the drift metric, rad/s.
    pub rate: f64,
    pub demod_phase_error: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl CompareBase {
    pub fn new(resonator: ResonatorParams, amp: OpAmpModel) -> Self {
        Self {
            resonator,
            amp,
            t_abs: DEFAULT_T_ABS,
            rate: 1.0,
            demod_phase_error: 0.0,
            t_min: -40.0,
            t_max: 80.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub name: String,
    pub kind: TopologyKind,
    /// Output noise density at the carrier, V/√Hz.
    pub noise_density: f64,
    /// Worst-case full-scale output drift over the range, ppm.
    pub drift_ppm: f64,
    pub integrable: bool,
    pub simplicity: bool,
}

/// Relative tolerance on the reference-temperature gains of compared topologies.
pub const GAIN_NORMALIZATION_TOL: f64 = 1e-6;

/// Ranks gain-normalized topologies by output noise, then drift.
pub fn compare_topologies(
    base: &CompareBase,
    entries: &[(String, Topology)],
) -> Result<Vec<ComparisonRow>> {
    if entries.is_empty() {
        return Err(Error::Config("no topologies to compare".into()));
    }
    if base.rate == 0.0 {
        return Err(Error::Config(
            "compare needs a non-zero full-scale rate".into(),
        ));
    }
    let res = &base.resonator;
    let reference = charge_gain(&entries[0].1, res, T_REF_CELSIUS);
    for (name, topo) in entries {
        topo.validate()?;
        let g = charge_gain(topo, res, T_REF_CELSIUS);
        if !((g - reference).abs() <= GAIN_NORMALIZATION_TOL * reference.abs()) {
            return Err(Error::Config(format!(
                "topology `{name}` gain {g:e} V/C differs from `{}` gain {reference:e} V/C; \
                 compared topologies must be gain-normalized",
                entries[0].0
            )));
        }
    }
    let f = res.carrier_hz();
    let mut rows: Vec<ComparisonRow> = entries
        .iter()
        .map(|(name, topo)| {
            let kind = topo.kind();
            let noise = input_noise_psd(topo, res, &base.amp, f, base.t_abs)
                .scaled(charge_gain(topo, res, T_REF_CELSIUS), NoiseUnits::Voltage);
            ComparisonRow {
                name: name.clone(),
                kind,
                noise_density: noise.total_rss,
                drift_ppm: worst_case_drift_ppm(
                    topo,
                    res,
                    base.rate,
                    base.demod_phase_error,
                    base.t_min,
                    base.t_max,
                ),
                integrable: kind.integrable(),
                simplicity: kind.simple(),
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        a.noise_density
            .total_cmp(&b.noise_density)
            .then(a.drift_ppm.total_cmp(&b.drift_ppm))
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::MatchedGroup;
    use crate::preamp::equal_output_cfb;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn charge_cfg(c_tempco: f64) -> ChainConfig {
        ChainConfig::new(
            ResonatorParams::default(),
            Topology::ChargeAmp {
                c_fb: TempcoValue::new(24.5e-12, c_tempco),
                r_fb: TempcoValue::new(10e6, 30.0),
            },
            OpAmpModel::default(),
        )
    }

    fn five(res: &ResonatorParams) -> Vec<(String, Topology)> {
        let r_fb = 10e6;
        let c_fb = equal_output_cfb(r_fb, res.omega_x);
        let c_p = 2e-12;
        vec![
            (
                "current".into(),
                Topology::CurrentAmp {
                    r_fb: TempcoValue::new(r_fb, 30.0),
                },
            ),
            (
                "charge".into(),
                Topology::ChargeAmp {
                    c_fb: TempcoValue::new(c_fb, 30.0),
                    r_fb: TempcoValue::new(r_fb, 30.0),
                },
            ),
            (
                "voltage".into(),
                Topology::VoltageAmp {
                    r: TempcoValue::new(r_fb, 30.0),
                    c_p: TempcoValue::new(c_p, 100.0),
                    gain: (res.c0 + c_p) / c_fb,
                },
            ),
            (
                "diff_charge".into(),
                Topology::DiffChargeAmp {
                    c_fb_pair: MatchedGroup::new(vec![c_fb, c_fb], 30.0),
                    r_fb: TempcoValue::new(r_fb, 30.0),
                },
            ),
            (
                "switched_cap".into(),
                Topology::SwitchedCapAmp {
                    c_fb: TempcoValue::new(c_fb, 30.0),
                    f_switch: 1e3,
                },
            ),
        ]
    }

    #[test]
    fn zero_noise_budget_is_unbounded() {
        let mut cfg = charge_cfg(30.0);
        cfg.amp = OpAmpModel::noiseless();
        let at = OperatingPoint {
            t_abs: 0.0,
            ..Default::default()
        };
        let b = noise_budget(&cfg, &at, 1.0).unwrap();
        assert_eq!(b.rms_noise, 0.0);
        assert!(b.snr_unbounded);
        assert!(b.snr.is_infinite());
    }

    #[test]
    fn budget_scales_with_bandwidth() {
        let cfg = charge_cfg(30.0);
        let at = OperatingPoint::default();
        let b1 = noise_budget(&cfg, &at, 1.0).unwrap();
        let b2 = noise_budget(&cfg, &at, 2.0).unwrap();
        assert_relative_eq!(
            b2.rms_noise / b1.rms_noise,
            2f64.sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(b1.rms_noise, b1.breakdown.total_rss, max_relative = 1e-15);
        assert!(noise_budget(&cfg, &at, 0.0).is_err());
    }

    #[test]
    fn budget_resolution_and_snr_are_consistent() {
        let cfg = charge_cfg(30.0);
        let at = OperatingPoint::default();
        let b = noise_budget(&cfg, &at, 1.0).unwrap();
        assert_relative_eq!(
            b.rate_resolution,
            b.breakdown.total_rss / scale_factor(&cfg, 25.0),
            max_relative = 1e-14
        );
        // snr = sqrt(2) * rate / resolution for a 1 Hz bandwidth
        assert_relative_eq!(
            b.snr,
            2f64.sqrt() * at.rate / b.rate_resolution,
            max_relative = 1e-12
        );
    }

    #[test]
    fn grid_is_inclusive() {
        assert_eq!(temperature_grid(-40.0, 80.0, 10.0).unwrap().len(), 13);
        assert_eq!(temperature_grid(0.0, 1.0, 0.3).unwrap().len(), 4);
        assert!(temperature_grid(10.0, 10.0, 1.0).is_err());
        assert!(temperature_grid(0.0, 10.0, 0.0).is_err());
    }

    #[test]
    fn flat_sweep_without_tempcos() {
        let mut cfg = charge_cfg(0.0);
        cfg.resonator.freq_tempco = 0.0;
        let s = thermal_sweep(&cfg, -40.0, 80.0, 10.0, 1.0).unwrap();
        assert_eq!(s.len(), 13);
        assert_eq!(s.total_drift_volts, 0.0);
        assert!(s.drift_ppm.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn charge_amp_drift_is_120_times_tempco() {
        let cfg = charge_cfg(30.0);
        let s = thermal_sweep(&cfg, -40.0, 80.0, 10.0, 1.0).unwrap();
        assert_relative_eq!(s.total_drift_ppm.abs(), 3600.0, max_relative = 0.01);
        assert_relative_eq!(s.drift_slope, -30.0, max_relative = 0.01);
        assert_relative_eq!(s.lsq_slope, -30.0, max_relative = 0.01);
    }

    #[test]
    fn charge_amp_drift_ignores_resonator_frequency() {
        let mut a = charge_cfg(30.0);
        a.resonator.freq_tempco = 0.0;
        let mut b = a.clone();
        b.resonator.freq_tempco = -80.0;
        let sa = thermal_sweep(&a, -40.0, 80.0, 5.0, 1.0).unwrap();
        let sb = thermal_sweep(&b, -40.0, 80.0, 5.0, 1.0).unwrap();
        assert_eq!(sa.gains, sb.gains);
    }

    #[test]
    fn current_amp_drift_carries_frequency_drift() {
        let mut cfg = charge_cfg(30.0);
        cfg.topology = Topology::CurrentAmp {
            r_fb: TempcoValue::new(10e6, 30.0),
        };
        cfg.resonator.freq_tempco = 0.0;
        let without = thermal_sweep(&cfg, -40.0, 80.0, 10.0, 1.0).unwrap();
        cfg.resonator.freq_tempco = -30.0;
        let with = thermal_sweep(&cfg, -40.0, 80.0, 10.0, 1.0).unwrap();
        for ((t, g1), g0) in with
            .temperatures
            .iter()
            .zip(&with.gains)
            .zip(&without.gains)
        {
            let expected = cfg.resonator.omega_at(*t) / cfg.resonator.omega_x;
            assert_relative_eq!(g1 / g0, expected, max_relative = 1e-14);
        }
    }

    #[test]
    fn voltage_amp_drift_follows_parasitic() {
        let res = ResonatorParams::default();
        let topo = |c_p: f64| Topology::VoltageAmp {
            r: TempcoValue::new(10e6, 30.0),
            c_p: TempcoValue::new(c_p, 100.0),
            gain: 10.0,
        };
        let mk = |c_p| ChainConfig::new(res, topo(c_p), OpAmpModel::default());
        let with = thermal_sweep(&mk(2e-12), -40.0, 80.0, 10.0, 1.0).unwrap();
        let without = thermal_sweep(&mk(0.0), -40.0, 80.0, 10.0, 1.0).unwrap();
        assert!(with.total_drift_ppm.abs() > 1000.0);
        assert_eq!(without.total_drift_ppm, 0.0);
    }

    #[test]
    fn matched_pair_has_no_ratio_drift() {
        let res = ResonatorParams::default();
        let diff = Topology::DiffChargeAmp {
            c_fb_pair: MatchedGroup::new(vec![10e-12, 10e-12], 30.0),
            r_fb: TempcoValue::new(10e6, 30.0),
        };
        assert!(gain_ratio_drift_ppm(&diff, &res, -40.0, 80.0, 1.0).unwrap() < 1e-6);
        let single = Topology::ChargeAmp {
            c_fb: TempcoValue::new(10e-12, 30.0),
            r_fb: TempcoValue::new(10e6, 30.0),
        };
        let unmatched = gain_ratio_drift_ppm(&single, &res, -40.0, 80.0, 1.0).unwrap();
        // 60 ppm/°C over 65 °C below the reference, to first order
        assert_relative_eq!(unmatched, 3900.0, max_relative = 0.01);
    }

    #[test]
    fn comparison_reproduces_table_ordering() {
        let res = ResonatorParams::default();
        let base = CompareBase::new(res, OpAmpModel::default());
        let rows = compare_topologies(&base, &five(&res)).unwrap();
        assert_eq!(rows.len(), 5);
        let by = |k: TopologyKind| rows.iter().find(|r| r.kind == k).unwrap();
        assert_eq!(rows.last().unwrap().kind, TopologyKind::SwitchedCap);
        let good = [
            TopologyKind::DiffCharge,
            TopologyKind::Charge,
            TopologyKind::SwitchedCap,
        ];
        let bad = [TopologyKind::Current, TopologyKind::Voltage];
        for g in good {
            for b in bad {
                assert!(by(g).drift_ppm < by(b).drift_ppm, "{g} vs {b}: {rows:#?}");
            }
        }
        assert!(by(TopologyKind::DiffCharge).drift_ppm < by(TopologyKind::Charge).drift_ppm);
        assert!(!by(TopologyKind::Current).integrable);
        for w in rows.windows(2) {
            assert!(w[0].noise_density <= w[1].noise_density);
        }
    }

    #[test]
    fn comparison_requires_gain_normalization() {
        let res = ResonatorParams::default();
        let mut entries = five(&res);
        entries[1].1 = Topology::ChargeAmp {
            c_fb: TempcoValue::new(24.5e-12, 30.0),
            r_fb: TempcoValue::new(10e6, 30.0),
        };
        let err = compare_topologies(&CompareBase::new(res, OpAmpModel::default()), &entries);
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn single_topology_comparison() {
        let res = ResonatorParams::default();
        let one = vec![five(&res).remove(1)];
        let rows = compare_topologies(&CompareBase::new(res, OpAmpModel::default()), &one).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].kind, TopologyKind::Charge);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ordering_invariant_under_noise_scaling(s in 0.01..100.0f64) {
            let res = ResonatorParams::default();
            let base = CompareBase::new(res, OpAmpModel::default());
            let scaled = CompareBase {
                amp: OpAmpModel {
                    en: base.amp.en * s,
                    in_noise: base.amp.in_noise * s,
                    ..base.amp
                },
                t_abs: base.t_abs * s * s,
                ..base.clone()
            };
            let a: Vec<_> = compare_topologies(&base, &five(&res)).unwrap().into_iter().map(|r| r.kind).collect();
            let b: Vec<_> = compare_topologies(&scaled, &five(&res)).unwrap().into_iter().map(|r| r.kind).collect();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn budget_rms_is_density_times_root_bandwidth(bw in 1e-3..1e5f64) {
            let cfg = charge_cfg(30.0);
            let b = noise_budget(&cfg, &OperatingPoint::default(), bw).unwrap();
            prop_assert!((b.rms_noise - b.breakdown.total_rss * bw.sqrt()).abs() <= 1e-14 * b.rms_noise);
        }
    }
}
