//! Time-domain check of the analytic noise budget.
//!
//! Each noise source is synthesized as a seeded white Gaussian sequence and
//! injected where it physically enters the preamplifier:
//!
//! * current sources (Johnson noise of the resistance at the summing node,
//!   op-amp current noise) are integrated into charge by a leaky integrator
//!   whose pole sits two decades below the carrier;
//! * the op-amp voltage noise becomes charge through the capacitance it
//!   drives at the summing node;
//! * switch reset noise is a white charge source.
//!
//! The sum rides on the electrode charge, goes through the preamp gain,
//! the demodulator and a single-pole low-pass. The demodulated baseband
//! density is then compared with the analytic output density.

mod psd;

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::chain::ChainConfig;
use crate::components::T_REF_CELSIUS;
use crate::error::{Error, Result};
use crate::preamp::{output_noise_psd, Topology, BOLTZMANN, DEFAULT_T_ABS, NOISE_SOURCES};
use crate::signal::charge_timeseries;

pub use psd::{segment_count, welch, PsdEstimate};

/// Smallest accepted ratio of sample rate to carrier frequency.
pub const MIN_OVERSAMPLING: f64 = 20.0;
/// Smallest accepted trace length.
pub const MIN_SAMPLES: usize = 1 << 12;
/// Segments averaged by [`verify_against_analytic`], at least.
pub const MIN_VERIFY_SEGMENTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseSource {
    Johnson,
    OpampCurrent,
    OpampVoltage,
    Ktc,
}

impl NoiseSource {
    pub const ALL: [NoiseSource; 4] = [
        NoiseSource::Johnson,
        NoiseSource::OpampCurrent,
        NoiseSource::OpampVoltage,
        NoiseSource::Ktc,
    ];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        NOISE_SOURCES[self.index()]
    }
}

/// Which noise sources a run synthesizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSet([bool; 4]);

impl SourceSet {
    pub const ALL: SourceSet = SourceSet([true; 4]);
    pub const NONE: SourceSet = SourceSet([false; 4]);

    pub fn only(source: NoiseSource) -> Self {
        let mut s = [false; 4];
        s[source.index()] = true;
        SourceSet(s)
    }

    pub fn contains(&self, source: NoiseSource) -> bool {
        self.0[source.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimOptions {
    pub seed: u64,
    /// Hz.
    pub fs: f64,
    /// s.
    pub duration: f64,
    /// Applied angular rate, rad/s.
    pub rate: f64,
    /// Ambient temperature for component values, °C.
    pub t_celsius: f64,
    /// Absolute temperature for thermal noise, K.
    pub t_abs: f64,
    pub sources: SourceSet,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            fs: 640e3,
            duration: 1.0,
            rate: 0.0,
            t_celsius: T_REF_CELSIUS,
            t_abs: DEFAULT_T_ABS,
            sources: SourceSet::ALL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimRun {
    pub seed: u64,
    pub fs: f64,
    pub duration: f64,
    /// Low-pass output, V; `round(fs·duration)` samples.
    pub trace: Vec<f64>,
}

enum Injection {
    /// White current, A/√Hz, integrated into charge.
    Current(f64),
    /// White charge, C/√Hz.
    Charge(f64),
}

fn parallel(a: f64, b: f64) -> f64 {
    a * b / (a + b)
}

/// How each source of `cfg` enters the summing node.
fn injection(cfg: &ChainConfig, source: NoiseSource, t_abs: f64) -> Injection {
    let res = &cfg.resonator;
    let amp = &cfg.amp;
    let thermal = |r: f64| (4.0 * BOLTZMANN * t_abs / r).sqrt();
    match source {
        NoiseSource::Johnson => Injection::Current(match &cfg.topology {
            Topology::CurrentAmp { r_fb }
            | Topology::ChargeAmp { r_fb, .. }
            | Topology::DiffChargeAmp { r_fb, .. } => thermal(parallel(r_fb.nominal, res.ro)),
            Topology::VoltageAmp { r, .. } => thermal(r.nominal),
            Topology::SwitchedCapAmp { .. } => thermal(res.ro),
        }),
        NoiseSource::OpampCurrent => Injection::Current(amp.in_noise),
        NoiseSource::OpampVoltage => {
            // Capacitance across which e_n develops charge. The current
            // amplifier's feedback resistor is folded in as its admittance
            // at the carrier, in phase with the C0 path.
            let c = match &cfg.topology {
                Topology::CurrentAmp { r_fb } => res.c0 + 1.0 / (r_fb.nominal * res.omega_x),
                Topology::VoltageAmp { .. } => res.c0,
                Topology::ChargeAmp { c_fb, .. } | Topology::SwitchedCapAmp { c_fb, .. } => {
                    res.c0 + c_fb.nominal
                }
                Topology::DiffChargeAmp { c_fb_pair, .. } => res.c0 + c_fb_pair.nominals[0],
            };
            Injection::Charge(amp.en * c)
        }
        NoiseSource::Ktc => Injection::Charge(match &cfg.topology {
            // k·T·C per reset, spread over the 0..f_switch/2 band.
            Topology::SwitchedCapAmp { c_fb, f_switch } => {
                (BOLTZMANN * t_abs * c_fb.nominal / (f_switch / 2.0)).sqrt()
            }
            _ => 0.0,
        }),
    }
}

/// Adds one source's charge sequence into `acc`.
fn add_source(
    acc: &mut [f64],
    inj: &Injection,
    cfg: &ChainConfig,
    fs: f64,
    seed: u64,
    stream: u64,
) {
    let density = match *inj {
        Injection::Current(d) | Injection::Charge(d) => d,
    };
    if density == 0.0 {
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let sigma = density * (fs / 2.0).sqrt();
    let normal = Normal::new(0.0, sigma).expect("finite sigma");
    match inj {
        Injection::Charge(_) => {
            for a in acc.iter_mut() {
                *a += normal.sample(&mut rng);
            }
        }
        Injection::Current(_) => {
            let pole = cfg.resonator.omega_x / 100.0;
            let leak = (-pole / fs).exp();
            let warmup = (10.0 * fs / pole).ceil() as usize;
            let mut q = 0.0;
            for _ in 0..warmup {
                q = leak * q + normal.sample(&mut rng) / fs;
            }
            for a in acc.iter_mut() {
                q = leak * q + normal.sample(&mut rng) / fs;
                *a += q;
            }
        }
    }
}

/// Single-pole smoothing coefficient for corner `fc` at sample rate `fs`.
fn lowpass_alpha(fc: f64, fs: f64) -> f64 {
    1.0 - (-2.0 * PI * fc / fs).exp()
}

/// |H|² of the single-pole low-pass at frequency `f`.
fn lowpass_power_gain(alpha: f64, f: f64, fs: f64) -> f64 {
    let b = 1.0 - alpha;
    let w = 2.0 * PI * f / fs;
    alpha * alpha / (1.0 - 2.0 * b * w.cos() + b * b)
}

/// Runs the chain in the time domain.
pub fn simulate(cfg: &ChainConfig, opts: &SimOptions) -> Result<SimRun> {
    cfg.validate()?;
    let carrier = cfg.resonator.carrier_hz();
    if !(opts.fs >= MIN_OVERSAMPLING * carrier) {
        return Err(Error::Sampling {
            fs: opts.fs,
            reason: format!(
                "need at least {MIN_OVERSAMPLING} x carrier = {:.6e} Hz",
                MIN_OVERSAMPLING * carrier
            ),
        });
    }
    let n = (opts.fs * opts.duration).round();
    if !(n >= MIN_SAMPLES as f64) {
        return Err(Error::Duration {
            samples: if n.is_finite() && n > 0.0 {
                n as usize
            } else {
                0
            },
            required: MIN_SAMPLES,
        });
    }
    let signal = charge_timeseries(&cfg.resonator, opts.rate, opts.fs, opts.duration)?;
    let mut charge: Vec<f64> = signal
        .q_plus
        .iter()
        .zip(&signal.q_minus)
        .map(|(p, m)| p - m)
        .collect();
    for source in NoiseSource::ALL {
        if opts.sources.contains(source) {
            let inj = injection(cfg, source, opts.t_abs);
            add_source(
                &mut charge,
                &inj,
                cfg,
                opts.fs,
                opts.seed,
                source.index() as u64 + 1,
            );
        }
    }
    let gain = cfg.gain_at(opts.t_celsius);
    let step = cfg.resonator.omega_x / opts.fs;
    let alpha = lowpass_alpha(cfg.lowpass_bandwidth, opts.fs);
    let mut y = 0.0;
    let trace = charge
        .iter()
        .enumerate()
        .map(|(k, q)| {
            let reference = (step * k as f64 + cfg.demod_phase_error).sin();
            y += alpha * (gain * q * reference - y);
            y
        })
        .collect();
    Ok(SimRun {
        seed: opts.seed,
        fs: opts.fs,
        duration: opts.duration,
        trace,
    })
}

/// [`welch`] over a run's trace.
pub fn estimate_psd(run: &SimRun, segment_len: usize, overlap: f64) -> Result<PsdEstimate> {
    welch(&run.trace, run.fs, segment_len, overlap)
}

/// Output density at the carrier recovered from the demodulated baseband,
/// V/√Hz: bins 2 and up to the low-pass corner, low-pass response divided
/// out, ×√2 for the demodulator's halving of noise power.
pub fn baseband_density(psd: &PsdEstimate, cfg: &ChainConfig, fs: f64) -> Result<f64> {
    let alpha = lowpass_alpha(cfg.lowpass_bandwidth, fs);
    let band: Vec<f64> = psd
        .frequencies
        .iter()
        .zip(&psd.densities)
        .skip(2)
        .take_while(|(f, _)| **f <= cfg.lowpass_bandwidth)
        .map(|(&f, &d)| d * d / lowpass_power_gain(alpha, f, fs))
        .collect();
    if band.len() < 4 {
        return Err(Error::Segment(format!(
            "only {} bins below the {} Hz low-pass corner; use longer segments",
            band.len(),
            cfg.lowpass_bandwidth
        )));
    }
    let mean = band.iter().sum::<f64>() / band.len() as f64;
    Ok((2.0 * mean).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceCheck {
    /// A name from [`NOISE_SOURCES`] or `"total"`.
    pub source: &'static str,
    /// V/√Hz.
    pub analytic: f64,
    /// V/√Hz.
    pub simulated: f64,
    pub relative_error: f64,
}

impl SourceCheck {
    fn new(source: &'static str, analytic: f64, simulated: f64) -> Self {
        let relative_error = if analytic == 0.0 && simulated == 0.0 {
            0.0
        } else {
            (simulated - analytic).abs() / analytic
        };
        Self {
            source,
            analytic,
            simulated,
            relative_error,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub segment_count: usize,
    pub segment_len: usize,
    /// One entry per [`NoiseSource`], in order.
    pub sources: Vec<SourceCheck>,
    pub total: SourceCheck,
}

impl Verification {
    pub fn max_relative_error(&self) -> f64 {
        self.sources
            .iter()
            .chain(std::iter::once(&self.total))
            .map(|c| c.relative_error)
            .fold(0.0, f64::max)
    }
}

/// Longest power-of-two segment giving at least [`MIN_VERIFY_SEGMENTS`]
/// half-overlapping segments in `len` samples.
pub fn verification_segment_len(len: usize) -> usize {
    let cap = 2 * len / (MIN_VERIFY_SEGMENTS + 1);
    let mut l = 1usize;
    while l * 2 <= cap {
        l *= 2;
    }
    l
}

/// Simulates each noise source alone and all of them together, and
/// compares the recovered carrier density with [`output_noise_psd`].
/// `opts.sources` and `opts.rate` are ignored; runs are noise-only.
pub fn verify_against_analytic(cfg: &ChainConfig, opts: &SimOptions) -> Result<Verification> {
    let analytic = output_noise_psd(
        &cfg.topology,
        &cfg.resonator,
        &cfg.amp,
        cfg.resonator.carrier_hz(),
        opts.t_abs,
        opts.t_celsius,
    );
    let n = (opts.fs * opts.duration).round() as usize;
    let segment_len = verification_segment_len(n);
    // Zero the deterministic charge so only noise reaches the estimate.
    let mut quiet = cfg.clone();
    quiet.resonator.coupling_cap = 0.0;
    quiet.resonator.coupling_mech = 0.0;
    let cfg = &quiet;
    let sets: Vec<SourceSet> = NoiseSource::ALL
        .iter()
        .map(|&s| SourceSet::only(s))
        .chain(std::iter::once(SourceSet::ALL))
        .collect();
    let measured = sets
        .par_iter()
        .map(|&sources| {
            let run = simulate(
                cfg,
                &SimOptions {
                    rate: 0.0,
                    sources,
                    ..*opts
                },
            )?;
            let psd = estimate_psd(&run, segment_len, 0.5)?;
            if psd.segment_count < MIN_VERIFY_SEGMENTS {
                return Err(Error::Segment(format!(
                    "{} segments, need {MIN_VERIFY_SEGMENTS}",
                    psd.segment_count
                )));
            }
            Ok((baseband_density(&psd, cfg, run.fs)?, psd.segment_count))
        })
        .collect::<Result<Vec<_>>>()?;
    let sources = NoiseSource::ALL
        .iter()
        .zip(&measured)
        .map(|(s, (sim, _))| SourceCheck::new(s.name(), analytic.sources()[s.index()], *sim))
        .collect();
    let (total_sim, segment_count) = measured[NoiseSource::ALL.len()];
    Ok(Verification {
        segment_count,
        segment_len,
        sources,
        total: SourceCheck::new("total", analytic.total_rss, total_sim),
    })
}
