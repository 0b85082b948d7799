//! Run configuration: a flat, sectioned `key = value` text format.
//!
//! ```text
//! # comment
//! [resonator]
//! c0 = 1e-12
//!
//! [component.cfb]
//! nominal = 24.5e-12
//! tempco_ppm_per_C = 30
//!
//! [topology.bench]
//! kind = charge
//! c_fb = cfb
//! r_fb = rfb
//!
//! [chain]
//! topology = bench
//! ```
//!
//! Units are fixed per key (SI base units, rad/s, ppm/°C, °C, K). Components
//! that carry the same `matched_group` label form a [`MatchedGroup`] in
//! declaration order, which a `diff_charge` topology references through
//! `c_fb_pair`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::analysis::{CompareBase, OperatingPoint};
use crate::chain::{scale_factor, ChainConfig};
use crate::components::{MatchedGroup, OpAmpModel, TempcoValue, T_REF_CELSIUS};
use crate::error::{Error, Result};
use crate::montecarlo::{SimOptions, SourceSet};
use crate::preamp::{Topology, TopologyKind, DEFAULT_T_ABS};
use crate::signal::ResonatorParams;

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSpec {
    pub name: String,
    pub value: TempcoValue,
    pub matched_group: Option<String>,
}

/// A topology whose components are named references.
#[derive(Debug, Clone, PartialEq)]
pub enum TopologyRefs {
    Current { r_fb: String },
    Charge { c_fb: String, r_fb: String },
    Voltage { r: String, c_p: String, gain: f64 },
    DiffCharge { c_fb_pair: String, r_fb: String },
    SwitchedCap { c_fb: String, f_switch: f64 },
}

impl TopologyRefs {
    pub fn kind(&self) -> TopologyKind {
        match self {
            TopologyRefs::Current { .. } => TopologyKind::Current,
            TopologyRefs::Charge { .. } => TopologyKind::Charge,
            TopologyRefs::Voltage { .. } => TopologyKind::Voltage,
            TopologyRefs::DiffCharge { .. } => TopologyKind::DiffCharge,
            TopologyRefs::SwitchedCap { .. } => TopologyKind::SwitchedCap,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopologySpec {
    pub name: String,
    pub refs: TopologyRefs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSection {
    pub topology: String,
    pub demod_phase_error: f64,
    pub lowpass_bandwidth: f64,
    /// Bandwidth of the noise budget, Hz.
    pub noise_bandwidth: f64,
    pub rate: f64,
    pub temperature: f64,
    pub t_abs: f64,
    /// Noise evaluation frequency, Hz; the carrier when absent.
    pub eval_frequency: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSection {
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
    /// Output at the reference temperature, V. When set, the sweep runs at
    /// the rate that produces it instead of `chain.rate`.
    pub output_amplitude: Option<f64>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            t_min: -40.0,
            t_max: 80.0,
            step: 10.0,
            output_amplitude: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSection {
    pub seed: u64,
    pub fs: f64,
    pub duration: f64,
    pub segment_len: usize,
    pub overlap: f64,
}

impl Default for SimSection {
    fn default() -> Self {
        Self {
            seed: 1,
            fs: 640e3,
            duration: 0.1,
            segment_len: 4096,
            overlap: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub resonator: ResonatorParams,
    pub amp: OpAmpModel,
    pub components: Vec<ComponentSpec>,
    pub topologies: Vec<TopologySpec>,
    pub chain: ChainSection,
    pub sweep: SweepSection,
    pub sim: SimSection,
    /// Topology names for `compare`, when configured.
    pub compare: Option<Vec<String>>,
    pub output_dir: Option<String>,
}

type Section = BTreeMap<String, (usize, String)>;

struct Reader {
    name: String,
    line: usize,
    entries: Section,
}

impl Reader {
    fn field(&self, key: &str) -> String {
        format!("{}.{key}", self.name)
    }

    fn raw(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.remove(key)
    }

    fn string(&mut self, key: &str) -> Result<Option<String>> {
        Ok(self.raw(key).map(|(_, v)| v))
    }

    fn required_string(&mut self, key: &str) -> Result<String> {
        match self.string(key)? {
            Some(v) if !v.is_empty() => Ok(v),
            _ => Err(Error::validation(self.field(key), "required")),
        }
    }

    fn number(&mut self, key: &str) -> Result<Option<f64>> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, v)) => v.parse::<f64>().map(Some).map_err(|_| Error::Parse {
                line,
                field: self.field(key),
                message: format!("`{v}` is not a number"),
            }),
        }
    }

    fn number_or(&mut self, key: &str, default: f64) -> Result<f64> {
        Ok(self.number(key)?.unwrap_or(default))
    }

    fn required_number(&mut self, key: &str) -> Result<f64> {
        self.number(key)?
            .ok_or_else(|| Error::validation(self.field(key), "required"))
    }

    fn integer_or(&mut self, key: &str, default: u64) -> Result<u64> {
        match self.raw(key) {
            None => Ok(default),
            Some((line, v)) => v.parse::<u64>().map_err(|_| Error::Parse {
                line,
                field: self.field(key),
                message: format!("`{v}` is not a non-negative integer"),
            }),
        }
    }

    /// Fails on keys nobody asked for.
    fn finish(self) -> Result<()> {
        match self.entries.into_iter().next() {
            None => Ok(()),
            Some((key, (line, _))) => Err(Error::Parse {
                line,
                field: format!("{}.{key}", self.name),
                message: "unknown key".into(),
            }),
        }
    }
}

fn split_sections(text: &str) -> Result<Vec<Reader>> {
    let mut sections: Vec<Reader> = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| Error::Parse {
                line,
                field: content.into(),
                message: "unterminated section header".into(),
            })?;
            let name = name.trim().to_string();
            if name.is_empty() {
                return Err(Error::Parse {
                    line,
                    field: content.into(),
                    message: "empty section name".into(),
                });
            }
            if !seen.insert(name.clone()) {
                let field = if name.starts_with("component.") {
                    format!("{name} (matched_group member names must be unique)")
                } else {
                    name.clone()
                };
                return Err(Error::validation(
                    field,
                    format!("duplicate section at line {line}"),
                ));
            }
            sections.push(Reader {
                name,
                line,
                entries: Section::new(),
            });
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
            line,
            field: content.into(),
            message: "expected `key = value`".into(),
        })?;
        let section = sections.last_mut().ok_or_else(|| Error::Parse {
            line,
            field: key.trim().into(),
            message: "key outside of any section".into(),
        })?;
        let key = key.trim().to_string();
        if section.entries.contains_key(&key) {
            return Err(Error::Parse {
                line,
                field: format!("{}.{key}", section.name),
                message: "duplicate key".into(),
            });
        }
        section
            .entries
            .insert(key, (line, value.trim().to_string()));
    }
    Ok(sections)
}

fn prefixed(prefix: &str, e: Error) -> Error {
    match e {
        Error::Validation { field, message } if !field.starts_with(prefix) => Error::Validation {
            field: format!("{prefix}.{field}"),
            message,
        },
        other => other,
    }
}

/// Parses and fully validates a configuration.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut resonator = None;
    let mut amp = None;
    let mut components = Vec::new();
    let mut topologies = Vec::new();
    let mut chain = None;
    let mut sweep = None;
    let mut sim = None;
    let mut compare = None;
    let mut output_dir = None;

    for mut r in split_sections(text)? {
        let name = r.name.clone();
        match name.as_str() {
            "resonator" => {
                let defaults = ResonatorParams::default();
                let c0 = r.required_number("c0")?;
                let ro = r.required_number("ro")?;
                let omega_x = r.required_number("omega_x")?;
                let rate_sensitivity =
                    r.number_or("rate_sensitivity", defaults.rate_sensitivity)?;
                let full_scale = r.number_or("full_scale_rate", 1.0)?;
                let coupling_cap =
                    r.number_or("coupling_cap", 10.0 * rate_sensitivity * full_scale)?;
                let coupling_mech =
                    r.number_or("coupling_mech", 5.0 * rate_sensitivity * full_scale)?;
                let freq_tempco = r.number_or("freq_tempco", defaults.freq_tempco)?;
                let params = ResonatorParams {
                    c0,
                    ro,
                    omega_x,
                    rate_sensitivity,
                    coupling_cap,
                    coupling_mech,
                    freq_tempco,
                };
                params.validate()?;
                resonator = Some(params);
            }
            "amp" => {
                let d = OpAmpModel::default();
                amp = Some(OpAmpModel {
                    en: r.number_or("en", d.en)?,
                    in_noise: r.number_or("in", d.in_noise)?,
                    open_loop_gain: r.number_or("open_loop_gain", d.open_loop_gain)?,
                });
            }
            "chain" => {
                chain = Some(ChainSection {
                    topology: r.required_string("topology")?,
                    demod_phase_error: r.number_or("demod_phase_error", 0.0)?,
                    lowpass_bandwidth: r.number_or("lowpass_bandwidth", 1000.0)?,
                    noise_bandwidth: r.number_or("noise_bandwidth", 1.0)?,
                    rate: r.number_or("rate", 1.0)?,
                    temperature: r.number_or("temperature", T_REF_CELSIUS)?,
                    t_abs: r.number_or("t_abs", DEFAULT_T_ABS)?,
                    eval_frequency: r.number("eval_frequency")?,
                });
            }
            "sweep" => {
                let d = SweepSection::default();
                sweep = Some(SweepSection {
                    t_min: r.number_or("t_min", d.t_min)?,
                    t_max: r.number_or("t_max", d.t_max)?,
                    step: r.number_or("step", d.step)?,
                    output_amplitude: r.number("output_amplitude")?,
                });
            }
            "sim" => {
                let d = SimSection::default();
                sim = Some(SimSection {
                    seed: r.integer_or("seed", d.seed)?,
                    fs: r.number_or("fs", d.fs)?,
                    duration: r.number_or("duration", d.duration)?,
                    segment_len: r.integer_or("segment_len", d.segment_len as u64)? as usize,
                    overlap: r.number_or("overlap", d.overlap)?,
                });
            }
            "compare" => {
                let list = r.required_string("topologies")?;
                compare = Some(
                    list.split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect::<Vec<_>>(),
                );
            }
            "output" => output_dir = r.string("dir")?,
            _ => {
                if let Some(cname) = name.strip_prefix("component.") {
                    let value = TempcoValue {
                        nominal: r.required_number("nominal")?,
                        tempco: r.number_or("tempco_ppm_per_C", 0.0)?,
                        t_ref: r.number_or("t_ref", T_REF_CELSIUS)?,
                    };
                    components.push(ComponentSpec {
                        name: cname.to_string(),
                        value,
                        matched_group: r.string("matched_group")?.filter(|s| !s.is_empty()),
                    });
                } else if let Some(tname) = name.strip_prefix("topology.") {
                    let kind_name = r.required_string("kind")?;
                    let kind = TopologyKind::from_name(&kind_name).ok_or_else(|| {
                        Error::validation(
                            r.field("kind"),
                            format!("unknown topology kind `{kind_name}`"),
                        )
                    })?;
                    let refs = match kind {
                        TopologyKind::Current => TopologyRefs::Current {
                            r_fb: r.required_string("r_fb")?,
                        },
                        TopologyKind::Charge => TopologyRefs::Charge {
                            c_fb: r.required_string("c_fb")?,
                            r_fb: r.required_string("r_fb")?,
                        },
                        TopologyKind::Voltage => TopologyRefs::Voltage {
                            r: r.required_string("r")?,
                            c_p: r.required_string("c_p")?,
                            gain: r.required_number("gain")?,
                        },
                        TopologyKind::DiffCharge => TopologyRefs::DiffCharge {
                            c_fb_pair: r.required_string("c_fb_pair")?,
                            r_fb: r.required_string("r_fb")?,
                        },
                        TopologyKind::SwitchedCap => TopologyRefs::SwitchedCap {
                            c_fb: r.required_string("c_fb")?,
                            f_switch: r.required_number("f_switch")?,
                        },
                    };
                    topologies.push(TopologySpec {
                        name: tname.to_string(),
                        refs,
                    });
                } else {
                    return Err(Error::Parse {
                        line: r.line,
                        field: name,
                        message: "unknown section".into(),
                    });
                }
            }
        }
        r.finish()?;
    }

    let cfg = RunConfig {
        resonator: resonator.ok_or_else(|| Error::validation("resonator", "section required"))?,
        amp: amp.unwrap_or_default(),
        components,
        topologies,
        chain: chain
            .ok_or_else(|| Error::validation("chain.topology", "[chain] section required"))?,
        sweep: sweep.unwrap_or_default(),
        sim: sim.unwrap_or_default(),
        compare,
        output_dir,
    };
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    fn component(&self, name: &str, field: &str) -> Result<TempcoValue> {
        self.components
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.value)
            .ok_or_else(|| Error::validation(field, format!("no component named `{name}`")))
    }

    pub fn matched_group(&self, label: &str) -> Result<MatchedGroup> {
        let members: Vec<TempcoValue> = self
            .components
            .iter()
            .filter(|c| c.matched_group.as_deref() == Some(label))
            .map(|c| c.value)
            .collect();
        if members.is_empty() {
            return Err(Error::validation(
                "matched_group",
                format!("no components carry matched_group `{label}`"),
            ));
        }
        MatchedGroup::from_members(&members)
            .map_err(|e| prefixed(&format!("matched_group.{label}"), e))
    }

    /// Resolves a named topology into concrete component values.
    pub fn topology(&self, name: &str) -> Result<Topology> {
        let spec = self
            .topologies
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::validation("topology", format!("no topology named `{name}`")))?;
        let prefix = format!("topology.{name}");
        let f = |k: &str| format!("{prefix}.{k}");
        let topo = match &spec.refs {
            TopologyRefs::Current { r_fb } => Topology::CurrentAmp {
                r_fb: self.component(r_fb, &f("r_fb"))?,
            },
            TopologyRefs::Charge { c_fb, r_fb } => Topology::ChargeAmp {
                c_fb: self.component(c_fb, &f("c_fb"))?,
                r_fb: self.component(r_fb, &f("r_fb"))?,
            },
            TopologyRefs::Voltage { r, c_p, gain } => Topology::VoltageAmp {
                r: self.component(r, &f("r"))?,
                c_p: self.component(c_p, &f("c_p"))?,
                gain: *gain,
            },
            TopologyRefs::DiffCharge { c_fb_pair, r_fb } => Topology::DiffChargeAmp {
                c_fb_pair: self
                    .matched_group(c_fb_pair)
                    .map_err(|e| prefixed(&f("c_fb_pair"), e))?,
                r_fb: self.component(r_fb, &f("r_fb"))?,
            },
            TopologyRefs::SwitchedCap { c_fb, f_switch } => Topology::SwitchedCapAmp {
                c_fb: self.component(c_fb, &f("c_fb"))?,
                f_switch: *f_switch,
            },
        };
        topo.validate().map_err(|e| prefixed(&prefix, e))?;
        Ok(topo)
    }

    /// Chain built around `chain.topology`.
    pub fn chain_config(&self) -> Result<ChainConfig> {
        let topology = self
            .topology(&self.chain.topology)
            .map_err(|e| prefixed("chain", e))?;
        let cfg = ChainConfig {
            resonator: self.resonator,
            topology,
            amp: self.amp,
            demod_phase_error: self.chain.demod_phase_error,
            lowpass_bandwidth: self.chain.lowpass_bandwidth,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Rate for the thermal sweep, rad/s.
    pub fn sweep_rate(&self) -> Result<f64> {
        match self.sweep.output_amplitude {
            None => Ok(self.chain.rate),
            Some(a) => {
                let sf = scale_factor(&self.chain_config()?, T_REF_CELSIUS);
                if sf == 0.0 {
                    return Err(Error::validation(
                        "sweep.output_amplitude",
                        "chain scale factor is zero",
                    ));
                }
                Ok(a / sf)
            }
        }
    }

    pub fn operating_point(&self) -> OperatingPoint {
        OperatingPoint {
            rate: self.chain.rate,
            t_celsius: self.chain.temperature,
            t_abs: self.chain.t_abs,
            frequency: self.chain.eval_frequency,
        }
    }

    pub fn sim_options(&self) -> SimOptions {
        SimOptions {
            seed: self.sim.seed,
            fs: self.sim.fs,
            duration: self.sim.duration,
            rate: self.chain.rate,
            t_celsius: self.chain.temperature,
            t_abs: self.chain.t_abs,
            sources: SourceSet::ALL,
        }
    }

    pub fn compare_base(&self) -> CompareBase {
        CompareBase {
            t_abs: self.chain.t_abs,
            rate: self.chain.rate,
            demod_phase_error: self.chain.demod_phase_error,
            ..CompareBase::new(self.resonator, self.amp)
        }
    }

    /// The five topologies listed under `[compare]`, one of each kind.
    pub fn compare_entries(&self) -> Result<Vec<(String, Topology)>> {
        let names = self
            .compare
            .as_ref()
            .ok_or_else(|| Error::validation("compare.topologies", "[compare] section required"))?;
        let mut kinds = BTreeSet::new();
        let mut out = Vec::with_capacity(names.len());
        for name in names {
            let topo = self.topology(name).map_err(|e| prefixed("compare", e))?;
            if !kinds.insert(topo.kind()) {
                return Err(Error::validation(
                    "compare.topologies",
                    format!("kind `{}` listed twice", topo.kind()),
                ));
            }
            out.push((name.clone(), topo));
        }
        if kinds.len() != TopologyKind::ALL.len() {
            return Err(Error::validation(
                "compare.topologies",
                "must list exactly one topology of each of the five kinds",
            ));
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        self.resonator.validate()?;
        self.amp.validate()?;
        for c in &self.components {
            c.value.validate(&format!("component.{}", c.name), true)?;
        }
        let mut names = BTreeSet::new();
        for t in &self.topologies {
            if !names.insert(&t.name) {
                return Err(Error::validation(
                    format!("topology.{}", t.name),
                    "duplicate name",
                ));
            }
            self.topology(&t.name)?;
        }
        self.chain_config()?;
        if !(self.chain.noise_bandwidth > 0.0) {
            return Err(Error::validation("chain.noise_bandwidth", "must be > 0"));
        }
        if !(self.chain.t_abs >= 0.0 && self.chain.t_abs.is_finite()) {
            return Err(Error::validation("chain.t_abs", "must be >= 0"));
        }
        if let Some(f) = self.chain.eval_frequency {
            if !(f > 0.0 && f.is_finite()) {
                return Err(Error::validation("chain.eval_frequency", "must be > 0"));
            }
        }
        let s = &self.sweep;
        if !(s.t_min < s.t_max) {
            return Err(Error::validation(
                "sweep.t_min",
                "must be below sweep.t_max",
            ));
        }
        if !(s.step > 0.0 && s.step.is_finite()) {
            return Err(Error::validation("sweep.step", "must be > 0"));
        }
        if let Some(a) = s.output_amplitude {
            if !(a.is_finite() && a != 0.0) {
                return Err(Error::validation(
                    "sweep.output_amplitude",
                    "must be finite and non-zero",
                ));
            }
        }
        let m = &self.sim;
        if !(m.fs > 0.0 && m.fs.is_finite()) {
            return Err(Error::validation("sim.fs", "must be > 0"));
        }
        if !(m.duration > 0.0 && m.duration.is_finite()) {
            return Err(Error::validation("sim.duration", "must be > 0"));
        }
        if m.segment_len < 2 {
            return Err(Error::validation("sim.segment_len", "must be >= 2"));
        }
        if !(0.0..1.0).contains(&m.overlap) {
            return Err(Error::validation("sim.overlap", "must be in [0, 1)"));
        }
        if self.compare.is_some() {
            self.compare_entries()?;
        }
        Ok(())
    }

    /// Renders the configuration in the format [`parse_config`] reads.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let r = &self.resonator;
        let _ = writeln!(s, "[resonator]");
        for (k, v) in [
            ("c0", r.c0),
            ("ro", r.ro),
            ("omega_x", r.omega_x),
            ("rate_sensitivity", r.rate_sensitivity),
            ("coupling_cap", r.coupling_cap),
            ("coupling_mech", r.coupling_mech),
            ("freq_tempco", r.freq_tempco),
        ] {
            let _ = writeln!(s, "{k} = {v:e}");
        }
        let _ = writeln!(s, "\n[amp]");
        let _ = writeln!(s, "en = {:e}", self.amp.en);
        let _ = writeln!(s, "in = {:e}", self.amp.in_noise);
        let _ = writeln!(s, "open_loop_gain = {:e}", self.amp.open_loop_gain);
        for c in &self.components {
            let _ = writeln!(s, "\n[component.{}]", c.name);
            let _ = writeln!(s, "nominal = {:e}", c.value.nominal);
            let _ = writeln!(s, "tempco_ppm_per_C = {:e}", c.value.tempco);
            let _ = writeln!(s, "t_ref = {:e}", c.value.t_ref);
            if let Some(g) = &c.matched_group {
                let _ = writeln!(s, "matched_group = {g}");
            }
        }
        for t in &self.topologies {
            let _ = writeln!(s, "\n[topology.{}]", t.name);
            let _ = writeln!(s, "kind = {}", t.refs.kind());
            match &t.refs {
                TopologyRefs::Current { r_fb } => {
                    let _ = writeln!(s, "r_fb = {r_fb}");
                }
                TopologyRefs::Charge { c_fb, r_fb } => {
                    let _ = writeln!(s, "c_fb = {c_fb}\nr_fb = {r_fb}");
                }
                TopologyRefs::Voltage { r, c_p, gain } => {
                    let _ = writeln!(s, "r = {r}\nc_p = {c_p}\ngain = {gain:e}");
                }
                TopologyRefs::DiffCharge { c_fb_pair, r_fb } => {
                    let _ = writeln!(s, "c_fb_pair = {c_fb_pair}\nr_fb = {r_fb}");
                }
                TopologyRefs::SwitchedCap { c_fb, f_switch } => {
                    let _ = writeln!(s, "c_fb = {c_fb}\nf_switch = {f_switch:e}");
                }
            }
        }
        let c = &self.chain;
        let _ = writeln!(s, "\n[chain]");
        let _ = writeln!(s, "topology = {}", c.topology);
        let _ = writeln!(s, "demod_phase_error = {:e}", c.demod_phase_error);
        let _ = writeln!(s, "lowpass_bandwidth = {:e}", c.lowpass_bandwidth);
        let _ = writeln!(s, "noise_bandwidth = {:e}", c.noise_bandwidth);
        let _ = writeln!(s, "rate = {:e}", c.rate);
        let _ = writeln!(s, "temperature = {:e}", c.temperature);
        let _ = writeln!(s, "t_abs = {:e}", c.t_abs);
        if let Some(f) = c.eval_frequency {
            let _ = writeln!(s, "eval_frequency = {f:e}");
        }
        let _ = writeln!(s, "\n[sweep]");
        let _ = writeln!(s, "t_min = {:e}", self.sweep.t_min);
        let _ = writeln!(s, "t_max = {:e}", self.sweep.t_max);
        let _ = writeln!(s, "step = {:e}", self.sweep.step);
        if let Some(a) = self.sweep.output_amplitude {
            let _ = writeln!(s, "output_amplitude = {a:e}");
        }
        let m = &self.sim;
        let _ = writeln!(s, "\n[sim]");
        let _ = writeln!(s, "seed = {}", m.seed);
        let _ = writeln!(s, "fs = {:e}", m.fs);
        let _ = writeln!(s, "duration = {:e}", m.duration);
        let _ = writeln!(s, "segment_len = {}", m.segment_len);
        let _ = writeln!(s, "overlap = {:e}", m.overlap);
        if let Some(list) = &self.compare {
            let _ = writeln!(s, "\n[compare]");
            let _ = writeln!(s, "topologies = {}", list.join(", "));
        }
        if let Some(dir) = &self.output_dir {
            let _ = writeln!(s, "\n[output]");
            let _ = writeln!(s, "dir = {dir}");
        }
        s
    }
}

/// The shipped configuration for the VIG gyro.
pub const VIG_DEFAULT: &str = include_str!("../configs/vig_default.cfg");
