//! Passive components with linear temperature coefficients, matched groups,
//! and the white-noise op-amp model.

use crate::error::{Error, Result};

/// Reference temperature for nominal component values, °C.
pub const T_REF_CELSIUS: f64 = 25.0;

/// Temperature coefficient of off-the-shelf SMD resistors and capacitors, ppm/°C.
pub const SMD_TEMPCO_PPM: f64 = 30.0;

/// A component value with a linear temperature coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TempcoValue {
    /// Value at `t_ref`, SI units.
    pub nominal: f64,
    /// ppm/°C.
    pub tempco: f64,
    /// °C.
    pub t_ref: f64,
}

impl TempcoValue {
    pub fn new(nominal: f64, tempco: f64) -> Self {
        Self {
            nominal,
            tempco,
            t_ref: T_REF_CELSIUS,
        }
    }

    /// A temperature-independent value.
    pub fn fixed(nominal: f64) -> Self {
        Self::new(nominal, 0.0)
    }

    pub fn value_at(&self, t_celsius: f64) -> f64 {
        self.nominal * (1.0 + self.tempco * 1e-6 * (t_celsius - self.t_ref))
    }

    /// Same part with the sign of its tempco reversed.
    pub fn mirrored(&self) -> Self {
        Self {
            tempco: -self.tempco,
            ..*self
        }
    }

    pub(crate) fn validate(&self, field: &str, allow_zero: bool) -> Result<()> {
        let ok = if allow_zero {
            self.nominal >= 0.0
        } else {
            self.nominal > 0.0
        };
        if !ok || !self.nominal.is_finite() {
            let bound = if allow_zero { ">= 0" } else { "> 0" };
            return Err(Error::validation(
                format!("{field}.nominal"),
                format!("must be {bound}, got {}", self.nominal),
            ));
        }
        if !self.tempco.is_finite() || !self.t_ref.is_finite() {
            return Err(Error::validation(field, "tempco and t_ref must be finite"));
        }
        Ok(())
    }
}

/// Free function form of [`TempcoValue::value_at`].
pub fn value_at(v: &TempcoValue, t_celsius: f64) -> f64 {
    v.value_at(t_celsius)
}

/// Op-amp with white voltage and current noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpAmpModel {
    /// Input voltage noise density, V/√Hz.
    pub en: f64,
    /// Input current noise density, A/√Hz.
    pub in_noise: f64,
    pub open_loop_gain: f64,
}

impl Default for OpAmpModel {
    fn default() -> Self {
        Self {
            en: 5e-9,
            in_noise: 1e-14,
            open_loop_gain: 1e5,
        }
    }
}

impl OpAmpModel {
    pub fn noiseless() -> Self {
        Self {
            en: 0.0,
            in_noise: 0.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.en >= 0.0 && self.en.is_finite()) {
            return Err(Error::validation("amp.en", "must be >= 0"));
        }
        if !(self.in_noise >= 0.0 && self.in_noise.is_finite()) {
            return Err(Error::validation("amp.in", "must be >= 0"));
        }
        if !(self.open_loop_gain > 1.0 && self.open_loop_gain.is_finite()) {
            return Err(Error::validation("amp.open_loop_gain", "must be > 1"));
        }
        Ok(())
    }
}

/// Components that share one thermal realization, so their ratios do not
/// move with temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchedGroup {
    pub tempco: f64,
    pub t_ref: f64,
    pub nominals: Vec<f64>,
}

impl MatchedGroup {
    pub fn new(nominals: Vec<f64>, tempco: f64) -> Self {
        Self {
            tempco,
            t_ref: T_REF_CELSIUS,
            nominals,
        }
    }

    /// Builds a group from individually specified parts; all of them must
    /// carry the same tempco and reference temperature.
    pub fn from_members(members: &[TempcoValue]) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::validation("matched_group", "group has no members"))?;
        for m in &members[1..] {
            if m.tempco != first.tempco || m.t_ref != first.t_ref {
                return Err(Error::validation(
                    "matched_group",
                    "members must share tempco_ppm_per_C and t_ref",
                ));
            }
        }
        Ok(Self {
            tempco: first.tempco,
            t_ref: first.t_ref,
            nominals: members.iter().map(|m| m.nominal).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.nominals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nominals.is_empty()
    }

    pub fn member(&self, i: usize) -> Result<TempcoValue> {
        let nominal = *self.nominals.get(i).ok_or(Error::Index {
            index: i,
            len: self.len(),
        })?;
        Ok(TempcoValue {
            nominal,
            tempco: self.tempco,
            t_ref: self.t_ref,
        })
    }

    pub fn value_at(&self, i: usize, t_celsius: f64) -> Result<f64> {
        Ok(self.member(i)?.value_at(t_celsius))
    }
}

/// Ratio of members `i` and `j` of a matched group at `t_celsius`.
pub fn matched_ratio_at(g: &MatchedGroup, i: usize, j: usize, t_celsius: f64) -> Result<f64> {
    Ok(g.value_at(i, t_celsius)? / g.value_at(j, t_celsius)?)
}
