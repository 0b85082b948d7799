//! Noise, thermal drift and signal-chain analysis for the preamplifiers of
//! vibrating micro-gyrometers.
//!
//! The crate is organized along the signal path:
//!
//! * [`signal`]: drive voltage and detection-electrode charge phasors;
//! * [`components`]: component values with temperature coefficients, matched groups, op-amp noise;
//! * [`preamp`]: the five preamplifier topologies, their gains and input-referred noise;
//! * [`chain`]: differential stage and synchronous demodulation;
//! * [`analysis`]: noise budgets, temperature sweeps, topology comparison;
//! * [`montecarlo`]: seeded time-domain simulation used to cross-check the budgets;
//! * [`config`], [`report`] and [`cli`]: the `gyro-afe` command-line front end.
//!
//! ```
//! use gyro_afe::{chain::{rate_output, ChainConfig}, components::{OpAmpModel, TempcoValue},
//!                preamp::Topology, signal::ResonatorParams};
//!
//! let cfg = ChainConfig::new(
//!     ResonatorParams::default(),
//!     Topology::ChargeAmp {
//!         c_fb: TempcoValue::new(10e-12, 30.0),
//!         r_fb: TempcoValue::new(10e6, 30.0),
//!     },
//!     OpAmpModel::default(),
//! );
//! // 1e-16 C per rad/s through a 10 pF feedback capacitor
//! let out = rate_output(&cfg, 1.0, 25.0);
//! assert!((out.dc_value - 1e-5).abs() < 1e-17);
//! ```

// `!(x > 0.0)` style checks also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod chain;
pub mod cli;
pub mod components;
pub mod config;
mod error;
pub mod montecarlo;
pub mod preamp;
pub mod report;
pub mod signal;

pub use error::{Error, Result};

// The guide under book/ is compiled as doctests so its snippets stay in
// step with the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/signal-model.md")]
    mod signal_model {}
    #[doc = include_str!("../../../book/src/components.md")]
    mod components {}
    #[doc = include_str!("../../../book/src/preamplifiers.md")]
    mod preamplifiers {}
    #[doc = include_str!("../../../book/src/detection-chain.md")]
    mod detection_chain {}
    #[doc = include_str!("../../../book/src/budgets-and-drift.md")]
    mod budgets_and_drift {}
    #[doc = include_str!("../../../book/src/monte-carlo.md")]
    mod monte_carlo {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
