//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.
//!
//! Run alone with `cargo test -p gyro-afe --test acceptance`.

// `!(x > 0.0)` style checks also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gyro_afe::analysis::{compare_topologies, gain_ratio_drift_ppm, thermal_sweep};
use gyro_afe::chain::{rate_output, ChainConfig};
use gyro_afe::components::{OpAmpModel, TempcoValue};
use gyro_afe::config::{parse_config, RunConfig, VIG_DEFAULT};
use gyro_afe::montecarlo::{verify_against_analytic, SimOptions, MIN_VERIFY_SEGMENTS};
use gyro_afe::preamp::{
    equal_output_cfb, input_noise_psd, output_noise_psd, Topology, TopologyKind,
};
use gyro_afe::signal::ResonatorParams;

type Outcome = Result<String, String>;

/// Name, check, runtime limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn default_config() -> RunConfig {
    parse_config(VIG_DEFAULT).expect("shipped config parses")
}

fn equal_noise_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let res = ResonatorParams {
            c0: rng.random_range(0.1e-12..10e-12),
            ro: rng.random_range(1e4..1e8),
            omega_x: rng.random_range(1e4..1e6),
            ..ResonatorParams::default()
        };
        let amp = OpAmpModel {
            en: rng.random_range(1e-10..1e-7),
            in_noise: rng.random_range(1e-16..1e-12),
            ..OpAmpModel::default()
        };
        let r_fb = rng.random_range(1e5..1e9);
        let t_abs = rng.random_range(1.0..400.0);
        let f = res.carrier_hz();
        let current = Topology::CurrentAmp {
            r_fb: TempcoValue::new(r_fb, 30.0),
        };
        let charge = Topology::ChargeAmp {
            c_fb: TempcoValue::new(equal_output_cfb(r_fb, res.omega_x), 30.0),
            r_fb: TempcoValue::new(r_fb, 30.0),
        };
        let a = input_noise_psd(&current, &res, &amp, f, t_abs).total_rss;
        let b = input_noise_psd(&charge, &res, &amp, f, t_abs).total_rss;
        worst = worst.max((a - b).abs() / a);
    }
    let line = format!("max relative difference {worst:.2e} over 100 draws (limit 1e-12)");
    if worst < 1e-12 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn calibrated_output_noise() -> Outcome {
    let cfg = default_config();
    let res = &cfg.resonator;
    if (res.c0, res.ro, res.omega_x) != (1e-12, 1.5e6, 2e5) {
        return Err(format!("default resonator is {res:?}"));
    }
    if cfg.amp.en != 5e-9 {
        return Err(format!("default e_n is {:e}", cfg.amp.en));
    }
    let chain = cfg.chain_config().map_err(|e| e.to_string())?;
    let Topology::ChargeAmp { c_fb, r_fb } = chain.topology else {
        return Err(format!(
            "default chain topology is {}",
            chain.topology.kind()
        ));
    };
    if r_fb.nominal != 10e6 {
        return Err(format!("R_FB is {:e}", r_fb.nominal));
    }
    if !(10e-12..=50e-12).contains(&c_fb.nominal) {
        return Err(format!("C_FB {:e} outside [10, 50] pF", c_fb.nominal));
    }
    let density = output_noise_psd(
        &chain.topology,
        res,
        &chain.amp,
        30e3,
        cfg.chain.t_abs,
        25.0,
    )
    .total_rss;
    let rel = density / 25e-9 - 1.0;
    let line = format!(
        "C_FB = {:.1} pF gives {:.3} nV/rtHz at 30 kHz ({:+.1}% of 25, limit 20%)",
        c_fb.nominal * 1e12,
        density * 1e9,
        rel * 100.0
    );
    if rel.abs() <= 0.2 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn oracle_equivalence() -> Outcome {
    let cfg = default_config();
    let entries = cfg.compare_entries().map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut detail = Vec::new();
    let mut failures = Vec::new();
    for (name, topo) in entries {
        let chain = ChainConfig::new(cfg.resonator, topo, cfg.amp);
        let v = verify_against_analytic(&chain, &SimOptions::default())
            .map_err(|e| format!("{name}: {e}"))?;
        let err = v.max_relative_error();
        worst = worst.max(err);
        detail.push(format!("{name} {:.1}%", 100.0 * err));
        if v.segment_count < MIN_VERIFY_SEGMENTS {
            failures.push(format!("{name}: {} segments", v.segment_count));
        }
        for c in v.sources.iter().chain([&v.total]) {
            if !(c.relative_error < 0.1) {
                failures.push(format!(
                    "{name}/{}: analytic {:e} simulated {:e}",
                    c.source, c.analytic, c.simulated
                ));
            }
        }
    }
    let line = format!(
        "worst relative error {:.1}% (limit 10%): {}",
        100.0 * worst,
        detail.join(", ")
    );
    if failures.is_empty() {
        Ok(line)
    } else {
        Err(format!("{line}; {}", failures.join("; ")))
    }
}

fn coupling_rejection() -> Outcome {
    let cfg = default_config();
    let res = ResonatorParams {
        coupling_cap: 10.0 * cfg.resonator.rate_sensitivity,
        coupling_mech: 5.0 * cfg.resonator.rate_sensitivity,
        ..cfg.resonator
    };
    let mut topologies = vec![cfg.chain_config().map_err(|e| e.to_string())?.topology];
    topologies.extend(
        cfg.compare_entries()
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(_, t)| t),
    );
    let mut worst: f64 = 0.0;
    for topo in topologies {
        let chain = ChainConfig::new(res, topo, cfg.amp);
        for t in [-40.0, 25.0, 80.0] {
            let dc = rate_output(&chain, 0.0, t).dc_value;
            let bound = chain.gain_at(t).abs() * res.coupling_cap.min(res.coupling_mech);
            worst = worst.max(dc.abs() / bound);
        }
    }
    let line = format!("max |dc| / (gain x coupling) = {worst:.2e} (limit 1e-12)");
    if worst < 1e-12 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn thermal_drift() -> Outcome {
    let cfg = default_config();
    let chain = cfg.chain_config().map_err(|e| e.to_string())?;
    let rate = cfg.sweep_rate().map_err(|e| e.to_string())?;
    let series = thermal_sweep(&chain, -40.0, 80.0, 10.0, rate).map_err(|e| e.to_string())?;
    let ppm = series.total_drift_ppm.abs();
    let volts = series.total_drift_volts.abs();
    let amplitude = rate_output(&chain, rate, 25.0).dc_value;

    let entries = cfg.compare_entries().map_err(|e| e.to_string())?;
    let diff = entries
        .iter()
        .find(|(_, t)| t.kind() == TopologyKind::DiffCharge)
        .map(|(_, t)| t.clone())
        .ok_or("no diff_charge topology")?;
    let ratio_ppm = gain_ratio_drift_ppm(&diff, &cfg.resonator, -40.0, 80.0, 10.0)
        .map_err(|e| e.to_string())?;

    let line = format!(
        "gain drift {ppm:.0} ppm (3600 +/- 1%), {:.4} mV at {amplitude:.3} V (1 mV +/- 5%), matched ratio drift {ratio_ppm:.2e} ppm (< 1)",
        volts * 1e3
    );
    let ok = (ppm / 3600.0 - 1.0).abs() <= 0.01
        && (volts / 1e-3 - 1.0).abs() <= 0.05
        && (amplitude / 0.278 - 1.0).abs() < 1e-9
        && ratio_ppm < 1.0;
    if ok {
        Ok(line)
    } else {
        Err(line)
    }
}

fn table_ordering() -> Outcome {
    let cfg = default_config();
    let entries = cfg.compare_entries().map_err(|e| e.to_string())?;
    let rows = compare_topologies(&cfg.compare_base(), &entries).map_err(|e| e.to_string())?;
    let row = |k: TopologyKind| {
        rows.iter()
            .find(|r| r.kind == k)
            .expect("all kinds present")
    };
    let sc = row(TopologyKind::SwitchedCap);
    let sc_worst_noise = rows
        .iter()
        .filter(|r| r.kind != TopologyKind::SwitchedCap)
        .all(|r| r.noise_density < sc.noise_density);
    let good = [
        TopologyKind::DiffCharge,
        TopologyKind::Charge,
        TopologyKind::SwitchedCap,
    ]
    .map(|k| row(k).drift_ppm);
    let bad = [TopologyKind::Current, TopologyKind::Voltage].map(|k| row(k).drift_ppm);
    let drift_split = good.iter().fold(0.0f64, |a, &b| a.max(b))
        < bad.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let current_flag = !row(TopologyKind::Current).integrable;
    let order: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{} {:.3e} V/rtHz {:.0} ppm",
                r.name, r.noise_density, r.drift_ppm
            )
        })
        .collect();
    let line = format!(
        "SC worst noise: {sc_worst_noise}, drift split: {drift_split}, current not integrable: {current_flag} [{}]",
        order.join("; ")
    );
    if sc_worst_noise && drift_split && current_flag {
        Ok(line)
    } else {
        Err(line)
    }
}

fn run_all_commands(config: &Path, out: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    for cmd in ["analyze", "sweep", "compare", "simulate"] {
        let code = gyro_afe::cli::run([
            "gyro-afe",
            cmd,
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--seed",
            "7",
        ]);
        if code != 0 {
            return Err(format!("`{cmd}` exited with {code}"));
        }
    }
    let mut files = Vec::new();
    for name in [
        "budget.csv",
        "sweep.csv",
        "compare.csv",
        "trace.csv",
        "psd.csv",
    ] {
        let bytes = fs::read(out.join(name)).map_err(|e| format!("{name}: {e}"))?;
        if bytes.is_empty() {
            return Err(format!("{name} is empty"));
        }
        files.push((name.to_string(), bytes));
    }
    Ok(files)
}

fn determinism() -> Outcome {
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = work.path().join("vig_default.cfg");
    fs::write(&config, VIG_DEFAULT).map_err(|e| e.to_string())?;
    let a = run_all_commands(&config, &work.path().join("a"))?;
    let b = run_all_commands(&config, &work.path().join("b"))?;
    let differing: Vec<&str> = a
        .iter()
        .zip(&b)
        .filter(|(x, y)| x.1 != y.1)
        .map(|(x, _)| x.0.as_str())
        .collect();
    let bytes: usize = a.iter().map(|(_, v)| v.len()).sum();
    if differing.is_empty() {
        Ok(format!(
            "5 CSV files, {bytes} bytes, identical across two runs"
        ))
    } else {
        Err(format!("differing files: {}", differing.join(", ")))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "equal-noise theorem",
            equal_noise_theorem,
            Some(Duration::from_secs(1)),
        ),
        (
            "calibrated output noise",
            calibrated_output_noise,
            Some(Duration::from_secs(1)),
        ),
        (
            "oracle equivalence",
            oracle_equivalence,
            Some(Duration::from_secs(60)),
        ),
        (
            "coupling rejection",
            coupling_rejection,
            Some(Duration::from_secs(1)),
        ),
        (
            "thermal drift arithmetic",
            thermal_drift,
            Some(Duration::from_secs(1)),
        ),
        (
            "topology ordering",
            table_ordering,
            Some(Duration::from_secs(1)),
        ),
        ("determinism", determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = limit.is_some_and(|l| elapsed > l);
        let (status, text) = match (&outcome, over) {
            (Ok(t), false) => ("PASS", t.clone()),
            (Ok(t), true) => ("FAIL", format!("{t}; runtime over {:?}", limit.unwrap())),
            (Err(t), _) => ("FAIL", t.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] {}. {name}: {text} ({:.2} s)",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
