//! Averaged-periodogram spectral density estimate.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Single-sided amplitude spectral density.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdEstimate {
    /// Bin centres, Hz; uniform from 0 to fs/2.
    pub frequencies: Vec<f64>,
    /// V/√Hz (or the trace's unit per √Hz).
    pub densities: Vec<f64>,
    pub segment_count: usize,
}

impl PsdEstimate {
    pub fn bin_width(&self) -> f64 {
        self.frequencies.get(1).copied().unwrap_or(0.0)
    }

    /// ∫ density² df over all bins: the variance the estimate accounts for.
    pub fn integrated_power(&self) -> f64 {
        let df = self.bin_width();
        self.densities.iter().map(|d| d * d * df).sum()
    }
}

fn hann(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / n as f64).cos())
        .collect()
}

/// Number of segments of `segment_len` samples, hopping by
/// `segment_len·(1 − overlap)`, that fit in `len` samples.
pub fn segment_count(len: usize, segment_len: usize, overlap: f64) -> usize {
    if segment_len == 0 || segment_len > len {
        return 0;
    }
    let hop = hop_len(segment_len, overlap);
    (len - segment_len) / hop + 1
}

fn hop_len(segment_len: usize, overlap: f64) -> usize {
    ((segment_len as f64 * (1.0 - overlap)).round() as usize).max(1)
}

/// Hann-windowed averaged periodogram of `samples` taken at `fs`.
///
/// Normalized so a white sequence of single-sided density `d` gives a flat
/// estimate near `d`. DC and Nyquist bins are not doubled.
pub fn welch(samples: &[f64], fs: f64, segment_len: usize, overlap: f64) -> Result<PsdEstimate> {
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::Segment(format!("overlap {overlap} outside [0, 1)")));
    }
    if segment_len < 2 {
        return Err(Error::Segment(format!("segment length {segment_len} < 2")));
    }
    if segment_len > samples.len() {
        return Err(Error::Segment(format!(
            "segment length {segment_len} exceeds trace length {}",
            samples.len()
        )));
    }
    let window = hann(segment_len);
    let window_power: f64 = window.iter().map(|w| w * w).sum();
    let hop = hop_len(segment_len, overlap);
    let segments = segment_count(samples.len(), segment_len, overlap);
    let fft = FftPlanner::<f64>::new().plan_fft_forward(segment_len);
    let bins = segment_len / 2 + 1;
    let mut acc = vec![0.0; bins];
    let mut buf = vec![Complex::new(0.0, 0.0); segment_len];
    for s in 0..segments {
        let seg = &samples[s * hop..s * hop + segment_len];
        for ((b, &x), &w) in buf.iter_mut().zip(seg).zip(&window) {
            *b = Complex::new(x * w, 0.0);
        }
        fft.process(&mut buf);
        for (a, b) in acc.iter_mut().zip(&buf) {
            *a += b.norm_sqr();
        }
    }
    let scale = 1.0 / (fs * window_power * segments as f64);
    let densities = acc
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let one_sided = if k == 0 || (segment_len.is_multiple_of(2) && k == bins - 1) {
                1.0
            } else {
                2.0
            };
            (p * scale * one_sided).sqrt()
        })
        .collect();
    let frequencies = (0..bins)
        .map(|k| k as f64 * fs / segment_len as f64)
        .collect();
    Ok(PsdEstimate {
        frequencies,
        densities,
        segment_count: segments,
    })
}
