//! Uniformly sampled signals and Simpson quadrature over sample windows.
//!
//! Grids exist for two reasons: per-sample noise (which has no modal
//! representation) and interoperability — measurements arrive and leave as
//! CSV. Window endpoints must sit on sample nodes; estimator window plans
//! are laid out so that they do.

use crate::error::{Error, Result};
use crate::quad::{simpson, simpson_real};
use crate::C64;
use rayon::prelude::*;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct GridSignal {
    t_start: f64,
    dt: f64,
    samples: Vec<C64>,
}

impl GridSignal {
    pub fn from_samples(t_start: f64, dt: f64, samples: Vec<C64>) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() || !t_start.is_finite() {
            return Err(Error::InvalidInput(format!("bad grid layout: dt = {dt}")));
        }
        if samples.len() < 2 {
            return Err(Error::InvalidInput(
                "grid needs at least two samples".into(),
            ));
        }
        Ok(GridSignal {
            t_start,
            dt,
            samples,
        })
    }

    /// Samples `f` on the inclusive grid covering `[t_start, t_end]`.
    pub fn from_fn(
        t_start: f64,
        t_end: f64,
        dt: f64,
        f: impl Fn(f64) -> C64 + Sync,
    ) -> Result<Self> {
        if !(t_end > t_start) {
            return Err(Error::InvalidInput(format!(
                "empty grid [{t_start}, {t_end}]"
            )));
        }
        if !(dt > 0.0) {
            return Err(Error::InvalidInput(format!("bad grid step dt = {dt}")));
        }
        let count = ((t_end - t_start) / dt).round() as usize + 1;
        let samples: Vec<C64> = (0..count)
            .into_par_iter()
            .map(|k| f(t_start + k as f64 * dt))
            .collect();
        GridSignal::from_samples(t_start, dt, samples)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.dt
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.t_start, self.time(self.samples.len() - 1))
    }

    /// Maps a required window endpoint onto its grid node.
    fn index_of(&self, t: f64) -> Result<usize> {
        let pos = (t - self.t_start) / self.dt;
        let k = pos.round();
        let (lo, hi) = self.domain();
        if k < 0.0 || k as usize >= self.samples.len() {
            return Err(Error::Domain(format!(
                "time {t} outside the sampled domain [{lo}, {hi}]"
            )));
        }
        let k = k as usize;
        if (self.time(k) - t).abs() > 1e-9 * t.abs().max(1.0) {
            return Err(Error::Domain(format!(
                "time {t} does not sit on the sample grid (nearest node {})",
                self.time(k)
            )));
        }
        Ok(k)
    }

    fn window_slice(&self, a: f64, b: f64) -> Result<&[C64]> {
        if a >= b {
            return Err(Error::InvalidInput(format!("empty window [{a}, {b}]")));
        }
        let ia = self.index_of(a)?;
        let ib = self.index_of(b)?;
        Ok(&self.samples[ia..=ib])
    }

    /// `‖y‖_{L²(a,b)}` by composite Simpson on `|y|²`.
    pub fn window_l2_norm(&self, a: f64, b: f64) -> Result<f64> {
        let slice = self.window_slice(a, b)?;
        let sq: Vec<f64> = slice.iter().map(|v| v.norm_sqr()).collect();
        Ok(simpson_real(&sq, self.dt).max(0.0).sqrt())
    }

    /// `∫ₐᵇ y(t)e^{−λt} dt` by composite Simpson on the complex integrand.
    pub fn weighted_exponential_integral(&self, lambda: C64, a: f64, b: f64) -> Result<C64> {
        let ia = self.index_of(a)?;
        let ib = self.index_of(b)?;
        if a >= b {
            return Err(Error::InvalidInput(format!("empty window [{a}, {b}]")));
        }
        let integrand: Vec<C64> = (ia..=ib)
            .into_par_iter()
            .map(|k| {
                let t = self.time(k);
                self.samples[k] * (-lambda * t).exp()
            })
            .collect();
        Ok(simpson(&integrand, self.dt))
    }

    /// CSV with header `t,re,im`, 17 significant digits (lossless for f64).
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.samples.len() * 64 + 16);
        out.push_str("t,re,im\n");
        for (k, v) in self.samples.iter().enumerate() {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e}\n",
                self.time(k),
                v.re,
                v.im
            ));
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == "t,re,im" => {}
            other => {
                return Err(Error::InvalidInput(format!(
                    "expected CSV header 't,re,im', found {other:?}"
                )))
            }
        }
        let mut times = Vec::new();
        let mut samples = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut cols = line.split(',');
            let mut next = |name: &str| -> Result<f64> {
                cols.next()
                    .ok_or_else(|| {
                        Error::InvalidInput(format!("row {}: missing column {name}", i + 2))
                    })?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidInput(format!("row {}: {e}", i + 2)))
            };
            times.push(next("t")?);
            samples.push(C64::new(next("re")?, next("im")?));
        }
        if times.len() < 2 {
            return Err(Error::InvalidInput("CSV needs at least two samples".into()));
        }
        let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
        GridSignal::from_samples(times[0], dt, samples)
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}
