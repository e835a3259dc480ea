//! Exact finite mode sums `y(t) = Σₙ aₙκₙe^{λₙt}`.
//!
//! Window norms need the double sum `Σₘₙ cₘc̄ₙ∫e^{(λₘ+λ̄ₙ)t}dt`. When the
//! harmonic sequence `Kₙ` is an arithmetic progression (wave, strings) the
//! sum collapses over the difference `m − n`, so one `O(N²)` autocorrelation
//! of the weights — computed once and cached — turns every subsequent window
//! into an `O(N)` pass. Systems with non-arithmetic harmonics (quadratic for
//! the quantum family) keep the explicit pair sum over the leading
//! `pair_cap` modes, halved by conjugate symmetry.

use super::grid::GridSignal;
use super::{
    check_exponent, exponential_harmonic_integral, exponential_integral_general, unit_phase,
    DEFAULT_PAIR_CAP,
};
use crate::error::{Error, Result};
use crate::spectral::{ModalState, SpectralSystem};
use crate::C64;
use rayon::prelude::*;
use std::sync::{Arc, OnceLock};

#[derive(Clone)]
pub struct ModalSignal {
    system: Arc<dyn SpectralSystem>,
    state: ModalState,
    /// Mode weights `cₙ = aₙκₙ` in window order.
    weights: Vec<C64>,
    /// Integer harmonics `Kₙ` in window order.
    harmonics: Vec<i64>,
    /// Common difference of `Kₙ` when the progression is arithmetic.
    step: Option<i64>,
    pair_cap: usize,
    /// Cached autocorrelation `S_j = Σₚ cₚc̄ₚ₋ⱼ`, `j ≥ 0`.
    autocorr: OnceLock<Vec<C64>>,
}

impl ModalSignal {
    pub fn new(system: Arc<dyn SpectralSystem>, state: ModalState) -> Self {
        let weights: Vec<C64> = state.iter().map(|(n, a)| a * system.kappa(n)).collect();
        let harmonics: Vec<i64> = state.window.iter().map(|n| system.harmonic(n)).collect();
        let step = match harmonics.len() {
            0 | 1 => Some(1),
            _ => {
                let d = harmonics[1] - harmonics[0];
                harmonics.windows(2).all(|w| w[1] - w[0] == d).then_some(d)
            }
        };
        ModalSignal {
            system,
            state,
            weights,
            harmonics,
            step,
            pair_cap: DEFAULT_PAIR_CAP,
            autocorr: OnceLock::new(),
        }
    }

    /// Caps the explicit pair sum used for non-arithmetic harmonics.
    pub fn with_pair_cap(mut self, cap: usize) -> Self {
        assert!(cap >= 1);
        self.pair_cap = cap;
        self
    }

    pub fn system(&self) -> &Arc<dyn SpectralSystem> {
        &self.system
    }

    pub fn state(&self) -> &ModalState {
        &self.state
    }

    /// `(λₙ, cₙ)` pairs in window order, for cross terms against other signals.
    pub(crate) fn mode_pairs(&self) -> Vec<(C64, C64)> {
        self.state
            .window
            .iter()
            .zip(&self.weights)
            .map(|(n, &c)| (self.system.eigenvalue(n), c))
            .collect()
    }

    fn growth(&self) -> f64 {
        self.system.growth()
    }

    fn period(&self) -> f64 {
        self.system.period()
    }

    pub(crate) fn value_unchecked(&self, t: f64) -> C64 {
        let period = self.period();
        let mut acc = C64::new(0.0, 0.0);
        for (c, &k) in self.weights.iter().zip(&self.harmonics) {
            acc += c * unit_phase(k, t, period);
        }
        acc * (self.growth() * t).exp()
    }

    /// `y(t)`; errors if `e^{f t}` overflows.
    pub fn value(&self, t: f64) -> Result<C64> {
        check_exponent(self.growth(), t, t)?;
        Ok(self.value_unchecked(t))
    }

    /// Realizes the signal on a uniform grid (inclusive endpoints).
    pub fn sample(&self, t_start: f64, t_end: f64, dt: f64) -> Result<GridSignal> {
        check_exponent(self.growth(), t_start, t_end)?;
        GridSignal::from_fn(t_start, t_end, dt, |t| self.value_unchecked(t))
    }

    fn autocorrelation(&self) -> &[C64] {
        self.autocorr.get_or_init(|| {
            let c = &self.weights;
            let n = c.len();
            (0..n)
                .into_par_iter()
                .map(|j| {
                    let mut s = C64::new(0.0, 0.0);
                    for p in j..n {
                        s += c[p] * c[p - j].conj();
                    }
                    s
                })
                .collect()
        })
    }

    /// `‖y‖²_{L²(a,b)}` by closed-form integrals.
    pub fn window_l2_norm_sq(&self, a: f64, b: f64) -> Result<f64> {
        if a >= b {
            return Err(Error::InvalidInput(format!("empty window [{a}, {b}]")));
        }
        let two_f = 2.0 * self.growth();
        check_exponent(two_f, a, b)?;
        let period = self.period();
        let total = match self.step {
            Some(step) => {
                let s = self.autocorrelation();
                let diag = s[0].re * exponential_harmonic_integral(two_f, 0, period, a, b).re;
                let off: Vec<f64> = (1..s.len())
                    .into_par_iter()
                    .map(|j| {
                        let i = exponential_harmonic_integral(two_f, step * j as i64, period, a, b);
                        2.0 * (s[j] * i).re
                    })
                    .collect();
                diag + off.iter().sum::<f64>()
            }
            None => {
                let m = self.weights.len().min(self.pair_cap);
                let c = &self.weights[..m];
                let k = &self.harmonics[..m];
                let rows: Vec<f64> = (0..m)
                    .into_par_iter()
                    .map(|p| {
                        let mut row = c[p].norm_sqr()
                            * exponential_harmonic_integral(two_f, 0, period, a, b).re;
                        for q in 0..p {
                            let i = exponential_harmonic_integral(two_f, k[p] - k[q], period, a, b);
                            row += 2.0 * (c[p] * c[q].conj() * i).re;
                        }
                        row
                    })
                    .collect();
                rows.iter().sum()
            }
        };
        Ok(total.max(0.0))
    }

    pub fn window_l2_norm(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.window_l2_norm_sq(a, b)?.sqrt())
    }

    /// `∫ₐᵇ y(t)e^{−λt} dt`, exact per mode.
    ///
    /// When `Im λ` sits on the signal's harmonic grid (the case in every
    /// estimator path) the phase-reduced primitive keeps full precision at
    /// arbitrarily high mode frequencies; otherwise a general closed form is
    /// used, accurate while `|Im λₙ − Im λ|·max(|a|,|b|)` stays well below
    /// 1/ε_machine.
    pub fn weighted_exponential_integral(&self, lambda: C64, a: f64, b: f64) -> Result<C64> {
        if a >= b {
            return Err(Error::InvalidInput(format!("empty window [{a}, {b}]")));
        }
        let c = self.growth() - lambda.re;
        check_exponent(c, a, b)?;
        let period = self.period();
        let k_target = lambda.im * period / std::f64::consts::TAU;
        let k_round = k_target.round();
        let on_grid =
            (k_target - k_round).abs() <= 1e-9 * k_target.abs().max(1.0) && k_round.abs() < 9e15;
        let terms: Vec<C64> = if on_grid {
            let k0 = k_round as i64;
            self.weights
                .par_iter()
                .zip(self.harmonics.par_iter())
                .map(|(cn, &kn)| cn * exponential_harmonic_integral(c, kn - k0, period, a, b))
                .collect()
        } else {
            self.weights
                .par_iter()
                .zip(self.harmonics.par_iter())
                .map(|(cn, &kn)| {
                    let mu = kn as f64 * std::f64::consts::TAU / period;
                    let z = C64::new(c, mu - lambda.im);
                    cn * exponential_integral_general(z, a, b)
                })
                .collect()
        };
        Ok(terms.iter().sum())
    }
}
