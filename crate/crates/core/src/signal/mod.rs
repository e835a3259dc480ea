//! Boundary-output signals and the two integration engines behind the
//! estimators.
//!
//! * The **exact modal engine** works on finite mode sums with closed-form
//!   exponential integrals. Every mode frequency is `μₙ = 2πKₙ/L` for an
//!   integer harmonic `Kₙ`, so phases are reduced modulo the period before
//!   evaluation and window integrals are exact at any truncation order —
//!   including `μ_N ≈ 2.5e8` rad/time, far beyond what sampling could
//!   resolve.
//! * The **grid engine** works on uniform samples with composite Simpson.
//!   It is required once per-sample noise enters, and is resolution-limited.
//!
//! Deterministic disturbances ride on top of the modal engine: their
//! integrals against mode exponentials use an oscillation-aware quadrature
//! (see [`disturb`]) so high-frequency modes do not alias.

mod disturb;
mod grid;
mod modal;

pub use disturb::{DisturbTerm, DisturbanceSpec, DisturbedSignal};
pub use grid::GridSignal;
pub use modal::ModalSignal;

use crate::error::{Error, Result};
use crate::C64;

/// Modes kept in the quadratic-cost window-norm double sum when the
/// frequency sequence is not arithmetic (configurable per signal).
pub const DEFAULT_PAIR_CAP: usize = 2000;

/// Samples per window used when a signal is realized on a grid and when
/// deterministic disturbances are integrated.
pub const GRID_POINTS_PER_WINDOW: usize = 2048;

/// Largest exponent passed to `exp`; beyond this the engine reports
/// overflow instead of returning `inf`.
pub(crate) const MAX_EXPONENT: f64 = 700.0;

pub(crate) fn check_exponent(c: f64, a: f64, b: f64) -> Result<()> {
    let worst = (c * a).max(c * b);
    if worst > MAX_EXPONENT {
        return Err(Error::Overflow { exponent: worst });
    }
    Ok(())
}

/// `e^{i·2πk·t/L}` with the phase reduced modulo one period *before* any
/// multiplication by `k`, so the result is exact at period boundaries
/// (`frac(1) = 0`) and accurate to ≲1e-7 rad even for `|k| ~ 1e8`.
pub(crate) fn unit_phase(k: i64, t: f64, period: f64) -> C64 {
    let cycles = t / period;
    let frac = cycles - cycles.floor();
    let kf = k as f64 * frac;
    let phase = std::f64::consts::TAU * (kf - kf.floor());
    C64::new(phase.cos(), phase.sin())
}

/// Exact `∫ₐᵇ e^{(c + i·2πk/L)t} dt`.
///
/// This is the exact engine's core primitive. The closed-form antiderivative
/// is used when `|z|·(b−a)` is not tiny; otherwise a short Taylor series
/// avoids the `0/0` limit. Orthogonality over one full period is exact:
/// `c = 0`, `k ≠ 0`, `(a,b) = (0,L)` yields exactly zero.
pub fn exponential_harmonic_integral(c: f64, k: i64, period: f64, a: f64, b: f64) -> C64 {
    debug_assert!(period > 0.0);
    let omega = k as f64 * std::f64::consts::TAU / period;
    let z = C64::new(c, omega);
    let span = b - a;
    if z.norm() * span.abs() < 1e-6 {
        // ∫ = e^{za}·span·(1 + zs/2 + zs²/6 + zs³/24), zs = z·span;
        // truncation ~|zs|⁴/120 ≤ 1e-26 relative.
        let e_a = (c * a).exp() * unit_phase(k, a, period);
        let zs = z * span;
        let series =
            C64::new(1.0, 0.0) + zs * 0.5 + zs * zs * (1.0 / 6.0) + zs * zs * zs * (1.0 / 24.0);
        return e_a * series * span;
    }
    let at = |t: f64| (c * t).exp() * unit_phase(k, t, period);
    (at(b) - at(a)) / z
}

/// `∫ₐᵇ e^{zt} dt` for arbitrary complex `z`, without phase reduction; used
/// only when a weight frequency does not sit on a signal's harmonic grid.
pub(crate) fn exponential_integral_general(z: C64, a: f64, b: f64) -> C64 {
    let span = b - a;
    if z.norm() * span.abs() < 1e-6 {
        let zs = z * span;
        let series =
            C64::new(1.0, 0.0) + zs * 0.5 + zs * zs * (1.0 / 6.0) + zs * zs * zs * (1.0 / 24.0);
        return (z * a).exp() * series * span;
    }
    ((z * b).exp() - (z * a).exp()) / z
}

/// A boundary output in one of the engine representations.
#[derive(Clone)]
pub enum Signal {
    /// Exact finite mode sum `Σ aₙκₙe^{λₙt}`.
    Modal(ModalSignal),
    /// Exact mode sum plus a deterministic closed-form disturbance.
    Disturbed(DisturbedSignal),
    /// Uniform samples (possibly noisy); Simpson quadrature.
    Grid(GridSignal),
}

impl Signal {
    /// `‖y‖_{L²(a,b)}`.
    pub fn window_l2_norm(&self, a: f64, b: f64) -> Result<f64> {
        match self {
            Signal::Modal(s) => s.window_l2_norm(a, b),
            Signal::Disturbed(s) => s.window_l2_norm(a, b),
            Signal::Grid(s) => s.window_l2_norm(a, b),
        }
    }

    /// `∫ₐᵇ y(t)·e^{−λt} dt`.
    pub fn weighted_exponential_integral(&self, lambda: C64, a: f64, b: f64) -> Result<C64> {
        match self {
            Signal::Modal(s) => s.weighted_exponential_integral(lambda, a, b),
            Signal::Disturbed(s) => s.weighted_exponential_integral(lambda, a, b),
            Signal::Grid(s) => s.weighted_exponential_integral(lambda, a, b),
        }
    }

    /// Time domain where the signal is defined; `None` means all finite `t`.
    pub fn domain(&self) -> Option<(f64, f64)> {
        match self {
            Signal::Modal(_) | Signal::Disturbed(_) => None,
            Signal::Grid(g) => Some(g.domain()),
        }
    }

    pub fn engine_name(&self) -> &'static str {
        match self {
            Signal::Modal(_) => "exact",
            Signal::Disturbed(_) => "exact+disturbance",
            Signal::Grid(_) => "grid",
        }
    }
}
