//! Boundary disturbances: additive closed-form terms and per-sample noise.
//!
//! Additive disturbances stay representable in the exact engine because the
//! windowed quantities only ever need `∫ d(t)e^{zt} dt` and `∫ |d|² dt`,
//! which a Filon-type rule evaluates without sampling the (possibly very
//! fast) exponential factor. Multiplicative noise is different in kind: it
//! acts on individual samples, so it exists only on grids.

use crate::error::{Error, Result};
use crate::quad::simpson_real;
use crate::signal::{check_exponent, GridSignal, ModalSignal, GRID_POINTS_PER_WINDOW};
use crate::C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use crate::systems::TrigTerm as DisturbTerm;

/// What corrupts the boundary output.
///
/// The three named kinds are the built-in benchmark disturbances used by the
/// bundled experiments; `custom` takes any finite sum of fixed-frequency
/// trig terms in `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DisturbanceSpec {
    None,
    /// `2 sin(1/(1+t)) + 3 cos(10t)` — real, bounded, non-decaying.
    WaveExample,
    /// `2 sin(t/(10+t)) + 3i cos(20t)` — complex-valued.
    SchrodingerExample,
    /// `sin(t²/(10+t)) + cos(10t)` — slowly chirping phase.
    StringsExample,
    Custom {
        terms: Vec<DisturbTerm>,
    },
    /// `y(tₖ) ↦ y(tₖ)(1 + ρ ξₖ)` with `ξₖ` i.i.d. uniform on `[−1, 1]`.
    MultiplicativeNoise {
        level: f64,
        seed: u64,
    },
}

impl DisturbanceSpec {
    /// Additive pointwise value. The noise kind adds nothing pointwise (it
    /// rescales samples instead) and reports zero here.
    pub fn value(&self, t: f64) -> C64 {
        match self {
            DisturbanceSpec::None | DisturbanceSpec::MultiplicativeNoise { .. } => {
                C64::new(0.0, 0.0)
            }
            DisturbanceSpec::WaveExample => {
                C64::new(2.0 * (1.0 / (1.0 + t)).sin() + 3.0 * (10.0 * t).cos(), 0.0)
            }
            DisturbanceSpec::SchrodingerExample => {
                C64::new(2.0 * (t / (10.0 + t)).sin(), 3.0 * (20.0 * t).cos())
            }
            DisturbanceSpec::StringsExample => {
                C64::new((t * t / (10.0 + t)).sin() + (10.0 * t).cos(), 0.0)
            }
            DisturbanceSpec::Custom { terms } => terms.iter().map(|term| term.value(t)).sum(),
        }
    }

    /// True for kinds with a pointwise closed form (everything but noise).
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, DisturbanceSpec::MultiplicativeNoise { .. })
    }

    pub fn is_none(&self) -> bool {
        matches!(self, DisturbanceSpec::None)
    }

    /// Upper estimate of `sup |d(t)|` over `[0, horizon]`: a 10⁵-node scan
    /// polished by a golden-section pass around the best node, so the result
    /// dominates every scanned sample. `None` for sample noise, which has no
    /// additive magnitude.
    pub fn estimate_bound(&self, horizon: f64) -> Option<f64> {
        const NODES: usize = 100_001;
        match self {
            DisturbanceSpec::None => Some(0.0),
            DisturbanceSpec::MultiplicativeNoise { .. } => None,
            _ => {
                let h = horizon / (NODES - 1) as f64;
                let g = |t: f64| self.value(t).norm_sqr();
                let sq: Vec<f64> = (0..NODES)
                    .into_par_iter()
                    .map(|j| g(j as f64 * h))
                    .collect();
                let (best, &peak) = sq
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.total_cmp(b.1))
                    .expect("non-empty scan");
                let lo = (best as f64 * h - h).max(0.0);
                let hi = (best as f64 * h + h).min(horizon);
                Some(golden_max(&g, lo, hi).max(peak).sqrt())
            }
        }
    }
}

/// Golden-section search for the maximum of a locally unimodal function.
fn golden_max(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut g1 = g(x1);
    let mut g2 = g(x2);
    for _ in 0..120 {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + phi * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - phi * (hi - lo);
            g1 = g(x1);
        }
    }
    g(0.5 * (lo + hi)).max(g1).max(g2)
}

/// Windowed integrals `∫ₐᵇ d(t)e^{zt} dt` with the exponential treated
/// exactly.
///
/// `d` is interpolated by a parabola on each two-interval cell (as in
/// Simpson's rule) and the weighted moments `∫ sᵏe^{zs} ds` are evaluated in
/// closed form, so accuracy is set by how smooth `d` is across a cell — not
/// by `|Im z|`, which for high modes is far too large to sample.
pub(crate) struct OscillatoryKernel {
    a: f64,
    h: f64,
    d: Vec<C64>,
}

impl OscillatoryKernel {
    /// Samples `d` over `[a, b]` at roughly `GRID_POINTS_PER_WINDOW` nodes
    /// per `reference_span` (the window length or the signal period,
    /// whichever is shorter).
    pub(crate) fn new(spec: &DisturbanceSpec, a: f64, b: f64, reference_span: f64) -> Self {
        let target = reference_span.min(b - a) / GRID_POINTS_PER_WINDOW as f64;
        let cells = (((b - a) / (2.0 * target)).ceil() as usize).max(1);
        let h = (b - a) / (2 * cells) as f64;
        let d = (0..=2 * cells)
            .map(|j| spec.value(a + j as f64 * h))
            .collect();
        OscillatoryKernel { a, h, d }
    }

    /// `∫ₐᵇ d(t)e^{zt} dt`.
    pub(crate) fn integral(&self, z: C64) -> C64 {
        let h = self.h;
        let two_h = 2.0 * h;
        let z2h = z * two_h;
        // Cell moments Mₖ = ∫₀^{2h} sᵏ e^{zs} ds.
        let (m0, m1, m2) = if z2h.norm() < 1e-3 {
            // Maclaurin series: Mₖ = Σⱼ zʲ(2h)^{k+j+1} / (j!(k+j+1)); the
            // closed form below loses too many digits to cancellation here.
            let mut m = [C64::new(0.0, 0.0); 3];
            for (k, mk) in m.iter_mut().enumerate() {
                let mut pow = C64::new(two_h.powi(k as i32 + 1), 0.0);
                for j in 0..12 {
                    *mk += pow / (k + j + 1) as f64;
                    pow = pow * z2h / (j + 1) as f64;
                }
            }
            (m[0], m[1], m[2])
        } else {
            let e = z2h.exp();
            let m0 = (e - 1.0) / z;
            let m1 = (two_h * e - m0) / z;
            let m2 = (two_h * two_h * e - 2.0 * m1) / z;
            (m0, m1, m2)
        };
        // Integrated Lagrange weights for nodes s = 0, h, 2h.
        let a0 = (m2 - 3.0 * h * m1 + 2.0 * h * h * m0) / (2.0 * h * h);
        let a1 = (two_h * m1 - m2) / (h * h);
        let a2 = (m2 - h * m1) / (2.0 * h * h);

        let rho = z2h.exp();
        let mut phase = (z * self.a).exp();
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..(self.d.len() - 1) / 2 {
            let base = 2 * j;
            acc += phase * (self.d[base] * a0 + self.d[base + 1] * a1 + self.d[base + 2] * a2);
            phase *= rho;
        }
        acc
    }

    /// `∫ₐᵇ |d(t)|² dt` by composite Simpson.
    pub(crate) fn abs_sq_integral(&self) -> f64 {
        let sq: Vec<f64> = self.d.iter().map(|v| v.norm_sqr()).collect();
        simpson_real(&sq, self.h)
    }
}

/// Exact modal signal plus an additive closed-form disturbance.
#[derive(Clone)]
pub struct DisturbedSignal {
    modal: ModalSignal,
    spec: DisturbanceSpec,
}

impl DisturbedSignal {
    /// Noise kinds are rejected: they act per sample and only exist on
    /// grids (see [`GridSignal::with_disturbance`]).
    pub fn new(modal: ModalSignal, spec: DisturbanceSpec) -> Result<Self> {
        if !spec.is_deterministic() {
            return Err(Error::InvalidInput(
                "per-sample noise has no closed-form signal; sample on a grid and apply it there"
                    .into(),
            ));
        }
        Ok(DisturbedSignal { modal, spec })
    }

    pub fn modal(&self) -> &ModalSignal {
        &self.modal
    }

    pub fn disturbance(&self) -> &DisturbanceSpec {
        &self.spec
    }

    pub fn value(&self, t: f64) -> Result<C64> {
        Ok(self.modal.value(t)? + self.spec.value(t))
    }

    pub fn sample(&self, t_start: f64, t_end: f64, dt: f64) -> Result<GridSignal> {
        self.modal
            .sample(t_start, t_end, dt)?
            .with_disturbance(&self.spec)
    }

    /// `‖y + d‖_{L²(a,b)}` expanded as
    /// `‖y‖² + 2 Re Σₙ cₙ · conj(∫ d e^{λ̄ₙ t} dt) + ‖d‖²`,
    /// with the cross integrals done by the oscillatory kernel.
    pub fn window_l2_norm(&self, a: f64, b: f64) -> Result<f64> {
        let modal_sq = self.modal.window_l2_norm_sq(a, b)?;
        if self.spec.is_none() {
            return Ok(modal_sq.max(0.0).sqrt());
        }
        let kernel = OscillatoryKernel::new(&self.spec, a, b, self.modal.system().period());
        let cross_terms: Vec<C64> = self
            .modal
            .mode_pairs()
            .into_par_iter()
            .map(|(lambda, c)| c * kernel.integral(lambda.conj()).conj())
            .collect();
        let cross = 2.0 * cross_terms.into_iter().sum::<C64>().re;
        let total = modal_sq + cross + kernel.abs_sq_integral();
        Ok(total.max(0.0).sqrt())
    }

    /// `∫ₐᵇ (y + d)(t) e^{−λt} dt`.
    pub fn weighted_exponential_integral(&self, lambda: C64, a: f64, b: f64) -> Result<C64> {
        let modal = self.modal.weighted_exponential_integral(lambda, a, b)?;
        if self.spec.is_none() {
            return Ok(modal);
        }
        check_exponent(-lambda.re, a, b)?;
        let kernel = OscillatoryKernel::new(&self.spec, a, b, self.modal.system().period());
        Ok(modal + kernel.integral(-lambda))
    }
}

impl GridSignal {
    /// Applies a disturbance to sampled data. Additive kinds add `d(tₖ)`;
    /// multiplicative noise scales each sample by `1 + ρξₖ` with `ξₖ` drawn
    /// i.i.d. uniform from a seeded generator, one draw per sample in grid
    /// order, so a given `(level, seed)` is bit-reproducible.
    pub fn with_disturbance(&self, spec: &DisturbanceSpec) -> Result<GridSignal> {
        let (t0, _) = self.domain();
        match spec {
            DisturbanceSpec::None => Ok(self.clone()),
            DisturbanceSpec::MultiplicativeNoise { level, seed } => {
                if !level.is_finite() || *level < 0.0 {
                    return Err(Error::InvalidInput(format!("bad noise level {level}")));
                }
                let mut rng = ChaCha12Rng::seed_from_u64(*seed);
                let samples = self
                    .samples()
                    .iter()
                    .map(|&v| {
                        let xi: f64 = rng.random_range(-1.0..=1.0);
                        v * (1.0 + level * xi)
                    })
                    .collect();
                GridSignal::from_samples(t0, self.dt(), samples)
            }
            _ => {
                let dt = self.dt();
                let samples = self
                    .samples()
                    .par_iter()
                    .enumerate()
                    .map(|(k, &v)| v + spec.value(t0 + k as f64 * dt))
                    .collect();
                GridSignal::from_samples(t0, dt, samples)
            }
        }
    }
}
