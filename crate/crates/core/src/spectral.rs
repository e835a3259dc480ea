//! The abstract spectral-system contract.
//!
//! A system qualifies for identification from one boundary output when
//!
//! 1. its eigenvalues are `λₙ = f(q) + iμₙ` with `f` strictly monotone on a
//!    known prior interval of `q`,
//! 2. there is a period `L > 0` with `μₙL/(2π) = Kₙ ∈ ℤ` for every `n`, and
//! 3. the observation coefficients `κₙ` admit uniform two-sided bounds.
//!
//! [`GrowthMap`] carries (1), [`SpectralSystem`] carries (2)–(3) together
//! with eigenfunction evaluation and modal projection of initial data.

use crate::error::{Error, Result};
use crate::systems::InitialData;
use crate::C64;

/// An interval prior set with possibly infinite, always open, endpoints.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo < hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn contains(&self, q: f64) -> bool {
        q.is_finite() && q > self.lo && q < self.hi
    }

    /// A finite closed sub-interval for validation sampling; infinite ends
    /// are clamped to a span of 1e3 and finite ends pulled in by a hair.
    fn sampling_bounds(&self) -> (f64, f64) {
        const SPAN: f64 = 1e3;
        let lo = if self.lo.is_finite() {
            self.lo + (self.hi.min(self.lo + SPAN) - self.lo) * 1e-6
        } else {
            self.hi.min(SPAN) - SPAN
        };
        let hi = if self.hi.is_finite() {
            self.hi - (self.hi - self.lo.max(self.hi - SPAN)) * 1e-6
        } else {
            self.lo.max(-SPAN) + SPAN
        };
        (lo, hi)
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// The strictly monotone map `q ↦ f(q)` between the parameter and the common
/// real part of the eigenvalues, with its inverse and the prior set.
///
/// Construction validates monotonicity and the round trip
/// `inverse(forward(q)) = q` on 1000 sample points, so user-supplied maps get
/// the same guarantees as the built-in ones.
pub struct GrowthMap {
    forward: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    inverse: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    prior: Interval,
}

impl GrowthMap {
    pub fn new(
        forward: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
        prior: Interval,
    ) -> Result<Self> {
        let map = GrowthMap {
            forward: Box::new(forward),
            inverse: Box::new(inverse),
            prior,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        const SAMPLES: usize = 1000;
        let (lo, hi) = self.prior.sampling_bounds();
        let mut prev: Option<f64> = None;
        let mut direction: Option<bool> = None;
        for i in 0..SAMPLES {
            let q = lo + (hi - lo) * i as f64 / (SAMPLES - 1) as f64;
            let f = (self.forward)(q);
            if !f.is_finite() {
                return Err(Error::Numerical(format!(
                    "growth map not finite at q = {q}"
                )));
            }
            let back = (self.inverse)(f);
            if (back - q).abs() > 1e-12 * q.abs().max(1.0) {
                return Err(Error::Numerical(format!(
                    "growth map round trip failed at q = {q}: inverse(forward) = {back}"
                )));
            }
            if let Some(p) = prev {
                let increasing = f > p;
                if f == p {
                    return Err(Error::Numerical(format!(
                        "growth map not strictly monotone near q = {q}"
                    )));
                }
                match direction {
                    None => direction = Some(increasing),
                    Some(d) if d != increasing => {
                        return Err(Error::Numerical(format!(
                            "growth map changes direction near q = {q}"
                        )))
                    }
                    _ => {}
                }
            }
            prev = Some(f);
        }
        Ok(())
    }

    pub fn prior(&self) -> Interval {
        self.prior
    }

    /// `f(q)`; errors if `q` is outside the prior set.
    pub fn forward(&self, q: f64) -> Result<f64> {
        if !self.prior.contains(q) {
            return Err(Error::Domain(format!(
                "q = {q} outside the prior set {}",
                self.prior
            )));
        }
        Ok((self.forward)(q))
    }

    /// `f⁻¹(f_hat)`; errors with the raw `f_hat` if no preimage lies in the
    /// prior set.
    pub fn inverse(&self, f_hat: f64) -> Result<f64> {
        let q = (self.inverse)(f_hat);
        if !self.prior.contains(q) {
            return Err(Error::PriorSet { f_hat });
        }
        let roundtrip = (self.forward)(q);
        if !roundtrip.is_finite() || (roundtrip - f_hat).abs() > 1e-9 * f_hat.abs().max(1.0) {
            return Err(Error::PriorSet { f_hat });
        }
        Ok(q)
    }
}

impl std::fmt::Debug for GrowthMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GrowthMap")
            .field("prior", &self.prior)
            .finish()
    }
}

/// Whether the modal index runs over `ℤ` or over `ℕ = {1, 2, …}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum IndexKind {
    Symmetric,
    Natural,
}

/// A finite truncation window of the modal index set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct IndexWindow {
    pub kind: IndexKind,
    pub n_max: i64,
}

impl IndexWindow {
    pub fn symmetric(n_max: i64) -> Self {
        assert!(n_max >= 0);
        IndexWindow {
            kind: IndexKind::Symmetric,
            n_max,
        }
    }

    pub fn natural(n_max: i64) -> Self {
        assert!(n_max >= 1);
        IndexWindow {
            kind: IndexKind::Natural,
            n_max,
        }
    }

    pub fn len(&self) -> usize {
        match self.kind {
            IndexKind::Symmetric => (2 * self.n_max + 1) as usize,
            IndexKind::Natural => self.n_max as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        match self.kind {
            IndexKind::Symmetric => -self.n_max..=self.n_max,
            IndexKind::Natural => 1..=self.n_max,
        }
    }

    pub fn contains(&self, n: i64) -> bool {
        match self.kind {
            IndexKind::Symmetric => n.abs() <= self.n_max,
            IndexKind::Natural => n >= 1 && n <= self.n_max,
        }
    }

    /// Position of index `n` in iteration order.
    pub fn offset(&self, n: i64) -> Option<usize> {
        if !self.contains(n) {
            return None;
        }
        Some(match self.kind {
            IndexKind::Symmetric => (n + self.n_max) as usize,
            IndexKind::Natural => (n - 1) as usize,
        })
    }
}

/// Modal amplitudes `aₙ` over a finite index window; indices outside the
/// window are implicitly zero.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ModalState {
    pub window: IndexWindow,
    pub coeffs: Vec<C64>,
}

impl ModalState {
    pub fn new(window: IndexWindow, coeffs: Vec<C64>) -> Self {
        assert_eq!(coeffs.len(), window.len());
        ModalState { window, coeffs }
    }

    pub fn zero(window: IndexWindow) -> Self {
        ModalState {
            coeffs: vec![C64::new(0.0, 0.0); window.len()],
            window,
        }
    }

    pub fn amplitude(&self, n: i64) -> C64 {
        self.window
            .offset(n)
            .map_or(C64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn set(&mut self, n: i64, value: C64) {
        let i = self.window.offset(n).expect("index outside window");
        self.coeffs[i] = value;
    }

    /// Squared ℓ² norm of the amplitudes.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.window.iter().zip(self.coeffs.iter().copied())
    }
}

/// Value of an eigenfunction at a point: a scalar for first-order systems,
/// a (displacement, velocity) pair for second-order ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateValue {
    Scalar(C64),
    Pair(C64, C64),
}

impl StateValue {
    pub fn first(&self) -> C64 {
        match self {
            StateValue::Scalar(v) => *v,
            StateValue::Pair(u, _) => *u,
        }
    }

    pub fn second(&self) -> Option<C64> {
        match self {
            StateValue::Scalar(_) => None,
            StateValue::Pair(_, v) => Some(*v),
        }
    }
}

/// Diagnostics for the frequency structure: how far `μₙL/(2π)` is from the
/// nearest integer, and the smallest consecutive frequency gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub max_integer_deviation: f64,
    pub min_gap: f64,
}

/// Checks the integrality condition `μₙL/(2π) ∈ ℤ` and the gap condition on
/// an explicit, increasing frequency list.
pub fn check_gap_condition(mus: &[f64], period: f64) -> GapReport {
    assert!(!mus.is_empty());
    let mut max_dev: f64 = 0.0;
    let mut min_gap = f64::INFINITY;
    for (i, &mu) in mus.iter().enumerate() {
        let k = mu * period / std::f64::consts::TAU;
        max_dev = max_dev.max((k - k.round()).abs());
        if i > 0 {
            min_gap = min_gap.min(mu - mus[i - 1]);
        }
    }
    GapReport {
        max_integer_deviation: max_dev,
        min_gap,
    }
}

/// The system contract every estimator consumes. Implementations are
/// immutable; all methods are pure, so values are safe to share across
/// threads.
pub trait SpectralSystem: Send + Sync {
    /// Short identifier ("wave", "schrodinger", "strings").
    fn name(&self) -> &'static str;

    /// The parameter value this instance was built with.
    fn q(&self) -> f64;

    /// The growth rate `f(q)` of this instance.
    fn growth(&self) -> f64;

    /// The parameter-to-growth-rate map with its prior set.
    fn growth_map(&self) -> &GrowthMap;

    /// The common period `L` of the modal phases.
    fn period(&self) -> f64;

    fn index_kind(&self) -> IndexKind;

    /// Angular frequency `μₙ`.
    fn mu(&self, n: i64) -> f64;

    /// The integer `Kₙ` with `μₙ = 2πKₙ/L`.
    fn harmonic(&self, n: i64) -> i64;

    /// Observation coefficient `κₙ` (value of the output functional on the
    /// n-th eigenfunction).
    fn kappa(&self, n: i64) -> C64;

    /// Uniform bounds `0 < κ_min ≤ |κₙ| ≤ κ_max`.
    fn kappa_bounds(&self) -> (f64, f64);

    /// `λₙ = f(q) + iμₙ`.
    fn eigenvalue(&self, n: i64) -> C64 {
        C64::new(self.growth(), self.mu(n))
    }

    /// Eigenfunction value at `x ∈ [0, 1]`.
    fn eigenfunction(&self, n: i64, x: f64) -> StateValue;

    /// Spatial derivative of the displacement component, where meaningful;
    /// used for energy-norm error reporting.
    fn displacement_derivative(&self, n: i64, x: f64) -> Option<C64>;

    /// Modal amplitudes `aₙ = ⟨x₀, ψₙ⟩` of initial data against the
    /// biorthogonal family, over the given window.
    fn project(&self, data: &InitialData, window: IndexWindow) -> Result<ModalState>;

    /// Interior points where eigenfunctions lose smoothness; quadrature
    /// splits there.
    fn quadrature_breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// A new instance of the same family at a different parameter value.
    fn at_q(&self, q: f64) -> Result<Box<dyn SpectralSystem>>;

    /// Gap diagnostics over a window of this system's frequencies.
    fn gap_report(&self, window: IndexWindow) -> GapReport {
        let mus: Vec<f64> = window.iter().map(|n| self.mu(n)).collect();
        check_gap_condition(&mus, self.period())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn identity_map() -> GrowthMap {
        GrowthMap::new(|q| q, |f| f, Interval::new(0.0, f64::INFINITY)).unwrap()
    }

    #[test]
    fn growth_map_round_trip_and_domain() {
        let m = identity_map();
        assert_relative_eq!(m.forward(0.7).unwrap(), 0.7);
        assert_relative_eq!(m.inverse(0.7).unwrap(), 0.7);
        assert!(matches!(m.forward(-1.0), Err(Error::Domain(_))));
        assert!(matches!(m.inverse(-0.5), Err(Error::PriorSet { f_hat }) if f_hat == -0.5));
    }

    #[test]
    fn non_monotone_map_rejected() {
        let r = GrowthMap::new(|q| (q * 10.0).sin(), |f| f, Interval::new(0.0, 10.0));
        assert!(matches!(r, Err(Error::Numerical(_))));
    }

    #[test]
    fn broken_inverse_rejected() {
        let r = GrowthMap::new(|q| q, |f| f + 0.1, Interval::new(0.0, 1.0));
        assert!(matches!(r, Err(Error::Numerical(_))));
    }

    #[test]
    fn index_windows_iterate_in_order() {
        let w = IndexWindow::symmetric(2);
        assert_eq!(w.iter().collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(w.len(), 5);
        assert_eq!(w.offset(-2), Some(0));
        assert_eq!(w.offset(3), None);

        let w = IndexWindow::natural(3);
        assert_eq!(w.iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(w.offset(1), Some(0));
        assert_eq!(w.offset(0), None);
    }

    #[test]
    fn modal_state_lookup_defaults_to_zero() {
        let mut s = ModalState::zero(IndexWindow::symmetric(1));
        s.set(1, C64::new(2.0, -1.0));
        assert_eq!(s.amplitude(1), C64::new(2.0, -1.0));
        assert_eq!(s.amplitude(5), C64::new(0.0, 0.0));
        assert_relative_eq!(s.energy(), 5.0);
    }

    #[test]
    fn gap_report_flags_perturbed_frequencies() {
        // Exact integer multiples: zero deviation, gap π.
        let mus: Vec<f64> = (-5..=5).map(|n| n as f64 * std::f64::consts::PI).collect();
        let r = check_gap_condition(&mus, 2.0);
        assert_eq!(r.max_integer_deviation, 0.0);
        assert_relative_eq!(r.min_gap, std::f64::consts::PI, max_relative = 1e-15);

        // Shifting every frequency by 0.01 moves μL/2π off the integers by
        // 0.01/π.
        let shifted: Vec<f64> = mus.iter().map(|m| m + 0.01).collect();
        let r = check_gap_condition(&shifted, 2.0);
        assert_relative_eq!(
            r.max_integer_deviation,
            0.01 / std::f64::consts::PI,
            max_relative = 1e-10
        );
    }
}
