//! Vibrating string on `(0,1)`, fixed at `x = 0`, velocity feedback
//! `uₓ(1,t) = q·u_t(1,t)` at the free end, measured at `y = uₓ(0,t)`.
//!
//! State space `H¹_E(0,1) × L²(0,1)`. Eigenvalues `λₙ = f(q) + iμₙ` over
//! `n ∈ ℤ` with eigenfunctions `(sinh(λₙx)/λₙ, sinh(λₙx))`; the biorthogonal
//! family is `(sinh(λ̄ₙx)/λ̄ₙ, −sinh(λ̄ₙx))`. The growth map and frequencies
//! depend on which side of the singular magnitude `|q| = 1` the parameter
//! lies, so the prior set is declared as a branch at construction.

use super::InitialData;
use crate::error::{Error, Result};
use crate::quad::simpson_grid;
use crate::spectral::{
    GrowthMap, IndexKind, IndexWindow, Interval, ModalState, SpectralSystem, StateValue,
};
use crate::C64;
use rayon::prelude::*;

const SINGULAR_MARGIN: f64 = 1e-9;

/// Prior-set branch of the wave family, named for where `q` sits relative
/// to the singular magnitude 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveBranch {
    /// `q ∈ (1, ∞)`: growing output, `f(q) = atanh(1/q) > 0`, `μₙ = nπ`.
    Above,
    /// `q ∈ (−∞, −1)`: decaying output, `f(q) = atanh(1/q) < 0`, `μₙ = nπ`.
    Below,
    /// `q ∈ (0, 1)`: growing output, `f(q) = atanh(q)`, `μₙ = (2n+1)π/2`.
    Inside,
}

impl WaveBranch {
    pub fn prior(self) -> Interval {
        match self {
            WaveBranch::Above => Interval::new(1.0, f64::INFINITY),
            WaveBranch::Below => Interval::new(f64::NEG_INFINITY, -1.0),
            WaveBranch::Inside => Interval::new(0.0, 1.0),
        }
    }

    fn growth_map(self) -> Result<GrowthMap> {
        match self {
            // f = atanh(1/q) = ½ln((q+1)/(q−1)), inverted by q = coth(f);
            // one formula serves both signs of q.
            WaveBranch::Above | WaveBranch::Below => GrowthMap::new(
                |q: f64| (1.0 / q).atanh(),
                |f: f64| 1.0 / f.tanh(),
                self.prior(),
            ),
            // f = atanh(q) = ½ln((1+q)/(1−q)), inverted by q = tanh(f).
            WaveBranch::Inside => {
                GrowthMap::new(|q: f64| q.atanh(), |f: f64| f.tanh(), self.prior())
            }
        }
    }

    fn singular_point(self) -> f64 {
        match self {
            WaveBranch::Above | WaveBranch::Inside => 1.0,
            WaveBranch::Below => -1.0,
        }
    }
}

impl std::str::FromStr for WaveBranch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "above" => Ok(WaveBranch::Above),
            "below" => Ok(WaveBranch::Below),
            "inside" => Ok(WaveBranch::Inside),
            other => Err(Error::InvalidInput(format!(
                "unknown wave branch '{other}'; use above (q>1), below (q<-1) or inside (0<q<1)"
            ))),
        }
    }
}

pub struct Wave {
    q: f64,
    f: f64,
    branch: WaveBranch,
    map: GrowthMap,
}

impl Wave {
    /// Builds with the branch inferred from `q`; the three priors are
    /// disjoint, so `q` alone suffices when it is the true parameter.
    pub fn new(q: f64) -> Result<Self> {
        let branch = if q > 1.0 {
            WaveBranch::Above
        } else if q < -1.0 {
            WaveBranch::Below
        } else if q > 0.0 && q < 1.0 {
            WaveBranch::Inside
        } else {
            return Err(Error::Domain(format!(
                "wave parameter q = {q} lies outside every admissible prior \
                 ((1,\u{221e}), (\u{2212}\u{221e},\u{2212}1), (0,1))"
            )));
        };
        Wave::with_branch(q, branch)
    }

    /// Builds with an explicitly declared prior-set branch.
    pub fn with_branch(q: f64, branch: WaveBranch) -> Result<Self> {
        if !branch.prior().contains(q) {
            return Err(Error::Domain(format!(
                "q = {q} outside the declared prior {}",
                branch.prior()
            )));
        }
        let singular = branch.singular_point();
        if (q - singular).abs() <= SINGULAR_MARGIN {
            return Err(Error::SingularParameter {
                q,
                singular,
                margin: SINGULAR_MARGIN,
            });
        }
        let map = branch.growth_map()?;
        let f = map.forward(q)?;
        Ok(Wave { q, f, branch, map })
    }

    pub fn branch(&self) -> WaveBranch {
        self.branch
    }
}

impl SpectralSystem for Wave {
    fn name(&self) -> &'static str {
        "wave"
    }

    fn q(&self) -> f64 {
        self.q
    }

    fn growth(&self) -> f64 {
        self.f
    }

    fn growth_map(&self) -> &GrowthMap {
        &self.map
    }

    fn period(&self) -> f64 {
        match self.branch {
            WaveBranch::Above | WaveBranch::Below => 2.0,
            WaveBranch::Inside => 4.0,
        }
    }

    fn index_kind(&self) -> IndexKind {
        IndexKind::Symmetric
    }

    fn mu(&self, n: i64) -> f64 {
        self.harmonic(n) as f64 * std::f64::consts::TAU / self.period()
    }

    fn harmonic(&self, n: i64) -> i64 {
        match self.branch {
            WaveBranch::Above | WaveBranch::Below => n,
            WaveBranch::Inside => 2 * n + 1,
        }
    }

    fn kappa(&self, _n: i64) -> C64 {
        C64::new(1.0, 0.0)
    }

    fn kappa_bounds(&self) -> (f64, f64) {
        (1.0, 1.0)
    }

    fn eigenfunction(&self, n: i64, x: f64) -> StateValue {
        let lam = self.eigenvalue(n);
        let s = (lam * x).sinh();
        StateValue::Pair(s / lam, s)
    }

    fn displacement_derivative(&self, n: i64, x: f64) -> Option<C64> {
        Some((self.eigenvalue(n) * x).cosh())
    }

    fn project(&self, data: &InitialData, window: IndexWindow) -> Result<ModalState> {
        // ⟨(u₀,u₁), Ψₙ⟩ = ∫ u₀′cosh(λₙx) − u₁sinh(λₙx) dx; integrating the
        // first term by parts (u₀(0) = 0) removes the derivative of the data:
        //   aₙ = u₀(1)·cosh(λₙ) − ∫ (λₙu₀ + u₁)·sinh(λₙx) dx.
        let points = super::projection_points(data, &window);
        let (nodes, weights) = simpson_grid(0.0, 1.0, points, &data.breakpoints());
        let u0: Vec<C64> = nodes.iter().map(|&x| data.u0(x)).collect();
        let u1: Vec<C64> = nodes.iter().map(|&x| data.u1(x)).collect();
        let u0_end = data.u0(1.0);
        let indices: Vec<i64> = window.iter().collect();
        let coeffs: Vec<C64> = indices
            .par_iter()
            .map(|&n| {
                let lam = self.eigenvalue(n);
                let mut integral = C64::new(0.0, 0.0);
                for i in 0..nodes.len() {
                    integral += (u0[i] * lam + u1[i]) * (lam * nodes[i]).sinh() * weights[i];
                }
                u0_end * lam.cosh() - integral
            })
            .collect();
        Ok(ModalState::new(window, coeffs))
    }

    fn at_q(&self, q: f64) -> Result<Box<dyn SpectralSystem>> {
        Ok(Box::new(Wave::with_branch(q, self.branch)?))
    }
}
