//! Two strings joined at `x = ½` with point velocity feedback at the joint:
//! `uₓ(½⁻,t) − uₓ(½⁺,t) = q·u_t(½,t)`, ends `u(0,t) = uₓ(1,t) = 0`,
//! measured at `y = uₓ(0,t)`.
//!
//! State space `H¹_E(0,1) × L²(0,1)`. Eigenfunctions are hyperbolic on each
//! half and lose smoothness at the joint, so all spatial quadrature splits
//! there. Unlike the single wave family, the observation coefficients depend
//! on the mode: `κₙ = √2 cosh(λₙ/2)` with `|κₙ|` alternating between
//! `√2 sinh(f/2)` (odd `n`) and `√2 cosh(f/2)` (even `n`).

use super::InitialData;
use crate::error::{Error, Result};
use crate::quad::simpson_grid;
use crate::spectral::{
    GrowthMap, IndexKind, IndexWindow, Interval, ModalState, SpectralSystem, StateValue,
};
use crate::C64;
use rayon::prelude::*;
use std::f64::consts::{PI, SQRT_2};

const SINGULAR_MARGIN: f64 = 1e-9;

pub struct Strings {
    q: f64,
    f: f64,
    map: GrowthMap,
}

impl Strings {
    /// Prior set `(2, ∞)`; the mirrored regime `0 < q < 2` has the same
    /// structure and is not wired up.
    pub fn new(q: f64) -> Result<Self> {
        let map = GrowthMap::new(
            // f = atanh(2/q) = ½ ln((q+2)/(q−2))
            |q: f64| (2.0 / q).atanh(),
            |f: f64| 2.0 / f.tanh(),
            Interval::new(2.0, f64::INFINITY),
        )?;
        if !map.prior().contains(q) {
            return Err(Error::Domain(format!(
                "joint feedback gain q = {q} outside the prior set (2, \u{221e})"
            )));
        }
        if (q - 2.0).abs() <= SINGULAR_MARGIN {
            return Err(Error::SingularParameter {
                q,
                singular: 2.0,
                margin: SINGULAR_MARGIN,
            });
        }
        let f = map.forward(q)?;
        Ok(Strings { q, f, map })
    }

    /// Displacement eigenfunction; hyperbolic sine outward from the fixed
    /// end on the left half, hyperbolic cosine inward from the free end on
    /// the right half (the two branches agree at the joint).
    fn phi(&self, n: i64, x: f64) -> C64 {
        let lam = self.eigenvalue(n);
        if x <= 0.5 {
            (lam * 0.5).cosh() * (lam * x).sinh() * SQRT_2 / lam
        } else {
            (lam * 0.5).sinh() * (lam * (1.0 - x)).cosh() * SQRT_2 / lam
        }
    }

    fn phi_prime(&self, n: i64, x: f64) -> C64 {
        let lam = self.eigenvalue(n);
        if x <= 0.5 {
            (lam * 0.5).cosh() * (lam * x).cosh() * SQRT_2
        } else {
            -(lam * 0.5).sinh() * (lam * (1.0 - x)).sinh() * SQRT_2
        }
    }
}

impl SpectralSystem for Strings {
    fn name(&self) -> &'static str {
        "strings"
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
        2.0
    }

    fn index_kind(&self) -> IndexKind {
        IndexKind::Symmetric
    }

    fn mu(&self, n: i64) -> f64 {
        n as f64 * PI
    }

    fn harmonic(&self, n: i64) -> i64 {
        n
    }

    fn kappa(&self, n: i64) -> C64 {
        (self.eigenvalue(n) * 0.5).cosh() * SQRT_2
    }

    fn kappa_bounds(&self) -> (f64, f64) {
        // |κₙ|² = cosh f + (−1)ⁿ, so the bounds √2 sinh(f/2) and
        // √2 cosh(f/2) are attained at odd and even n respectively.
        (
            SQRT_2 * (self.f / 2.0).sinh(),
            SQRT_2 * (self.f / 2.0).cosh(),
        )
    }

    fn eigenfunction(&self, n: i64, x: f64) -> StateValue {
        let p = self.phi(n, x);
        StateValue::Pair(p, p * self.eigenvalue(n))
    }

    fn displacement_derivative(&self, n: i64, x: f64) -> Option<C64> {
        Some(self.phi_prime(n, x))
    }

    fn project(&self, data: &InitialData, window: IndexWindow) -> Result<ModalState> {
        // ⟨(u₀,u₁), Ψₙ⟩ = ∫ u₀′φₙ′ − λₙu₁φₙ dx. Integrating the first term
        // by parts on each smooth half uses φₙ″ = λₙ²φₙ, u₀(0) = 0,
        // φₙ′(1) = 0 and the derivative jump φₙ′(½⁻) − φₙ′(½⁺) = √2 cosh λₙ:
        //   aₙ = √2 cosh(λₙ)·u₀(½) − λₙ·∫ (λₙu₀ + u₁)·φₙ dx.
        let mut cuts = self.quadrature_breakpoints();
        cuts.extend(data.breakpoints());
        let points = super::projection_points(data, &window);
        let (nodes, weights) = simpson_grid(0.0, 1.0, points, &cuts);
        let u0: Vec<C64> = nodes.iter().map(|&x| data.u0(x)).collect();
        let u1: Vec<C64> = nodes.iter().map(|&x| data.u1(x)).collect();
        let u0_mid = data.u0(0.5);
        let indices: Vec<i64> = window.iter().collect();
        let coeffs: Vec<C64> = indices
            .par_iter()
            .map(|&n| {
                let lam = self.eigenvalue(n);
                let mut integral = C64::new(0.0, 0.0);
                for i in 0..nodes.len() {
                    integral += (u0[i] * lam + u1[i]) * self.phi(n, nodes[i]) * weights[i];
                }
                u0_mid * lam.cosh() * SQRT_2 - integral * lam
            })
            .collect();
        Ok(ModalState::new(window, coeffs))
    }

    fn quadrature_breakpoints(&self) -> Vec<f64> {
        vec![0.5]
    }

    fn at_q(&self, q: f64) -> Result<Box<dyn SpectralSystem>> {
        Ok(Box::new(Strings::new(q)?))
    }
}
