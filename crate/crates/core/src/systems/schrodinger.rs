//! Quantum system on `(0,1)`: `u_t = −iu_xx + qu` with `uₓ(0,t) = u(1,t) = 0`,
//! measured at `y = u(0,t)`.
//!
//! State space `L²(0,1)`. The eigenfunctions `φₙ = √2 cos((n−½)πx)`, `n ≥ 1`,
//! are orthonormal, so projection is a plain inner product and the growth map
//! is the identity on `(0, ∞)`.

use super::InitialData;
use crate::error::{Error, Result};
use crate::quad::simpson_grid;
use crate::spectral::{
    GrowthMap, IndexKind, IndexWindow, Interval, ModalState, SpectralSystem, StateValue,
};
use crate::C64;
use rayon::prelude::*;
use std::f64::consts::PI;

pub struct Schrodinger {
    q: f64,
    map: GrowthMap,
}

impl Schrodinger {
    pub fn new(q: f64) -> Result<Self> {
        let map = GrowthMap::new(|q: f64| q, |f: f64| f, Interval::new(0.0, f64::INFINITY))?;
        if !map.prior().contains(q) {
            return Err(Error::Domain(format!(
                "potential q = {q} outside the prior set (0, \u{221e})"
            )));
        }
        Ok(Schrodinger { q, map })
    }

    fn phi(&self, n: i64, x: f64) -> f64 {
        std::f64::consts::SQRT_2 * ((n as f64 - 0.5) * PI * x).cos()
    }
}

impl SpectralSystem for Schrodinger {
    fn name(&self) -> &'static str {
        "schrodinger"
    }

    fn q(&self) -> f64 {
        self.q
    }

    fn growth(&self) -> f64 {
        self.q
    }

    fn growth_map(&self) -> &GrowthMap {
        &self.map
    }

    fn period(&self) -> f64 {
        8.0 / PI
    }

    fn index_kind(&self) -> IndexKind {
        IndexKind::Natural
    }

    fn mu(&self, n: i64) -> f64 {
        // (n − ½)²π² = (2n−1)²·2π/L with L = 8/π.
        let half = n as f64 - 0.5;
        half * half * PI * PI
    }

    fn harmonic(&self, n: i64) -> i64 {
        let odd = 2 * n - 1;
        odd * odd
    }

    fn kappa(&self, _n: i64) -> C64 {
        C64::new(std::f64::consts::SQRT_2, 0.0)
    }

    fn kappa_bounds(&self) -> (f64, f64) {
        (std::f64::consts::SQRT_2, std::f64::consts::SQRT_2)
    }

    fn eigenfunction(&self, n: i64, x: f64) -> StateValue {
        StateValue::Scalar(C64::new(self.phi(n, x), 0.0))
    }

    fn displacement_derivative(&self, _n: i64, _x: f64) -> Option<C64> {
        None
    }

    fn project(&self, data: &InitialData, window: IndexWindow) -> Result<ModalState> {
        if window.kind != IndexKind::Natural {
            return Err(Error::InvalidInput(
                "this family indexes modes over n = 1, 2, …".into(),
            ));
        }
        let points = super::projection_points(data, &window);
        let (nodes, weights) = simpson_grid(0.0, 1.0, points, &data.breakpoints());
        let u0: Vec<C64> = nodes.iter().map(|&x| data.u0(x)).collect();
        let indices: Vec<i64> = window.iter().collect();
        let coeffs: Vec<C64> = indices
            .par_iter()
            .map(|&n| {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..nodes.len() {
                    acc += u0[i] * (self.phi(n, nodes[i]) * weights[i]);
                }
                acc
            })
            .collect();
        Ok(ModalState::new(window, coeffs))
    }

    fn at_q(&self, q: f64) -> Result<Box<dyn SpectralSystem>> {
        Ok(Box::new(Schrodinger::new(q)?))
    }
}
