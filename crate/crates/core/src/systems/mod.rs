//! The built-in system families and initial-data handling.
//!
//! Three families implement [`SpectralSystem`](crate::spectral::SpectralSystem):
//!
//! * [`Wave`] — second order, boundary velocity feedback at the far end,
//!   output `uₓ(0,t)`;
//! * [`Schrodinger`] — first order in time, interior potential, output
//!   `u(0,t)`;
//! * [`Strings`] — two media joined at `x = ½` with a point force at the
//!   joint, output `uₓ(0,t)`.
//!
//! Initial data is a pair of spatial profiles which need not satisfy any
//! boundary compatibility (mild solutions suffice); profiles come either
//! from a registered closed form or from samples with linear interpolation.

mod schrodinger;
mod strings;
mod wave;

pub use schrodinger::Schrodinger;
pub use strings::Strings;
pub use wave::{Wave, WaveBranch};

use crate::error::{Error, Result};
use crate::spectral::{IndexWindow, SpectralSystem};
use crate::C64;

pub const DEFAULT_QUAD_POINTS: usize = 4097;

/// Projection quadrature density for a given mode window: the `n`-th
/// eigenfunction oscillates spatially at frequency `~|n|π`, so the node count
/// scales with the top index; the data's own request acts as a floor.
fn projection_points(data: &InitialData, window: &IndexWindow) -> usize {
    let top = window
        .iter()
        .map(|n| n.unsigned_abs())
        .max()
        .unwrap_or(1)
        .max(1);
    data.quad_points().max(8 * top as usize + 1)
}

/// Builds a system by family name. `branch` is consulted only by the wave
/// family, which needs the prior set declared when `q` alone is ambiguous.
pub fn build(name: &str, q: f64, branch: Option<WaveBranch>) -> Result<Box<dyn SpectralSystem>> {
    match name {
        "wave" => {
            let w = match branch {
                Some(b) => Wave::with_branch(q, b)?,
                None => Wave::new(q)?,
            };
            Ok(Box::new(w))
        }
        "schrodinger" => Ok(Box::new(Schrodinger::new(q)?)),
        "strings" => Ok(Box::new(Strings::new(q)?)),
        other => Err(Error::InvalidInput(format!(
            "unknown system '{other}'; available: wave, schrodinger, strings"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigFn {
    Sin,
    Cos,
}

/// One closed-form term `(amp_re + i·amp_im)·fn(ω x)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TrigTerm {
    #[serde(rename = "fn")]
    pub function: TrigFn,
    pub omega: f64,
    #[serde(default)]
    pub amp_re: f64,
    #[serde(default)]
    pub amp_im: f64,
}

impl TrigTerm {
    pub fn sin(omega: f64, amp_re: f64) -> Self {
        TrigTerm {
            function: TrigFn::Sin,
            omega,
            amp_re,
            amp_im: 0.0,
        }
    }

    pub fn cos(omega: f64, amp_re: f64) -> Self {
        TrigTerm {
            function: TrigFn::Cos,
            omega,
            amp_re,
            amp_im: 0.0,
        }
    }

    pub fn with_imag(mut self, amp_im: f64) -> Self {
        self.amp_im = amp_im;
        self
    }

    pub(crate) fn value(&self, x: f64) -> C64 {
        let base = match self.function {
            TrigFn::Sin => (self.omega * x).sin(),
            TrigFn::Cos => (self.omega * x).cos(),
        };
        C64::new(self.amp_re * base, self.amp_im * base)
    }

    pub(crate) fn derivative(&self, x: f64) -> C64 {
        let base = match self.function {
            TrigFn::Sin => self.omega * (self.omega * x).cos(),
            TrigFn::Cos => -self.omega * (self.omega * x).sin(),
        };
        C64::new(self.amp_re * base, self.amp_im * base)
    }
}

#[derive(Debug, Clone)]
enum Field {
    Trig(Vec<TrigTerm>),
    Sampled { x: Vec<f64>, v: Vec<C64> },
}

impl Field {
    fn value(&self, x: f64) -> C64 {
        match self {
            Field::Trig(terms) => terms.iter().map(|t| t.value(x)).sum(),
            Field::Sampled { x: xs, v } => {
                if x <= xs[0] {
                    return v[0];
                }
                if x >= xs[xs.len() - 1] {
                    return v[v.len() - 1];
                }
                let j = xs.partition_point(|&p| p <= x);
                let (x0, x1) = (xs[j - 1], xs[j]);
                let w = (x - x0) / (x1 - x0);
                v[j - 1] * (1.0 - w) + v[j] * w
            }
        }
    }

    fn breakpoints(&self) -> &[f64] {
        match self {
            Field::Trig(_) => &[],
            Field::Sampled { x, .. } => x,
        }
    }
}

/// Unknown-state description: initial displacement `u₀` and, for second-order
/// systems, initial velocity `u₁`.
///
/// Serializes as a profile object, either
/// `{"kind": "closed_form", "name": "trig", "params": {"u0": [...], "u1": [...]}}`
/// where each term is `{"fn": "sin"|"cos", "omega": w, "amp_re": a, "amp_im": b}`,
/// or `{"kind": "sampled", "x": [...], "u0": [...], "u1": [...]}` with values
/// given as numbers or `[re, im]` pairs and evaluated by linear interpolation.
#[derive(Debug, Clone)]
pub struct InitialData {
    u0: Field,
    u1: Option<Field>,
    quad_points: usize,
}

impl InitialData {
    pub fn trig(u0: Vec<TrigTerm>, u1: Option<Vec<TrigTerm>>) -> Self {
        InitialData {
            u0: Field::Trig(u0),
            u1: u1.map(Field::Trig),
            quad_points: DEFAULT_QUAD_POINTS,
        }
    }

    pub fn sampled(x: Vec<f64>, u0: Vec<C64>, u1: Option<Vec<C64>>) -> Result<Self> {
        if x.len() < 2 || x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(
                "sample abscissae must be strictly increasing, length ≥ 2".into(),
            ));
        }
        if u0.len() != x.len() || u1.as_ref().is_some_and(|v| v.len() != x.len()) {
            return Err(Error::InvalidInput(
                "sample value arrays must match abscissae length".into(),
            ));
        }
        Ok(InitialData {
            u0: Field::Sampled {
                x: x.clone(),
                v: u0,
            },
            u1: u1.map(|v| Field::Sampled { x, v }),
            quad_points: DEFAULT_QUAD_POINTS,
        })
    }

    /// Overrides the spatial quadrature resolution used when projecting.
    pub fn with_quad_points(mut self, points: usize) -> Self {
        assert!(points >= 5);
        self.quad_points = points;
        self
    }

    pub fn quad_points(&self) -> usize {
        self.quad_points
    }

    pub fn u0(&self, x: f64) -> C64 {
        self.u0.value(x)
    }

    /// `u₀′(x)` when it has a closed form; `None` for interpolated samples,
    /// whose derivative would be an artifact of the mesh.
    pub fn u0_prime(&self, x: f64) -> Option<C64> {
        match &self.u0 {
            Field::Trig(terms) => Some(terms.iter().map(|t| t.derivative(x)).sum()),
            Field::Sampled { .. } => None,
        }
    }

    /// Initial velocity; identically zero when the profile carries none.
    pub fn u1(&self, x: f64) -> C64 {
        self.u1.as_ref().map_or(C64::new(0.0, 0.0), |f| f.value(x))
    }

    pub fn has_velocity(&self) -> bool {
        self.u1.is_some()
    }

    /// Interior points where the profiles lose smoothness (sample nodes of
    /// interpolated data); quadrature splits there.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .u0
            .breakpoints()
            .iter()
            .chain(self.u1.as_ref().map_or(&[] as &[f64], |f| f.breakpoints()))
            .copied()
            .filter(|&p| p > 0.0 && p < 1.0)
            .collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        pts
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ProfileSpec = serde_json::from_str(text)?;
        spec.try_into()
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Serialized form of [`InitialData`].
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileSpec {
    ClosedForm {
        name: String,
        params: serde_json::Value,
    },
    Sampled {
        x: Vec<f64>,
        u0: Vec<SampleValue>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        u1: Option<Vec<SampleValue>>,
    },
}

/// A sample that is either a real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum SampleValue {
    Real(f64),
    Complex([f64; 2]),
}

impl From<SampleValue> for C64 {
    fn from(v: SampleValue) -> C64 {
        match v {
            SampleValue::Real(r) => C64::new(r, 0.0),
            SampleValue::Complex([re, im]) => C64::new(re, im),
        }
    }
}

impl From<C64> for SampleValue {
    fn from(v: C64) -> SampleValue {
        if v.im == 0.0 {
            SampleValue::Real(v.re)
        } else {
            SampleValue::Complex([v.re, v.im])
        }
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct TrigParams {
    u0: Vec<TrigTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u1: Option<Vec<TrigTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quad_points: Option<usize>,
}

impl TryFrom<ProfileSpec> for InitialData {
    type Error = Error;

    fn try_from(spec: ProfileSpec) -> Result<Self> {
        match spec {
            ProfileSpec::ClosedForm { name, params } => {
                if name != "trig" {
                    return Err(Error::InvalidInput(format!(
                        "unknown closed-form profile '{name}'; registered: trig"
                    )));
                }
                let p: TrigParams = serde_json::from_value(params)?;
                let mut data = InitialData::trig(p.u0, p.u1);
                if let Some(n) = p.quad_points {
                    data = data.with_quad_points(n);
                }
                Ok(data)
            }
            ProfileSpec::Sampled { x, u0, u1 } => InitialData::sampled(
                x,
                u0.into_iter().map(C64::from).collect(),
                u1.map(|v| v.into_iter().map(C64::from).collect()),
            ),
        }
    }
}

impl From<&InitialData> for ProfileSpec {
    fn from(data: &InitialData) -> ProfileSpec {
        fn terms(f: &Field) -> Vec<TrigTerm> {
            match f {
                Field::Trig(t) => t.clone(),
                Field::Sampled { .. } => unreachable!(),
            }
        }
        match &data.u0 {
            Field::Trig(_) => {
                let params = TrigParams {
                    u0: terms(&data.u0),
                    u1: data.u1.as_ref().map(terms),
                    quad_points: (data.quad_points != DEFAULT_QUAD_POINTS)
                        .then_some(data.quad_points),
                };
                ProfileSpec::ClosedForm {
                    name: "trig".into(),
                    params: serde_json::to_value(&params).expect("trig params serialize"),
                }
            }
            Field::Sampled { x, v } => ProfileSpec::Sampled {
                x: x.clone(),
                u0: v.iter().map(|&c| SampleValue::from(c)).collect(),
                u1: data.u1.as_ref().map(|f| match f {
                    Field::Sampled { v, .. } => v.iter().map(|&c| SampleValue::from(c)).collect(),
                    Field::Trig(_) => unreachable!(),
                }),
            },
        }
    }
}

impl serde::Serialize for InitialData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileSpec::from(self).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for InitialData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = ProfileSpec::deserialize(d)?;
        spec.try_into().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn trig_profile_evaluates_terms() {
        let data = InitialData::trig(
            vec![
                TrigTerm::sin(PI, 1.0),
                TrigTerm::cos(PI, 0.0).with_imag(1.0),
            ],
            Some(vec![TrigTerm::cos(PI, PI)]),
        );
        let v = data.u0(0.25);
        assert_relative_eq!(v.re, (PI * 0.25).sin(), max_relative = 1e-15);
        assert_relative_eq!(v.im, (PI * 0.25).cos(), max_relative = 1e-15);
        assert_relative_eq!(data.u1(0.5).re, 0.0, epsilon = 1e-15);
        assert!(data.has_velocity());
        assert!(data.breakpoints().is_empty());
    }

    #[test]
    fn sampled_profile_interpolates_linearly() {
        let data = InitialData::sampled(
            vec![0.0, 0.5, 1.0],
            vec![C64::new(0.0, 0.0), C64::new(1.0, -1.0), C64::new(0.0, 0.0)],
            None,
        )
        .unwrap();
        assert_eq!(data.u0(0.25), C64::new(0.5, -0.5));
        assert_eq!(data.u0(2.0), C64::new(0.0, 0.0)); // clamped
        assert_eq!(data.breakpoints(), vec![0.5]);
        assert_eq!(data.u1(0.3), C64::new(0.0, 0.0));
        assert!(!data.has_velocity());
    }

    #[test]
    fn sampled_profile_rejects_bad_abscissae() {
        let r = InitialData::sampled(vec![0.0, 0.0, 1.0], vec![C64::new(0.0, 0.0); 3], None);
        assert!(r.is_err());
        let r = InitialData::sampled(vec![0.0, 1.0], vec![C64::new(0.0, 0.0); 3], None);
        assert!(r.is_err());
    }

    #[test]
    fn profile_json_round_trip() {
        let text = r#"{
            "kind": "closed_form",
            "name": "trig",
            "params": {"u0": [{"fn": "sin", "omega": 3.141592653589793, "amp_re": -3.0}],
                       "u1": [{"fn": "cos", "omega": 3.141592653589793, "amp_re": 3.141592653589793}]}
        }"#;
        let data = InitialData::from_json(text).unwrap();
        assert_relative_eq!(data.u0(0.5).re, -3.0, max_relative = 1e-15);
        let back = serde_json::to_string(&data).unwrap();
        let again = InitialData::from_json(&back).unwrap();
        assert_eq!(again.u0(0.3), data.u0(0.3));
        assert_eq!(again.u1(0.3), data.u1(0.3));

        let sampled = r#"{"kind": "sampled", "x": [0.0, 1.0], "u0": [0.0, [1.0, 2.0]]}"#;
        let data = InitialData::from_json(sampled).unwrap();
        assert_eq!(data.u0(1.0), C64::new(1.0, 2.0));
        let back = serde_json::to_string(&data).unwrap();
        assert_eq!(InitialData::from_json(&back).unwrap().u0(0.5), data.u0(0.5));
    }

    #[test]
    fn unknown_profile_name_is_rejected() {
        let r = InitialData::from_json(r#"{"kind": "closed_form", "name": "bump", "params": {}}"#);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn factory_builds_each_family() {
        assert_eq!(build("wave", -3.0, None).unwrap().name(), "wave");
        assert_eq!(
            build("schrodinger", 0.7, None).unwrap().name(),
            "schrodinger"
        );
        assert_eq!(build("strings", 3.0, None).unwrap().name(), "strings");
        assert!(build("heat", 1.0, None).is_err());
    }
}
