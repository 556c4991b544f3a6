//! Reference functions on `[0, 2π]` and their uniform discretisation.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionId {
    /// `t + 1`
    Ramp,
    /// Linear ramp taking the values `1, 2, ..., N` at the `N` sample points.
    RampInteger,
    /// `sin(0.75 t)`
    Sine75,
    /// `0.02 e^t`
    Exp02,
    Custom(String),
}

impl FunctionId {
    pub fn name(&self) -> &str {
        match self {
            FunctionId::Ramp => "ramp",
            FunctionId::RampInteger => "ramp_integer",
            FunctionId::Sine75 => "sine75",
            FunctionId::Exp02 => "exp02",
            FunctionId::Custom(name) => name,
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ramp" => Ok(FunctionId::Ramp),
            "ramp_integer" => Ok(FunctionId::RampInteger),
            "sine75" => Ok(FunctionId::Sine75),
            "exp02" => Ok(FunctionId::Exp02),
            other => Err(Error::UnknownFunction(other.to_string())),
        }
    }
}

/// A function on `[0, 2π]` with optional first and second derivatives.
///
/// `smoothness` records the class `W^r` the function is taken to belong to on
/// the interval; it is informational.
#[derive(Clone)]
pub struct SourceFunction {
    id: FunctionId,
    value: Eval,
    derivatives: Option<[Eval; 2]>,
    smoothness: usize,
}

impl fmt::Debug for SourceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SourceFunction")
            .field("id", &self.id)
            .field("has_derivatives", &self.derivatives.is_some())
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

impl SourceFunction {
    pub fn custom(name: &str, value: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            id: FunctionId::Custom(name.to_string()),
            value: Arc::new(value),
            derivatives: None,
            smoothness: 0,
        }
    }

    pub fn with_derivatives(
        mut self,
        first: impl Fn(f64) -> f64 + Send + Sync + 'static,
        second: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.derivatives = Some([Arc::new(first), Arc::new(second)]);
        self
    }

    pub fn with_smoothness(mut self, r: usize) -> Self {
        self.smoothness = r;
        self
    }

    pub fn ramp() -> Self {
        Self::custom("", |t| t + 1.0)
            .with_derivatives(|_| 1.0, |_| 0.0)
            .with_smoothness(usize::MAX)
            .with_id(FunctionId::Ramp)
    }

    /// The ramp through `1, 2, ..., n` at the `n` uniform sample points.
    pub fn ramp_integer(n: usize) -> Self {
        let slope = n.saturating_sub(1) as f64 / TAU;
        Self::custom("", move |t| 1.0 + slope * t)
            .with_derivatives(move |_| slope, |_| 0.0)
            .with_smoothness(usize::MAX)
            .with_id(FunctionId::RampInteger)
    }

    pub fn sine75() -> Self {
        Self::custom("", |t| (0.75 * t).sin())
            .with_derivatives(|t| 0.75 * (0.75 * t).cos(), |t| -0.5625 * (0.75 * t).sin())
            .with_smoothness(usize::MAX)
            .with_id(FunctionId::Sine75)
    }

    pub fn exp02() -> Self {
        Self::custom("", |t| 0.02 * t.exp())
            .with_derivatives(|t| 0.02 * t.exp(), |t| 0.02 * t.exp())
            .with_smoothness(usize::MAX)
            .with_id(FunctionId::Exp02)
    }

    pub fn constant(c: f64) -> Self {
        Self::custom("constant", move |_| c)
            .with_derivatives(|_| 0.0, |_| 0.0)
            .with_smoothness(usize::MAX)
    }

    /// Builtin by id. `n` is the sample count, used only by `ramp_integer`.
    pub fn builtin(id: &FunctionId, n: usize) -> Result<Self> {
        match id {
            FunctionId::Ramp => Ok(Self::ramp()),
            FunctionId::RampInteger => Ok(Self::ramp_integer(n)),
            FunctionId::Sine75 => Ok(Self::sine75()),
            FunctionId::Exp02 => Ok(Self::exp02()),
            FunctionId::Custom(name) => Err(Error::UnknownFunction(name.clone())),
        }
    }

    fn with_id(mut self, id: FunctionId) -> Self {
        self.id = id;
        self
    }

    pub fn id(&self) -> &FunctionId {
        &self.id
    }

    pub fn smoothness(&self) -> usize {
        self.smoothness
    }

    pub fn has_derivatives(&self) -> bool {
        self.derivatives.is_some()
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    /// Derivative of order `q` (0, 1 or 2); `None` when unavailable.
    pub fn derivative(&self, q: usize, t: f64) -> Option<f64> {
        match q {
            0 => Some(self.eval(t)),
            1 | 2 => self.derivatives.as_ref().map(|d| (d[q - 1])(t)),
            _ => None,
        }
    }
}

/// Evaluates `f` at `x_i = 2π i / (n - 1)`, `i = 0..n`; both interval ends are
/// included.
pub fn sample_source(f: &SourceFunction, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::TooFewSamples { min: 2, got: n });
    }
    let step = TAU / (n - 1) as f64;
    (0..n)
        .map(|i| {
            // exact right end
            let x = if i == n - 1 { TAU } else { i as f64 * step };
            let v = f.eval(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteSample { node: i, value: v })
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn ramp_samples() {
        let v = sample_source(&SourceFunction::ramp(), 9).unwrap();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], 1.0);
        assert!((v[1] - (1.0 + TAU / 8.0)).abs() < 1e-15);
        assert!((v[8] - 7.2832).abs() < 1e-4);
    }

    #[test]
    fn constant_and_sine_samples() {
        let v = sample_source(&SourceFunction::constant(2.5), 7).unwrap();
        assert!(v.iter().all(|&x| x == 2.5));
        let v = sample_source(&SourceFunction::sine75(), 3).unwrap();
        assert!(v[0].abs() < 1e-15);
        assert!((v[1] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((v[2] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn ramp_integer_hits_integers() {
        let v = sample_source(&SourceFunction::ramp_integer(9), 9).unwrap();
        for (i, x) in v.iter().enumerate() {
            assert!((x - (i + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn non_finite_names_node() {
        let f = SourceFunction::custom("pole", |t| 1.0 / (t - TAU));
        let err = sample_source(&f, 5).unwrap_err();
        assert!(matches!(err, Error::NonFiniteSample { node: 4, .. }), "{err}");
        assert!(sample_source(&f, 1).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let h = 1e-4;
        for f in [
            SourceFunction::ramp(),
            SourceFunction::ramp_integer(13),
            SourceFunction::sine75(),
            SourceFunction::exp02(),
        ] {
            for _ in 0..10 {
                let t = rng.gen_range(0.1..TAU - 0.1);
                let d1 = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
                let d2 = (f.eval(t + h) - 2.0 * f.eval(t) + f.eval(t - h)) / (h * h);
                let e1 = f.derivative(1, t).unwrap();
                let e2 = f.derivative(2, t).unwrap();
                assert!((d1 - e1).abs() <= 1e-6 * e1.abs().max(1.0), "{} d1", f.id());
                assert!((d2 - e2).abs() <= 1e-6 * e2.abs().max(1.0), "{} d2", f.id());
            }
        }
    }

    #[test]
    fn ids_round_trip() {
        for name in ["ramp", "ramp_integer", "sine75", "exp02"] {
            let id: FunctionId = name.parse().unwrap();
            assert_eq!(id.name(), name);
        }
        assert!("cosine".parse::<FunctionId>().is_err());
    }
}
