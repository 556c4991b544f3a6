//! Phantom nodes: closing the seam of a non-periodic sample sequence.
//!
//! The data occupy the arc `[0, (N - 1) h]`. On the remaining arc
//! `[(N - 1) h, 2π]` a two-point Hermite polynomial `λ` joins the last sample
//! (value and derivatives at the right end of the data) to the first sample
//! (value and derivatives at the left end, reached again at `2π`). The `2k`
//! phantom slots receive `λ(τ_i)`, which removes the jump that periodic
//! continuation would otherwise introduce.
//!
//! All derivatives are taken in the circle variable `t`. Exact derivatives of
//! a [`SourceFunction`] defined on `[0, 2π]` are scaled by `(2π / arc)^q`, the
//! chain rule for the map from the arc back to the interval.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::grid::SampleSet;
use crate::source::SourceFunction;

/// Highest number of matched derivatives.
pub const MAX_MATCH_ORDER: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Start of the data, `t = 0`.
    Left,
    /// Last data node.
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DerivativeSource {
    /// Derivative evaluators of the reference function.
    Exact,
    /// Second-order one-sided finite differences on the circle grid.
    DividedDifference,
    /// Phantom values supplied directly; no blend is built.
    ExplicitValues(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhantomConfig {
    pub pairs: usize,
    pub match_order: usize,
    pub source: DerivativeSource,
}

impl PhantomConfig {
    pub fn new(pairs: usize, match_order: usize, source: DerivativeSource) -> Self {
        Self {
            pairs,
            match_order,
            source,
        }
    }

    pub fn divided(pairs: usize, match_order: usize) -> Self {
        Self::new(pairs, match_order, DerivativeSource::DividedDifference)
    }

    pub fn explicit(values: Vec<f64>) -> Self {
        Self::new(values.len() / 2, 0, DerivativeSource::ExplicitValues(values))
    }
}

/// Estimates of the derivatives of orders `1..=p` at one end of the data.
///
/// `step` is the circle-grid step. With [`DerivativeSource::Exact`] the
/// reference function supplies the values, scaled to the circle variable.
pub fn boundary_derivatives(
    original: &[f64],
    step: f64,
    match_order: usize,
    side: Side,
    source: &DerivativeSource,
    f: Option<&SourceFunction>,
) -> Result<Vec<f64>> {
    if match_order > MAX_MATCH_ORDER {
        return Err(Error::MatchOrder(match_order));
    }
    let n = original.len();
    match source {
        DerivativeSource::DividedDifference => {
            if match_order > 0 && n < match_order + 2 {
                return Err(Error::TooFewSamples {
                    min: match_order + 2,
                    got: n,
                });
            }
            let y = |i: usize| match side {
                Side::Left => original[i],
                Side::Right => original[n - 1 - i],
            };
            // backward differences flip the sign of odd orders
            let sign = match side {
                Side::Left => 1.0,
                Side::Right => -1.0,
            };
            let mut out = Vec::with_capacity(match_order);
            if match_order >= 1 {
                out.push(sign * (-3.0 * y(0) + 4.0 * y(1) - y(2)) / (2.0 * step));
            }
            if match_order >= 2 {
                out.push((2.0 * y(0) - 5.0 * y(1) + 4.0 * y(2) - y(3)) / (step * step));
            }
            Ok(out)
        }
        DerivativeSource::Exact => {
            let f = f.ok_or(Error::MissingSource("exact derivatives"))?;
            if n < 2 {
                return Err(Error::TooFewSamples { min: 2, got: n });
            }
            let scale = TAU / ((n - 1) as f64 * step);
            let x = match side {
                Side::Left => 0.0,
                Side::Right => TAU,
            };
            (1..=match_order)
                .map(|q| {
                    f.derivative(q, x)
                        .map(|d| d * scale.powi(q as i32))
                        .ok_or_else(|| Error::MissingDerivatives(f.id().to_string()))
                })
                .collect()
        }
        DerivativeSource::ExplicitValues(_) => Err(Error::Config(
            "explicit phantom values carry no derivative estimates".into(),
        )),
    }
}

/// Two-point Hermite polynomial on `[left_end, right_end]`, stored as monomial
/// coefficients in `s = t - left_end`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteBlend {
    left_end: f64,
    right_end: f64,
    match_order: usize,
    coeffs: Vec<f64>,
}

impl HermiteBlend {
    pub fn left_end(&self) -> f64 {
        self.left_end
    }

    pub fn right_end(&self) -> f64 {
        self.right_end
    }

    pub fn match_order(&self) -> usize {
        self.match_order
    }

    /// `2p + 2` monomial coefficients in `s = t - left_end`, lowest first.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.derivative(t, 0)
    }

    pub fn derivative(&self, t: f64, q: usize) -> f64 {
        let s = t - self.left_end;
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().skip(q).rev() {
            acc = acc * s + c * falling(k, q);
        }
        acc
    }
}

/// `k (k-1) ... (k-q+1)`
fn falling(k: usize, q: usize) -> f64 {
    (0..q).map(|i| (k - i) as f64).product()
}

/// Builds `λ` with `λ(left) = end_value`, `λ(right) = start_value` and the
/// given derivatives of orders `1..=p` at each end.
///
/// Newton form on the doubled nodes `0^(p+1), w^(p+1)` (confluent divided
/// differences), expanded to monomials in `s`.
pub fn build_blend(
    end_value: f64,
    start_value: f64,
    end_derivs: &[f64],
    start_derivs: &[f64],
    left_end: f64,
    right_end: f64,
) -> Result<HermiteBlend> {
    if end_derivs.len() != start_derivs.len() {
        return Err(Error::DerivativeLengths {
            left: end_derivs.len(),
            right: start_derivs.len(),
        });
    }
    let width = right_end - left_end;
    if width.is_nan() || width < 1e-12 {
        return Err(Error::DegenerateArc {
            left: left_end,
            right: right_end,
        });
    }
    let p = end_derivs.len();
    let size = 2 * p + 2;
    let z: Vec<f64> = (0..size).map(|i| if i <= p { 0.0 } else { width }).collect();
    // derivative q at each node, q = 0..=p
    let data = |i: usize, q: usize| -> f64 {
        let (v, d) = if i <= p {
            (end_value, end_derivs)
        } else {
            (start_value, start_derivs)
        };
        if q == 0 {
            v
        } else {
            d[q - 1]
        }
    };
    // table[i] holds f[z_i, ..., z_{i+level}] after each level
    let mut table: Vec<f64> = (0..size).map(|i| data(i, 0)).collect();
    let mut newton = vec![table[0]];
    let mut factorial = 1.0;
    for level in 1..size {
        factorial *= level as f64;
        for i in 0..size - level {
            let (lo, hi) = (z[i], z[i + level]);
            table[i] = if hi == lo {
                data(i, level) / factorial
            } else {
                (table[i + 1] - table[i]) / (hi - lo)
            };
        }
        newton.push(table[0]);
    }
    // Σ c_k Π_{l<k} (s - z_l), Horner from the top
    let mut coeffs = vec![0.0; size];
    for k in (0..size).rev() {
        // coeffs <- coeffs * (s - z_k) + c_k
        let root = z[k];
        let mut next = vec![0.0; size];
        for d in 0..size {
            if coeffs[d] == 0.0 {
                continue;
            }
            if d + 1 < size {
                next[d + 1] += coeffs[d];
            }
            next[d] -= root * coeffs[d];
        }
        next[0] += newton[k];
        coeffs = next;
    }
    Ok(HermiteBlend {
        left_end,
        right_end,
        match_order: p,
        coeffs,
    })
}

/// Builds `λ` for a sample set with unfilled phantom slots.
pub fn phantom_blend(
    samples: &SampleSet,
    match_order: usize,
    source: &DerivativeSource,
    f: Option<&SourceFunction>,
) -> Result<HermiteBlend> {
    let original = samples.original();
    let step = samples.grid().step();
    let end = boundary_derivatives(original, step, match_order, Side::Right, source, f)?;
    let start = boundary_derivatives(original, step, match_order, Side::Left, source, f)?;
    build_blend(
        original[original.len() - 1],
        original[0],
        &end,
        &start,
        samples.data_arc_end(),
        TAU,
    )
}

/// Fills the `2k` phantom slots from `λ`, or copies explicit values verbatim.
pub fn fill_phantom(
    samples: SampleSet,
    config: &PhantomConfig,
    f: Option<&SourceFunction>,
) -> Result<SampleSet> {
    let slots = samples.grid().node_count() - samples.original_count();
    if slots != 2 * config.pairs {
        return Err(Error::PhantomCountMismatch {
            expected: slots,
            got: 2 * config.pairs,
        });
    }
    if slots == 0 {
        return Ok(samples);
    }
    if let DerivativeSource::ExplicitValues(values) = &config.source {
        return samples.with_phantom(values);
    }
    let blend = phantom_blend(&samples, config.match_order, &config.source, f)?;
    let grid = *samples.grid();
    let values: Vec<f64> = (samples.original_count()..grid.node_count())
        .map(|i| blend.eval(grid.node(i)))
        .collect();
    samples.with_phantom(&values)
}
