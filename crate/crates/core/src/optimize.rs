//! Lattice coordinate search over phantom values.
//!
//! Starting from the Hermite phantom values, each coordinate in turn walks
//! in steps of `resolution` while the relative arc error keeps dropping; a
//! sweep over all coordinates repeats until none of them moves. Ties keep the
//! incumbent, so the walk terminates and is deterministic.
//!
//! Resolutions finer than [`SearchSpec::coarsest`] are reached by halving:
//! the search runs on the `coarsest`-aligned lattice `res · 2^L` first and
//! refines down to `res`, each level starting from the previous optimum. A
//! halved resolution therefore extends the schedule by one level and can only
//! lower the final error.
//!
//! The objective needs the reference function on the dense arc grid, so this
//! is an analysis tool: it cannot run on raw samples alone.

use serde::Serialize;

use crate::analysis::{baseline_errors, phantom_samples, ArcProbe};
use crate::error::{Error, Result};
use crate::grid::place_on_circle;
use crate::output::{sig17, sig17_vec};
use crate::phantom::PhantomConfig;
use crate::source::{sample_source, SourceFunction};
use crate::spline::{CardinalBasis, DEFAULT_TAIL_TOLERANCE};

pub const DEFAULT_RESOLUTION: f64 = 0.01;
pub const DEFAULT_MAX_SWEEPS: usize = 200;
/// Default box half-width, in multiples of the data range.
pub const DEFAULT_BOX_RANGES: f64 = 5.0;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpec {
    pub resolution: f64,
    pub initial: Vec<f64>,
    /// Per-coordinate half-width of the search box around `initial`.
    pub box_halfwidth: Vec<f64>,
    pub max_sweeps: usize,
    /// Coarsest lattice of the halving schedule.
    pub coarsest: f64,
}

impl SearchSpec {
    /// Defaults: resolution 0.01, box half-width 5 × `data_range` (5 when the
    /// range is zero), 200 sweeps.
    pub fn new(initial: Vec<f64>, data_range: f64) -> Self {
        let half = if data_range > 0.0 {
            DEFAULT_BOX_RANGES * data_range
        } else {
            DEFAULT_BOX_RANGES
        };
        let d = initial.len();
        Self {
            resolution: DEFAULT_RESOLUTION,
            initial,
            box_halfwidth: vec![half; d],
            max_sweeps: DEFAULT_MAX_SWEEPS,
            coarsest: DEFAULT_RESOLUTION,
        }
    }

    pub fn with_resolution(mut self, resolution: f64) -> Self {
        self.resolution = resolution;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.resolution > 0.0 && self.resolution.is_finite()) {
            return Err(Error::InvalidSearch(format!("resolution {} must be positive", self.resolution)));
        }
        if !(self.coarsest > 0.0 && self.coarsest.is_finite()) {
            return Err(Error::InvalidSearch(format!("coarsest lattice {} must be positive", self.coarsest)));
        }
        if self.initial.is_empty() {
            return Err(Error::InvalidSearch("no coordinates to search".into()));
        }
        if self.box_halfwidth.len() != self.initial.len() {
            return Err(Error::InvalidSearch(format!(
                "{} box half-widths for {} coordinates",
                self.box_halfwidth.len(),
                self.initial.len()
            )));
        }
        if self.box_halfwidth.iter().any(|w| w.is_nan() || *w < 0.0) {
            return Err(Error::InvalidSearch("box half-widths must be non-negative".into()));
        }
        Ok(())
    }

    /// Lattice spacings visited, coarsest first, ending at `resolution`.
    pub fn schedule(&self) -> Vec<f64> {
        let mut levels = vec![self.resolution];
        let limit = self.coarsest * (1.0 + 1e-9);
        while levels.last().unwrap() * 2.0 <= limit {
            levels.push(levels.last().unwrap() * 2.0);
        }
        levels.reverse();
        levels
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    #[serde(serialize_with = "sig17_vec")]
    pub best_values: Vec<f64>,
    #[serde(serialize_with = "sig17")]
    pub best_error: f64,
    pub evaluations: usize,
}

/// Cyclic coordinate descent on the resolution lattice of `spec`.
pub fn coordinate_search<F>(mut objective: F, spec: &SearchSpec) -> Result<SearchOutcome>
where
    F: FnMut(&[f64]) -> f64,
{
    spec.validate()?;
    let mut best = spec.initial.clone();
    let mut best_error = objective(&best);
    let mut evaluations = 1;
    if !best_error.is_finite() {
        return Err(Error::NonFiniteObjective(best_error));
    }
    let inside = |c: usize, x: f64| (x - spec.initial[c]).abs() <= spec.box_halfwidth[c] * (1.0 + 1e-12);

    for res in spec.schedule() {
        let origin = best.clone();
        let mut steps = vec![0i64; origin.len()];
        let at = |steps: &[i64], c: usize| origin[c] + steps[c] as f64 * res;
        for _ in 0..spec.max_sweeps {
            let mut improved = false;
            for c in 0..origin.len() {
                for dir in [1i64, -1] {
                    let mut moved = false;
                    loop {
                        steps[c] += dir;
                        let x = at(&steps, c);
                        if !inside(c, x) {
                            steps[c] -= dir;
                            break;
                        }
                        let mut cand = best.clone();
                        cand[c] = x;
                        let e = objective(&cand);
                        evaluations += 1;
                        if e < best_error {
                            best = cand;
                            best_error = e;
                            moved = true;
                        } else {
                            steps[c] -= dir;
                            break;
                        }
                    }
                    if moved {
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
    Ok(SearchOutcome {
        best_values: best,
        best_error,
        evaluations,
    })
}

/// Exhaustive scan of the lattice `center + i·resolution`, `|i·resolution| <=
/// halfwidth`, in every coordinate. Used as a cross-check for small `k`.
pub fn grid_search<F>(mut objective: F, center: &[f64], halfwidth: f64, resolution: f64) -> Result<SearchOutcome>
where
    F: FnMut(&[f64]) -> f64,
{
    if resolution.is_nan() || resolution <= 0.0 || halfwidth.is_nan() || halfwidth < 0.0 {
        return Err(Error::InvalidSearch("grid search needs positive resolution".into()));
    }
    let reach = (halfwidth / resolution + 1e-9).floor() as i64;
    let d = center.len();
    let mut idx = vec![-reach; d];
    let mut best = (Vec::new(), f64::INFINITY);
    let mut evaluations = 0;
    loop {
        let x: Vec<f64> = center.iter().zip(&idx).map(|(c, &i)| c + i as f64 * resolution).collect();
        let e = objective(&x);
        evaluations += 1;
        if e < best.1 {
            best = (x, e);
        }
        // odometer increment
        let mut c = 0;
        loop {
            if c == d {
                return Ok(SearchOutcome {
                    best_values: best.0,
                    best_error: best.1,
                    evaluations,
                });
            }
            idx[c] += 1;
            if idx[c] <= reach {
                break;
            }
            idx[c] = -reach;
            c += 1;
        }
    }
}

/// Relative arc error as a function of the `2k` phantom values, for fixed
/// reference function, sample count, `k` and order.
#[derive(Clone, Debug)]
pub struct PhantomObjective {
    source: SourceFunction,
    original: Vec<f64>,
    pairs: usize,
    order: usize,
    dense: usize,
    probe: ArcProbe,
    basis: CardinalBasis,
}

impl PhantomObjective {
    pub fn new(source: &SourceFunction, n: usize, pairs: usize, order: usize, dense: usize) -> Result<Self> {
        if pairs == 0 {
            return Err(Error::InvalidSearch("phantom search needs k >= 1".into()));
        }
        let original = sample_source(source, n)?;
        let placed = place_on_circle(&original, pairs)?;
        let probe = ArcProbe::new(source, placed.data_arc_end(), dense)?;
        let basis = CardinalBasis::new(placed.grid(), order, DEFAULT_TAIL_TOLERANCE, probe.points().to_vec())?;
        Ok(Self {
            source: source.clone(),
            original,
            pairs,
            order,
            dense,
            probe,
            basis,
        })
    }

    pub fn dimension(&self) -> usize {
        2 * self.pairs
    }

    pub fn data_range(&self) -> f64 {
        let (lo, hi) = self
            .original
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        hi - lo
    }

    pub fn eval(&self, phantom: &[f64]) -> f64 {
        if phantom.len() != self.dimension() {
            return f64::NAN;
        }
        let mut values = Vec::with_capacity(self.original.len() + phantom.len());
        values.extend_from_slice(&self.original);
        values.extend_from_slice(phantom);
        self.probe.measure(&self.basis.apply(&values)).value
    }

    /// Phantom values from the Hermite blend with `p` divided-difference
    /// derivatives.
    pub fn hermite_values(&self, match_order: usize) -> Result<Vec<f64>> {
        let s = phantom_samples(
            &self.source,
            self.original.len(),
            &PhantomConfig::divided(self.pairs, match_order),
        )?;
        Ok(s.phantom().to_vec())
    }

    /// Arc error of the plain spline, no phantom nodes.
    pub fn baseline(&self) -> Result<f64> {
        Ok(baseline_errors(&self.source, self.original.len(), self.order, self.dense)?.0.value)
    }

    /// Default search: Hermite `p = 2` start, default box and resolution.
    pub fn default_spec(&self) -> Result<SearchSpec> {
        Ok(SearchSpec::new(self.hermite_values(2)?, self.data_range()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizeReport {
    #[serde(serialize_with = "sig17_vec")]
    pub best_values: Vec<f64>,
    #[serde(serialize_with = "sig17")]
    pub best_error: f64,
    #[serde(serialize_with = "sig17")]
    pub baseline_error: f64,
    #[serde(serialize_with = "sig17")]
    pub reduction_factor: f64,
    pub evaluations: usize,
}

pub fn optimize_phantom(objective: &PhantomObjective, spec: &SearchSpec) -> Result<OptimizeReport> {
    if spec.initial.len() != objective.dimension() {
        return Err(Error::PhantomCountMismatch {
            expected: objective.dimension(),
            got: spec.initial.len(),
        });
    }
    let outcome = coordinate_search(|x| objective.eval(x), spec)?;
    let baseline = objective.baseline()?;
    Ok(OptimizeReport {
        reduction_factor: baseline / outcome.best_error,
        best_values: outcome.best_values,
        best_error: outcome.best_error,
        baseline_error: baseline,
        evaluations: outcome.evaluations,
    })
}
