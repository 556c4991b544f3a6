//! Sup-norm interpolation error on the data arc, error-reduction tables and
//! curve data.
//!
//! The relative error of a spline built from `N` samples of `f` is
//!
//! ```text
//! e = max |S(t) - f̃(t)| / max |f̃(t)|,   f̃(t) = f(2π t / arc),
//! ```
//!
//! over `dense` equispaced points of the data arc `[0, arc]`, `arc = (N-1) h`.
//! The phantom arc is excluded. When `f̃` vanishes on the whole arc the
//! absolute error is reported instead and flagged.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{place_on_circle, SampleSet};
use crate::output::{fmt_num, sig17};
use crate::phantom::{build_blend, fill_phantom, phantom_blend, DerivativeSource, HermiteBlend, PhantomConfig};
use crate::source::{sample_source, SourceFunction};
use crate::spline::{CardinalBasis, TrigSpline, DEFAULT_TAIL_TOLERANCE};

pub const DEFAULT_DENSE: usize = 2001;
pub const MIN_DENSE: usize = 101;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcError {
    pub value: f64,
    /// `false` when the reference vanishes on the arc and `value` is absolute.
    pub relative: bool,
}

/// Reference values of `f̃` tabulated on the data arc.
#[derive(Clone, Debug)]
pub struct ArcProbe {
    points: Vec<f64>,
    target: Vec<f64>,
    norm: f64,
}

impl ArcProbe {
    pub fn new(f: &SourceFunction, arc_end: f64, dense: usize) -> Result<Self> {
        if dense < MIN_DENSE {
            return Err(Error::DenseTooSmall {
                min: MIN_DENSE,
                got: dense,
            });
        }
        if !(arc_end > 0.0 && arc_end <= TAU) {
            return Err(Error::DegenerateArc {
                left: 0.0,
                right: arc_end,
            });
        }
        let points: Vec<f64> = (0..dense)
            .map(|i| arc_end * i as f64 / (dense - 1) as f64)
            .collect();
        let scale = TAU / arc_end;
        let target: Vec<f64> = points
            .iter()
            .enumerate()
            .map(|(i, &t)| f.eval(if i + 1 == dense { TAU } else { t * scale }))
            .collect();
        if let Some((i, &v)) = target.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteSample { node: i, value: v });
        }
        let norm = target.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        Ok(Self {
            points,
            target,
            norm,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    /// Error of spline values tabulated at [`ArcProbe::points`].
    pub fn measure(&self, values: &[f64]) -> ArcError {
        let worst = values
            .iter()
            .zip(&self.target)
            .fold(0.0_f64, |m, (s, f)| m.max((s - f).abs()));
        if self.norm > 0.0 {
            ArcError {
                value: worst / self.norm,
                relative: true,
            }
        } else {
            ArcError {
                value: worst,
                relative: false,
            }
        }
    }

    pub fn measure_spline(&self, spline: &TrigSpline) -> ArcError {
        let values: Vec<f64> = self.points.iter().map(|&t| spline.eval(t)).collect();
        self.measure(&values)
    }
}

pub fn relative_error(spline: &TrigSpline, f: &SourceFunction, arc_end: f64, dense: usize) -> Result<ArcError> {
    Ok(ArcProbe::new(f, arc_end, dense)?.measure_spline(spline))
}

/// Error over the whole circle against the composite target: `f̃` on the
/// data arc and the straight seam closure from `f(2π)` back to `f(0)`.
pub fn full_circle_error(spline: &TrigSpline, f: &SourceFunction, arc_end: f64, dense: usize) -> Result<ArcError> {
    if dense < MIN_DENSE {
        return Err(Error::DenseTooSmall {
            min: MIN_DENSE,
            got: dense,
        });
    }
    let seam = build_blend(f.eval(TAU), f.eval(0.0), &[], &[], arc_end, TAU)?;
    let (mut worst, mut norm) = (0.0_f64, 0.0_f64);
    for i in 0..dense {
        let t = TAU * i as f64 / (dense - 1) as f64;
        let target = if t <= arc_end { f.eval(t * TAU / arc_end) } else { seam.eval(t) };
        worst = worst.max((spline.eval(t) - target).abs());
        norm = norm.max(target.abs());
    }
    Ok(if norm > 0.0 {
        ArcError {
            value: worst / norm,
            relative: true,
        }
    } else {
        ArcError {
            value: worst,
            relative: false,
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ByMatchOrder {
    #[serde(serialize_with = "sig17")]
    pub p0: f64,
    #[serde(serialize_with = "sig17")]
    pub p1: f64,
    #[serde(serialize_with = "sig17")]
    pub p2: f64,
}

impl ByMatchOrder {
    pub fn from_array(v: [f64; 3]) -> Self {
        Self {
            p0: v[0],
            p1: v[1],
            p2: v[2],
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.p0, self.p1, self.p2]
    }
}

/// One row of an error table: baseline without phantom nodes and the three
/// phantom variants for one `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub function: String,
    #[serde(rename = "N")]
    pub original_count: usize,
    pub k: usize,
    pub r: usize,
    /// Same as `baseline_arc`; the value the factors divide.
    #[serde(serialize_with = "sig17")]
    pub baseline: f64,
    #[serde(serialize_with = "sig17")]
    pub baseline_arc: f64,
    #[serde(serialize_with = "sig17")]
    pub baseline_full: f64,
    pub variants: ByMatchOrder,
    pub factors: ByMatchOrder,
    pub relative: bool,
}

impl ErrorReport {
    pub fn new(
        function: &str,
        original_count: usize,
        k: usize,
        r: usize,
        baseline: ArcError,
        baseline_full: f64,
        variants: [ArcError; 3],
    ) -> Self {
        let errors = variants.map(|e| e.value);
        let factors = errors.map(|e| baseline.value / e);
        Self {
            function: function.to_string(),
            original_count,
            k,
            r,
            baseline: baseline.value,
            baseline_arc: baseline.value,
            baseline_full,
            variants: ByMatchOrder::from_array(errors),
            factors: ByMatchOrder::from_array(factors),
            relative: baseline.relative && variants.iter().all(|e| e.relative),
        }
    }

    pub fn variant_errors(&self) -> [f64; 3] {
        self.variants.to_array()
    }

    pub fn reduction_factors(&self) -> [f64; 3] {
        self.factors.to_array()
    }
}

/// Sample set for `N` samples of `f` with `k` phantom pairs filled per
/// `config`.
pub fn phantom_samples(f: &SourceFunction, n: usize, config: &PhantomConfig) -> Result<SampleSet> {
    let y = sample_source(f, n)?;
    let placed = place_on_circle(&y, config.pairs)?;
    fill_phantom(placed, config, Some(f))
}

/// Baseline error (no phantom nodes) on the data arc and on the full circle.
pub fn baseline_errors(f: &SourceFunction, n: usize, r: usize, dense: usize) -> Result<(ArcError, f64)> {
    let samples = place_on_circle(&sample_source(f, n)?, 0)?;
    let spline = TrigSpline::build(&samples, r, DEFAULT_TAIL_TOLERANCE)?;
    let arc = samples.data_arc_end();
    let on_arc = relative_error(&spline, f, arc, dense)?;
    let full = full_circle_error(&spline, f, arc, dense)?;
    Ok((on_arc, full.value))
}

/// Error reports for each `k`, with `p = 0, 1, 2` and phantom values from
/// one-sided divided differences.
pub fn run_table(f: &SourceFunction, n: usize, k_values: &[usize], r: usize, dense: usize) -> Result<Vec<ErrorReport>> {
    run_table_with(f, n, k_values, r, dense, &DerivativeSource::DividedDifference)
}

pub fn run_table_with(
    f: &SourceFunction,
    n: usize,
    k_values: &[usize],
    r: usize,
    dense: usize,
    source: &DerivativeSource,
) -> Result<Vec<ErrorReport>> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidNodeCount(n));
    }
    let (baseline, baseline_full) = baseline_errors(f, n, r, dense)?;
    let mut reports = Vec::with_capacity(k_values.len());
    for &k in k_values {
        let first = phantom_samples(f, n, &PhantomConfig::new(k, 0, source.clone()))?;
        let probe = ArcProbe::new(f, first.data_arc_end(), dense)?;
        let basis = CardinalBasis::new(first.grid(), r, DEFAULT_TAIL_TOLERANCE, probe.points().to_vec())?;
        let mut variants = [ArcError {
            value: 0.0,
            relative: true,
        }; 3];
        for (p, slot) in variants.iter_mut().enumerate() {
            let samples = phantom_samples(f, n, &PhantomConfig::new(k, p, source.clone()))?;
            *slot = probe.measure(&basis.apply(samples.values()));
        }
        reports.push(ErrorReport::new(f.id().name(), n, k, r, baseline, baseline_full, variants));
    }
    Ok(reports)
}

const TABLE_HEADERS: [&str; 6] = [
    "Number of interpolation grid nodes",
    "Relative interpolation error without phantom nodes",
    "Number of added phantom nodes",
    "Error reduction factor, linear phantom function",
    "Error reduction factor, phantom function with first derivative",
    "Error reduction factor, phantom function with two derivatives",
];

pub fn table_markdown(reports: &[ErrorReport]) -> String {
    let mut out = String::new();
    if let Some(first) = reports.first() {
        let _ = writeln!(out, "Function `{}`, spline order {}\n", first.function, first.r);
    }
    let _ = writeln!(out, "| {} |", TABLE_HEADERS.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(TABLE_HEADERS.len()));
    for r in reports {
        let f = r.reduction_factors();
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            r.original_count,
            fmt_num(r.baseline),
            2 * r.k,
            fmt_num(f[0]),
            fmt_num(f[1]),
            fmt_num(f[2])
        );
    }
    out
}

pub fn table_csv(reports: &[ErrorReport]) -> String {
    let mut out = String::from("function,N,phantom_nodes,baseline_arc,baseline_full,error_p0,error_p1,error_p2,factor_p0,factor_p1,factor_p2\n");
    for r in reports {
        let e = r.variant_errors();
        let f = r.reduction_factors();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.function,
            r.original_count,
            2 * r.k,
            fmt_num(r.baseline_arc),
            fmt_num(r.baseline_full),
            fmt_num(e[0]),
            fmt_num(e[1]),
            fmt_num(e[2]),
            fmt_num(f[0]),
            fmt_num(f[1]),
            fmt_num(f[2])
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Data,
    Phantom,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveRow {
    pub t: f64,
    /// Position in the original variable; `None` on the phantom arc.
    pub x: Option<f64>,
    pub spline: f64,
    pub target: f64,
    pub abs_error: f64,
    pub region: Region,
}

/// Spline and reference tabulated around the circle. The data arc gets
/// `dense` equispaced points (so rows line up in `x` across different `k`);
/// the phantom arc continues with the same spacing up to `2π`.
#[derive(Clone, Debug)]
pub struct Curve {
    pub rows: Vec<CurveRow>,
}

impl Curve {
    /// Rows in the data region.
    pub fn data(&self) -> impl Iterator<Item = &CurveRow> {
        self.rows.iter().filter(|r| r.region == Region::Data)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,spline,target,abs_error,region\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                fmt_num(r.t),
                r.x.map(fmt_num).unwrap_or_default(),
                fmt_num(r.spline),
                fmt_num(r.target),
                fmt_num(r.abs_error),
                match r.region {
                    Region::Data => "data",
                    Region::Phantom => "phantom",
                }
            );
        }
        out
    }
}

/// Tabulates `S`, `f̃` and `|S - f̃|`. On the phantom arc the target is `seam`
/// when given (the phantom function), else the straight closure.
pub fn emit_curve(
    spline: &TrigSpline,
    f: &SourceFunction,
    arc_end: f64,
    seam: Option<&HermiteBlend>,
    dense: usize,
) -> Result<Curve> {
    let probe = ArcProbe::new(f, arc_end, dense)?;
    let linear;
    let seam = match seam {
        Some(s) => s,
        None => {
            linear = build_blend(f.eval(TAU), f.eval(0.0), &[], &[], arc_end, TAU)?;
            &linear
        }
    };
    let mut rows = Vec::with_capacity(dense + dense / 4);
    for (&t, &target) in probe.points().iter().zip(probe.target()) {
        let s = spline.eval(t);
        rows.push(CurveRow {
            t,
            x: Some(t * TAU / arc_end),
            spline: s,
            target,
            abs_error: (s - target).abs(),
            region: Region::Data,
        });
    }
    let spacing = arc_end / (dense - 1) as f64;
    let mut i = 1;
    loop {
        let t = arc_end + i as f64 * spacing;
        if t >= TAU {
            break;
        }
        let s = spline.eval(t);
        let target = seam.eval(t);
        rows.push(CurveRow {
            t,
            x: None,
            spline: s,
            target,
            abs_error: (s - target).abs(),
            region: Region::Phantom,
        });
        i += 1;
    }
    Ok(Curve { rows })
}

/// Curve for `N` samples of `f` with the given phantom configuration
/// (`k = 0` for no phantom nodes).
pub fn curve_for(f: &SourceFunction, n: usize, config: &PhantomConfig, r: usize, dense: usize) -> Result<Curve> {
    let y = sample_source(f, n)?;
    let placed = place_on_circle(&y, config.pairs)?;
    let blend = match (&config.source, config.pairs) {
        (DerivativeSource::ExplicitValues(_), _) | (_, 0) => None,
        _ => Some(phantom_blend(&placed, config.match_order, &config.source, Some(f))?),
    };
    let arc = placed.data_arc_end();
    let samples = fill_phantom(placed, config, Some(f))?;
    let spline = TrigSpline::build(&samples, r, DEFAULT_TAIL_TOLERANCE)?;
    emit_curve(&spline, f, arc, blend.as_ref(), dense)
}
