//! Periodic trigonometric interpolation splines of order `r`.
//!
//! Samples `y_i` on an odd `M`-node [`CircleGrid`] determine the discrete
//! Fourier coefficients `a_j`, `b_j`, `j <= n = (M - 1) / 2`. The spline of
//! order `r` keeps every coefficient pair but spreads it over all alias
//! harmonics `ν ≡ ±j (mod M)` with weights `|ν|^-(r+1)`:
//!
//! ```text
//! S_r(t) = a_0/2 + Σ_j 1/H_j Σ_m [ a_j (cos(P t)/P^s + cos(Q t)/Q^s)
//!                               + b_j (sin(P t)/P^s - sin(Q t)/Q^s) ]
//! P = mM + j,  Q = (m+1)M - j,  s = r + 1,
//! H_j = Σ_m (P^-s + Q^-s).
//! ```
//!
//! At a node `τ_i` every alias reduces to `cos(j τ_i)` / `±sin(j τ_i)`, so the
//! normalisation by `H_j` makes `S_r(τ_i) = y_i` for any truncation depth. The
//! Fourier coefficients decay like `|ν|^-(r+1)`, giving `C^(r-1)` smoothness;
//! `r = 1` is the periodic piecewise-linear interpolant and `r = 3` the
//! periodic cubic spline. As `r → ∞` the spline tends to the interpolating
//! trigonometric polynomial.
//!
//! The infinite alias sums are truncated at depth `m_max`, the smallest depth
//! for which the tail bound `Σ_{m > m_max} 2 (mM)^-s` falls below
//! `tail_tolerance · H_j` for all `j`. Internally the weights are kept relative
//! to `j^-s` so that large orders do not underflow.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::grid::{CircleGrid, SampleSet};

pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-10;

/// Deepest alias truncation accepted by [`TrigSpline::build`].
pub const MAX_TRUNCATION: usize = 2_000_000;

/// Discrete Fourier coefficients of `M` samples, `M` odd.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoefficients {
    a: Vec<f64>,
    b: Vec<f64>,
    node_count: usize,
}

impl FourierCoefficients {
    /// `a_0 ..= a_n`.
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// `b_1 ..= b_n`; `b()[j - 1]` is `b_j`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn max_harmonic(&self) -> usize {
        self.b.len()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// The interpolating trigonometric polynomial
    /// `T(t) = a_0/2 + Σ_j (a_j cos jt + b_j sin jt)`.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.rem_euclid(TAU);
        let mut acc = 0.5 * self.a[0];
        for j in 1..=self.max_harmonic() {
            let (s, c) = (j as f64 * t).sin_cos();
            acc += self.a[j] * c + self.b[j - 1] * s;
        }
        acc
    }
}

/// Direct `O(M²)` discrete Fourier analysis of a complete sample set.
pub fn dft_odd(samples: &SampleSet) -> Result<FourierCoefficients> {
    if let Some(node) = samples.first_unfilled() {
        return Err(Error::UnfilledSlot { node });
    }
    let grid = samples.grid();
    let m = grid.node_count();
    let n = grid.max_harmonic();
    let y = samples.values();
    // cos/sin of 2π q / M for every residue q
    let table: Vec<(f64, f64)> = (0..m).map(|q| grid.node(q).sin_cos()).collect();
    let scale = 2.0 / m as f64;
    let mut a = vec![0.0; n + 1];
    let mut b = vec![0.0; n];
    for j in 0..=n {
        let (mut ca, mut cb) = (0.0, 0.0);
        for (i, &yi) in y.iter().enumerate() {
            let (s, c) = table[(i * j) % m];
            ca += yi * c;
            cb += yi * s;
        }
        a[j] = scale * ca;
        if j > 0 {
            b[j - 1] = scale * cb;
        }
    }
    Ok(FourierCoefficients {
        a,
        b,
        node_count: m,
    })
}

/// Alias normaliser `H_j = Σ_{m=0}^{m_max} [(mM + j)^-(r+1) + ((m+1)M - j)^-(r+1)]`.
pub fn alias_factor(j: usize, node_count: usize, order: usize, m_max: usize) -> Result<f64> {
    let n = node_count.saturating_sub(1) / 2;
    if j == 0 || j > n {
        return Err(Error::HarmonicOutOfRange { index: j, max: n });
    }
    if order == 0 {
        return Err(Error::InvalidOrder(order));
    }
    let s = -(order as f64 + 1.0);
    let mm = node_count as f64;
    let jf = j as f64;
    // smallest terms first
    let mut acc = 0.0;
    for m in (0..=m_max).rev() {
        let m = m as f64;
        acc += (m * mm + jf).powf(s) + ((m + 1.0) * mm - jf).powf(s);
    }
    Ok(acc)
}

/// `H_j / j^-s`: the alias sum relative to its leading term.
fn relative_alias_factor(j: usize, node_count: usize, exponent: i32, m_max: usize) -> f64 {
    let jf = j as f64;
    let mm = node_count as f64;
    let mut acc = 0.0;
    for m in (0..=m_max).rev() {
        let m = m as f64;
        acc += (jf / (m * mm + jf)).powi(exponent) + (jf / ((m + 1.0) * mm - jf)).powi(exponent);
    }
    acc
}

/// Upper bound on `Σ_{m > depth} m^-s` (integral test; `ζ(s)` bound at depth 0).
fn zeta_tail_bound(depth: usize, exponent: i32) -> f64 {
    let s = exponent as f64;
    if depth == 0 {
        1.0 + 1.0 / (s - 1.0)
    } else {
        (depth as f64).powf(1.0 - s) / (s - 1.0)
    }
}

/// Smallest depth whose alias tail bound `Σ_{m>depth} 2 (mM)^-s` is below
/// `tolerance · H_j` for every `j`. Returns the real-valued requirement on
/// failure so the caller can report it.
fn truncation_depth(
    node_count: usize,
    order: usize,
    tolerance: f64,
) -> std::result::Result<usize, f64> {
    let exponent = order as i32 + 1;
    let s = exponent as f64;
    let n = (node_count - 1) / 2;
    let mm = node_count as f64;
    // tail(depth) < tolerance * H_j  <=>  zeta_tail(depth) < tolerance * H_j M^s / 2
    // H_j >= j^-s (1 + (j / (M - j))^s), and the worst case is the largest j.
    let target = (1..=n)
        .map(|j| {
            let jf = j as f64;
            let rel = 1.0 + (jf / (mm - jf)).powf(s);
            0.5 * tolerance * rel * (mm / jf).powf(s)
        })
        .fold(f64::INFINITY, f64::min);
    if zeta_tail_bound(0, exponent) < target {
        return Ok(0);
    }
    let estimate = (1.0 / ((s - 1.0) * target)).powf(1.0 / (s - 1.0));
    if !estimate.is_finite() || estimate > MAX_TRUNCATION as f64 {
        return Err(estimate);
    }
    let mut depth = (estimate.ceil() as usize).max(1);
    while zeta_tail_bound(depth, exponent) >= target {
        depth += 1;
    }
    while depth > 1 && zeta_tail_bound(depth - 1, exponent) < target {
        depth -= 1;
    }
    Ok(depth)
}

/// Alias kernels of one grid and order. With `P = mM + j`, `Q = (m+1)M - j`,
///
/// ```text
/// C_j(t) = 1/H_j Σ_m (cos(P t)/P^s + cos(Q t)/Q^s)
/// S_j(t) = 1/H_j Σ_m (sin(P t)/P^s - sin(Q t)/Q^s)
/// ```
///
/// and any spline on the grid is `a_0/2 + Σ_j (a_j C_j + b_j S_j)`.
#[derive(Clone, Debug)]
pub struct AliasKernels {
    grid: CircleGrid,
    order: usize,
    depth: usize,
    tail_tolerance: f64,
    /// `H_j / j^-s`
    relative_factors: Vec<f64>,
    /// `(j/P)^s, (j/Q)^s` for every `j` and level, when small enough to keep.
    weights: Option<Vec<(f64, f64)>>,
}

/// Largest weight table kept in memory, in entries.
const WEIGHT_TABLE_LIMIT: usize = 1 << 20;

impl AliasKernels {
    pub fn new(grid: CircleGrid, order: usize, tail_tolerance: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(order));
        }
        if !(tail_tolerance > 0.0 && tail_tolerance.is_finite()) {
            return Err(Error::InvalidTolerance(tail_tolerance));
        }
        let m = grid.node_count();
        let depth = truncation_depth(m, order, tail_tolerance).map_err(|required| {
            Error::TruncationTooDeep {
                order,
                tolerance: tail_tolerance,
                required,
                limit: MAX_TRUNCATION,
            }
        })?;
        let exponent = order as i32 + 1;
        let n = grid.max_harmonic();
        let relative_factors = (1..=n)
            .map(|j| relative_alias_factor(j, m, exponent, depth))
            .collect();
        let weights = (n * (depth + 1) <= WEIGHT_TABLE_LIMIT).then(|| {
            let mf = m as f64;
            (1..=n)
                .flat_map(|j| {
                    let jf = j as f64;
                    (0..=depth).map(move |level| {
                        let l = level as f64;
                        (
                            (jf / (l * mf + jf)).powi(exponent),
                            (jf / ((l + 1.0) * mf - jf)).powi(exponent),
                        )
                    })
                })
                .collect()
        });
        Ok(Self {
            grid,
            order,
            depth,
            tail_tolerance,
            relative_factors,
            weights,
        })
    }

    pub fn grid(&self) -> &CircleGrid {
        &self.grid
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn truncation_depth(&self) -> usize {
        self.depth
    }

    /// Writes `(C_j^(q)(t), S_j^(q)(t))` into `out[j - 1]` for `j = 1..=n`.
    pub fn eval_into(&self, t: f64, q: usize, out: &mut [(f64, f64)]) {
        let t = t.rem_euclid(TAU);
        let m = self.grid.node_count();
        let mf = m as f64;
        let exponent = self.order as i32 + 1;
        let q_exp = q as i32;
        // d^q/dt^q e^{iνt} = ν^q i^q e^{iνt}
        let phase = match q % 4 {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
        let rot = unit(mf * t);
        for (idx, slot) in out.iter_mut().enumerate().take(self.grid.max_harmonic()) {
            let j = idx + 1;
            let jf = j as f64;
            let mut zp = cmul(phase, unit(jf * t));
            let mut zq = cmul(phase, unit((mf - jf) * t));
            let (mut c, mut s) = (0.0, 0.0);
            let row = self
                .weights
                .as_ref()
                .map(|w| &w[idx * (self.depth + 1)..(idx + 1) * (self.depth + 1)]);
            for level in 0..=self.depth {
                let p = level as f64 * mf + jf;
                let qh = (level as f64 + 1.0) * mf - jf;
                let (mut wp, mut wq) = match row {
                    Some(r) => r[level],
                    None => ((jf / p).powi(exponent), (jf / qh).powi(exponent)),
                };
                if q > 0 {
                    wp *= p.powi(q_exp);
                    wq *= qh.powi(q_exp);
                }
                c += wp * zp.0 + wq * zq.0;
                s += wp * zp.1 - wq * zq.1;
                zp = cmul(zp, rot);
                zq = cmul(zq, rot);
            }
            let h = self.relative_factors[idx];
            *slot = (c / h, s / h);
        }
    }
}

/// Periodic trigonometric interpolation spline of order `r`.
#[derive(Clone, Debug)]
pub struct TrigSpline {
    coeffs: FourierCoefficients,
    kernels: AliasKernels,
}

impl TrigSpline {
    pub fn build(samples: &SampleSet, order: usize, tail_tolerance: f64) -> Result<Self> {
        let kernels = AliasKernels::new(*samples.grid(), order, tail_tolerance)?;
        Self::with_kernels(samples, kernels)
    }

    /// Reuses precomputed kernels; they must belong to the samples' grid.
    pub fn with_kernels(samples: &SampleSet, kernels: AliasKernels) -> Result<Self> {
        if kernels.grid != *samples.grid() {
            return Err(Error::LengthMismatch {
                expected: kernels.grid.node_count(),
                got: samples.grid().node_count(),
            });
        }
        let coeffs = dft_odd(samples)?;
        Ok(Self { coeffs, kernels })
    }

    /// [`TrigSpline::build`] with [`DEFAULT_TAIL_TOLERANCE`].
    pub fn new(samples: &SampleSet, order: usize) -> Result<Self> {
        Self::build(samples, order, DEFAULT_TAIL_TOLERANCE)
    }

    pub fn order(&self) -> usize {
        self.kernels.order
    }

    pub fn coefficients(&self) -> &FourierCoefficients {
        &self.coeffs
    }

    pub fn grid(&self) -> &CircleGrid {
        &self.kernels.grid
    }

    pub fn kernels(&self) -> &AliasKernels {
        &self.kernels
    }

    pub fn truncation_depth(&self) -> usize {
        self.kernels.depth
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.kernels.tail_tolerance
    }

    /// `H_1 ..= H_n` as defined by [`alias_factor`] at this spline's depth.
    /// May underflow to zero for very large orders; evaluation does not use it.
    pub fn alias_factors(&self) -> Vec<f64> {
        let s = -(self.order() as f64 + 1.0);
        self.kernels
            .relative_factors
            .iter()
            .enumerate()
            .map(|(i, h)| ((i + 1) as f64).powf(s) * h)
            .collect()
    }

    /// Cosine and sine amplitude carried by harmonic `mu` in the truncated
    /// series; zero for multiples of `M` and harmonics beyond the truncation.
    pub fn harmonic_amplitude(&self, mu: usize) -> (f64, f64) {
        let m = self.grid().node_count();
        let depth = self.truncation_depth();
        if mu == 0 {
            return (0.5 * self.coeffs.a[0], 0.0);
        }
        let residue = mu % m;
        if residue == 0 || mu > (depth + 1) * m {
            return (0.0, 0.0);
        }
        let n = self.grid().max_harmonic();
        let (j, sign) = if residue <= n {
            (residue, 1.0)
        } else {
            (m - residue, -1.0)
        };
        if sign > 0.0 && mu > depth * m + j {
            return (0.0, 0.0);
        }
        let w = (j as f64 / mu as f64).powi(self.order() as i32 + 1)
            / self.kernels.relative_factors[j - 1];
        (self.coeffs.a[j] * w, sign * self.coeffs.b[j - 1] * w)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.series(t, 0)
    }

    /// Term-by-term derivative of order `q`, `q < r`.
    pub fn eval_derivative(&self, t: f64, q: usize) -> Result<f64> {
        if q >= self.order() {
            return Err(Error::DerivativeOrder {
                order: q,
                spline_order: self.order(),
            });
        }
        Ok(self.series(t, q))
    }

    fn series(&self, t: f64, q: usize) -> f64 {
        let n = self.grid().max_harmonic();
        let mut k = vec![(0.0, 0.0); n];
        self.kernels.eval_into(t, q, &mut k);
        combine(&self.coeffs, &k, q)
    }
}

fn combine(coeffs: &FourierCoefficients, kernels: &[(f64, f64)], q: usize) -> f64 {
    let mut acc = if q == 0 { 0.5 * coeffs.a[0] } else { 0.0 };
    for (j, &(c, s)) in kernels.iter().enumerate() {
        acc += coeffs.a[j + 1] * c + coeffs.b[j] * s;
    }
    acc
}

/// Shorthand for [`TrigSpline::build`].
pub fn build_spline(samples: &SampleSet, order: usize, tail_tolerance: f64) -> Result<TrigSpline> {
    TrigSpline::build(samples, order, tail_tolerance)
}

fn unit(angle: f64) -> (f64, f64) {
    let (s, c) = angle.sin_cos();
    (c, s)
}

fn cmul(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

/// Cardinal splines `L_i` (the spline of the `i`-th unit sample vector)
/// tabulated on a fixed set of points. Since the spline is linear in the
/// samples, `S(t) = Σ_i y_i L_i(t)`.
#[derive(Clone, Debug)]
pub struct CardinalBasis {
    points: Vec<f64>,
    /// `columns[i][p] = L_i(points[p])`
    columns: Vec<Vec<f64>>,
}

impl CardinalBasis {
    pub fn new(grid: &CircleGrid, order: usize, tail_tolerance: f64, points: Vec<f64>) -> Result<Self> {
        let kernels = AliasKernels::new(*grid, order, tail_tolerance)?;
        let m = grid.node_count();
        let n = grid.max_harmonic();
        let mut tab = vec![(0.0, 0.0); n];
        let mut columns = vec![vec![0.0; points.len()]; m];
        // unit sample i has a_j = 2/M cos(j τ_i), b_j = 2/M sin(j τ_i)
        let trig: Vec<(f64, f64)> = (0..m).map(|q| grid.node(q).sin_cos()).collect();
        let scale = 2.0 / m as f64;
        for (pi, &t) in points.iter().enumerate() {
            kernels.eval_into(t, 0, &mut tab);
            for (i, col) in columns.iter_mut().enumerate() {
                let mut v = 0.5 * scale;
                for (j, &(c, s)) in tab.iter().enumerate() {
                    let (sn, cs) = trig[(i * (j + 1)) % m];
                    v += scale * (cs * c + sn * s);
                }
                col[pi] = v;
            }
        }
        Ok(Self { points, columns })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn node_count(&self) -> usize {
        self.columns.len()
    }

    /// Spline values at every tabulated point for sample vector `values`.
    pub fn apply(&self, values: &[f64]) -> Vec<f64> {
        assert_eq!(values.len(), self.columns.len(), "sample count mismatch");
        let mut out = vec![0.0; self.points.len()];
        for (col, &y) in self.columns.iter().zip(values) {
            if y == 0.0 {
                continue;
            }
            for (o, c) in out.iter_mut().zip(col) {
                *o += y * c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::place_on_circle;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn periodic(values: Vec<f64>) -> SampleSet {
        SampleSet::periodic(values).unwrap()
    }

    fn on_grid(m: usize, f: impl Fn(f64) -> f64) -> SampleSet {
        let g = CircleGrid::new(m).unwrap();
        periodic(g.nodes().map(f).collect())
    }

    /// Plain double loop over the textbook formulas.
    fn brute_dft(y: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let m = y.len();
        let n = (m - 1) / 2;
        let mut a = vec![0.0; n + 1];
        let mut b = vec![0.0; n + 1];
        for j in 0..=n {
            for (i, &v) in y.iter().enumerate() {
                let tau = TAU * i as f64 / m as f64;
                a[j] += 2.0 / m as f64 * v * (j as f64 * tau).cos();
                b[j] += 2.0 / m as f64 * v * (j as f64 * tau).sin();
            }
        }
        (a, b)
    }

    #[test]
    fn dft_constant() {
        let c = dft_odd(&periodic(vec![5.0; 9])).unwrap();
        assert!((c.a()[0] - 10.0).abs() < 1e-12);
        assert!(c.a()[1..].iter().chain(c.b()).all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn dft_single_cosine() {
        let c = dft_odd(&on_grid(9, f64::cos)).unwrap();
        assert!((c.a()[1] - 1.0).abs() < 1e-12);
        for j in 0..=4 {
            if j != 1 {
                assert!(c.a()[j].abs() < 1e-12);
            }
        }
        assert!(c.b().iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn dft_sine_plus_offset() {
        let s = on_grid(11, |t| (2.0 * t).sin() + 3.0);
        let (ba, bb) = brute_dft(s.values());
        assert!((ba[0] - 6.0).abs() < 1e-12 && (bb[2] - 1.0).abs() < 1e-12);
        let c = dft_odd(&s).unwrap();
        for j in 0..=5 {
            assert!((c.a()[j] - ba[j]).abs() < 1e-12);
            if j > 0 {
                assert!((c.b()[j - 1] - bb[j]).abs() < 1e-12);
            }
        }
        assert!((c.a()[0] - 6.0).abs() < 1e-12);
        assert!((c.b()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dft_rejects_unfilled() {
        let s = place_on_circle(&[1.0, 2.0, 3.0], 1).unwrap();
        assert!(matches!(dft_odd(&s), Err(Error::UnfilledSlot { node: 3 })));
    }

    #[test]
    fn alias_factor_single_term() {
        for (j, m, r) in [(1, 9, 3), (4, 9, 3), (2, 5, 1), (7, 17, 5)] {
            let h = alias_factor(j, m, r, 0).unwrap();
            let s = -(r as f64 + 1.0);
            let expect = (j as f64).powf(s) + ((m - j) as f64).powf(s);
            assert!((h - expect).abs() <= 1e-15 * expect);
        }
    }

    #[test]
    fn alias_factor_tail_small_for_cubic() {
        let short = alias_factor(4, 9, 3, 0).unwrap();
        let long = alias_factor(4, 9, 3, 50).unwrap();
        // the m >= 1 aliases add O(M^-4) in absolute terms
        assert!((long - short).abs() < 1e-4);
        assert!(long > short);
    }

    #[test]
    fn alias_factor_range() {
        assert!(alias_factor(0, 9, 3, 1).is_err());
        assert!(alias_factor(5, 9, 3, 1).is_err());
        assert!(alias_factor(1, 9, 0, 1).is_err());
    }

    #[test]
    fn truncation_bound_holds_numerically() {
        for (m, r) in [(9, 3), (17, 3), (11, 5), (9, 2)] {
            let s = TrigSpline::new(&on_grid(m, f64::sin), r).unwrap();
            let depth = s.truncation_depth();
            let factors = s.alias_factors();
            for j in 1..=(m - 1) / 2 {
                // tail measured directly out to a much deeper cut
                let deep = alias_factor(j, m, r, depth * 20 + 200).unwrap();
                let tail = deep - factors[j - 1];
                assert!(tail >= 0.0);
                assert!(tail < DEFAULT_TAIL_TOLERANCE * factors[j - 1], "m={m} r={r} j={j}");
            }
        }
    }

    #[test]
    fn order_one_needs_loose_tolerance() {
        let s = on_grid(9, f64::sin);
        assert!(matches!(
            TrigSpline::new(&s, 1),
            Err(Error::TruncationTooDeep { .. })
        ));
        assert!(TrigSpline::build(&s, 1, 1e-4).is_ok());
    }

    #[test]
    fn constant_spline_is_flat() {
        let s = TrigSpline::new(&periodic(vec![2.5; 9]), 3).unwrap();
        for i in 0..50 {
            let t = i as f64 * 0.137;
            assert!((s.eval(t) - 2.5).abs() < 1e-12);
            assert!(s.eval_derivative(t, 1).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn cosine_samples_close_between_nodes() {
        let s = TrigSpline::new(&on_grid(9, f64::cos), 3).unwrap();
        let g = s.grid();
        for tau in g.nodes() {
            assert!((s.eval(tau) - tau.cos()).abs() < 1e-12);
        }
        let worst = (0..1000)
            .map(|i| {
                let t = TAU * i as f64 / 1000.0;
                (s.eval(t) - t.cos()).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst < 3e-3, "{worst}");
    }

    #[test]
    fn integer_ramp_interpolated_with_seam_overshoot() {
        let ramp: Vec<f64> = (1..=9).map(f64::from).collect();
        let s = TrigSpline::new(&periodic(ramp), 3).unwrap();
        for (i, tau) in s.grid().nodes().enumerate() {
            assert!((s.eval(tau) - (i + 1) as f64).abs() < 1e-9 * 10.0);
        }
        // the wrap from 9 back to 1 makes the spline overshoot past both ends
        let h = s.grid().step();
        let near_end = s.eval(TAU - 1.5 * h);
        assert!(near_end > 9.0, "{near_end}");
        let near_start = s.eval(0.5 * h);
        assert!(near_start < 1.0, "{near_start}");
    }

    #[test]
    fn derivative_order_contract() {
        let s = TrigSpline::new(&on_grid(9, f64::sin), 3).unwrap();
        assert!(s.eval_derivative(1.0, 3).is_err());
        assert_eq!(s.eval_derivative(1.0, 0).unwrap(), s.eval(1.0));
    }

    #[test]
    fn first_derivative_matches_central_difference() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let y: Vec<f64> = (0..11).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let s = TrigSpline::new(&periodic(y), 3).unwrap();
        let h = 1e-5;
        for _ in 0..20 {
            let t = rng.gen_range(0.0..TAU);
            let fd = (s.eval(t + h) - s.eval(t - h)) / (2.0 * h);
            let d = s.eval_derivative(t, 1).unwrap();
            assert!((fd - d).abs() <= 1e-5 * d.abs().max(1.0), "t={t} fd={fd} d={d}");
        }
    }

    #[test]
    fn high_order_tends_to_trig_polynomial() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let y: Vec<f64> = (0..9).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = TrigSpline::new(&periodic(y), 51).unwrap();
        for _ in 0..1000 {
            let t = rng.gen_range(0.0..TAU);
            assert!((s.eval(t) - s.coefficients().eval(t)).abs() < 1e-4);
        }
    }

    #[test]
    fn amplitudes_follow_power_law() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let y: Vec<f64> = (0..9).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = TrigSpline::new(&periodic(y), 3).unwrap();
        let (a2, b2) = s.harmonic_amplitude(2);
        let (a11, b11) = s.harmonic_amplitude(11);
        let ratio = (2.0_f64 / 11.0).powi(4);
        assert!((a11 - a2 * ratio).abs() < 1e-15);
        assert!((b11 - b2 * ratio).abs() < 1e-15);
        // reflected alias 9 - 2 = 7 flips the sine part
        let (a7, b7) = s.harmonic_amplitude(7);
        let ratio = (2.0_f64 / 7.0).powi(4);
        assert!((a7 - a2 * ratio).abs() < 1e-15);
        assert!((b7 + b2 * ratio).abs() < 1e-15);
        assert_eq!(s.harmonic_amplitude(9), (0.0, 0.0));
    }

    #[test]
    fn cardinal_basis_reproduces_spline() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        let y: Vec<f64> = (0..11).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let set = periodic(y.clone());
        let s = TrigSpline::new(&set, 3).unwrap();
        let pts: Vec<f64> = (0..37).map(|i| i as f64 * 0.17).collect();
        let basis = CardinalBasis::new(set.grid(), 3, DEFAULT_TAIL_TOLERANCE, pts.clone()).unwrap();
        for (v, &t) in basis.apply(&y).iter().zip(&pts) {
            assert!((v - s.eval(t)).abs() < 1e-12);
        }
    }

    fn odd_samples() -> impl Strategy<Value = Vec<f64>> {
        (1usize..9).prop_flat_map(|half| prop::collection::vec(-100.0f64..100.0, 2 * half + 1))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn parseval(y in odd_samples()) {
            let c = dft_odd(&periodic(y.clone())).unwrap();
            let m = y.len() as f64;
            let energy: f64 = y.iter().map(|v| v * v).sum();
            let spectral = (0.5 * c.a()[0] * c.a()[0]
                + c.a()[1..].iter().chain(c.b()).map(|v| v * v).sum::<f64>())
                * m / 2.0;
            prop_assert!((spectral - energy).abs() <= 1e-9 * energy.max(1e-300));
        }

        #[test]
        fn interpolates_nodes(y in odd_samples(), r in prop::sample::select(vec![1usize, 2, 3, 5])) {
            let set = periodic(y.clone());
            let tol = if r == 1 { 1e-4 } else if r == 2 { 1e-7 } else { DEFAULT_TAIL_TOLERANCE };
            let s = TrigSpline::build(&set, r, tol).unwrap();
            let scale = 1.0 + set.max_abs();
            for (tau, v) in set.grid().nodes().zip(&y) {
                prop_assert!((s.eval(tau) - v).abs() <= 1e-9 * scale);
            }
        }

        #[test]
        fn linear_in_samples(
            pair in (1usize..8).prop_flat_map(|h| (
                prop::collection::vec(-10.0f64..10.0, 2 * h + 1),
                prop::collection::vec(-10.0f64..10.0, 2 * h + 1),
            )),
            alpha in -3.0f64..3.0,
            t in 0.0f64..TAU,
        ) {
            let (u, v) = pair;
            let w: Vec<f64> = u.iter().zip(&v).map(|(a, b)| alpha * a + b).collect();
            let su = TrigSpline::new(&periodic(u), 3).unwrap();
            let sv = TrigSpline::new(&periodic(v), 3).unwrap();
            let sw = TrigSpline::new(&periodic(w), 3).unwrap();
            let lhs = sw.eval(t);
            let rhs = alpha * su.eval(t) + sv.eval(t);
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
        }

        #[test]
        fn periodic_in_argument(y in odd_samples(), t in -20.0f64..20.0) {
            let set = periodic(y);
            let s = TrigSpline::new(&set, 3).unwrap();
            let scale = 1.0 + set.max_abs();
            prop_assert!((s.eval(t + TAU) - s.eval(t)).abs() <= 1e-12 * scale);
            for q in 0..3 {
                let left = s.eval_derivative(1e-13, q).unwrap();
                let right = s.eval_derivative(TAU - 1e-13, q).unwrap();
                prop_assert!((left - right).abs() <= 1e-8 * scale * (1.0 + (s.grid().node_count() as f64).powi(q as i32)));
            }
        }
    }
}
