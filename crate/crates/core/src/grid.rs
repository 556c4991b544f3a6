//! Uniform grids on the circle and the sample sets attached to them.
//!
//! A finite-interval sequence of `N` samples is laid out on the first `N`
//! nodes of an `M = N + 2k` node grid. The remaining `2k` nodes form the
//! phantom arc `((N - 1) h, 2π)` and are filled later by
//! [`crate::phantom::fill_phantom`].

use std::f64::consts::TAU;
use std::path::Path;

use crate::error::{Error, Result};

/// `M` equally spaced nodes `τ_i = i h`, `i = 0..M`, on `[0, 2π)`, `M` odd.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleGrid {
    node_count: usize,
    step: f64,
}

impl CircleGrid {
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count < 3 || node_count.is_multiple_of(2) {
            return Err(Error::InvalidNodeCount(node_count));
        }
        Ok(Self {
            node_count,
            step: TAU / node_count as f64,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Highest harmonic `n = (M - 1) / 2` resolved by the grid.
    pub fn max_harmonic(&self) -> usize {
        (self.node_count - 1) / 2
    }

    /// Node position, zero-based.
    pub fn node(&self, index: usize) -> f64 {
        index as f64 * self.step
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.node_count).map(move |i| self.node(i))
    }
}

/// Shorthand for [`CircleGrid::new`].
pub fn make_grid(node_count: usize) -> Result<CircleGrid> {
    CircleGrid::new(node_count)
}

/// Values on a [`CircleGrid`]. The first `original_count` entries are data;
/// the rest are phantom slots, which hold `NaN` until filled.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    grid: CircleGrid,
    values: Vec<f64>,
    original_count: usize,
}

impl SampleSet {
    /// A complete sample set. Every value must be finite.
    pub fn new(grid: CircleGrid, values: Vec<f64>, original_count: usize) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::LengthMismatch {
                expected: grid.node_count(),
                got: values.len(),
            });
        }
        check_split(grid.node_count(), original_count)?;
        if let Some((node, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteSample { node, value });
        }
        Ok(Self {
            grid,
            values,
            original_count,
        })
    }

    /// Samples occupying the whole circle, no phantom slots.
    pub fn periodic(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        let grid = CircleGrid::new(n)?;
        Self::new(grid, values, n)
    }

    pub fn grid(&self) -> &CircleGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn original(&self) -> &[f64] {
        &self.values[..self.original_count]
    }

    pub fn phantom(&self) -> &[f64] {
        &self.values[self.original_count..]
    }

    pub fn original_count(&self) -> usize {
        self.original_count
    }

    /// Number of phantom pairs `k`.
    pub fn phantom_pairs(&self) -> usize {
        (self.grid.node_count() - self.original_count) / 2
    }

    /// End of the data arc, `(N - 1) h`.
    pub fn data_arc_end(&self) -> f64 {
        self.grid.node(self.original_count - 1)
    }

    pub fn is_complete(&self) -> bool {
        self.first_unfilled().is_none()
    }

    pub fn first_unfilled(&self) -> Option<usize> {
        self.values.iter().position(|v| !v.is_finite())
    }

    /// Writes the phantom slots. `phantom` must hold exactly `2k` finite values.
    pub fn with_phantom(mut self, phantom: &[f64]) -> Result<Self> {
        let slots = self.values.len() - self.original_count;
        if phantom.len() != slots {
            return Err(Error::PhantomCountMismatch {
                expected: slots,
                got: phantom.len(),
            });
        }
        for (i, &v) in phantom.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteSample {
                    node: self.original_count + i,
                    value: v,
                });
            }
        }
        self.values[self.original_count..].copy_from_slice(phantom);
        Ok(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

fn check_split(node_count: usize, original_count: usize) -> Result<()> {
    if original_count == 0 || original_count > node_count || !(node_count - original_count).is_multiple_of(2)
    {
        return Err(Error::Config(format!(
            "{original_count} original samples cannot sit on a {node_count}-node grid"
        )));
    }
    Ok(())
}

/// Lays `original` on the first `N` nodes of an `N + 2k` grid; the `2k`
/// phantom slots are left unfilled.
pub fn place_on_circle(original: &[f64], phantom_pairs: usize) -> Result<SampleSet> {
    let n = original.len();
    if n < 3 {
        return Err(Error::TooFewSamples { min: 3, got: n });
    }
    let total = n + 2 * phantom_pairs;
    if total.is_multiple_of(2) {
        return Err(Error::EvenNodeTotal {
            original: n,
            pairs: phantom_pairs,
            total,
        });
    }
    if let Some((node, &value)) = original.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFiniteSample { node, value });
    }
    let grid = CircleGrid::new(total)?;
    let mut values = Vec::with_capacity(total);
    values.extend_from_slice(original);
    values.resize(total, f64::NAN);
    Ok(SampleSet {
        grid,
        values,
        original_count: n,
    })
}

/// Parses one value per line. Blank lines and lines starting with `#` are
/// skipped; a trailing comma-separated field list uses the first field.
pub fn parse_samples(text: &str, origin: &Path) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.split(',').next().unwrap_or(line).trim();
        let value: f64 = field.parse().map_err(|_| Error::Parse {
            path: origin.to_path_buf(),
            line: lineno + 1,
            text: field.to_string(),
        })?;
        if !value.is_finite() {
            return Err(Error::NonFiniteSample {
                node: out.len(),
                value,
            });
        }
        out.push(value);
    }
    Ok(out)
}

pub fn read_samples(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_samples(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grid_steps() {
        let g = make_grid(9).unwrap();
        assert_eq!(g.step(), TAU / 9.0);
        assert!((g.step() - 0.6981317).abs() < 1e-7);
        let g = make_grid(11).unwrap();
        assert_eq!(g.step(), TAU / 11.0);
        assert_eq!(g.node(0), 0.0);
        assert!((g.node(10) - (TAU - g.step())).abs() <= 4.0 * f64::EPSILON * TAU);
    }

    #[test]
    fn rejects_even_and_small() {
        assert!(matches!(make_grid(8), Err(Error::InvalidNodeCount(8))));
        assert!(make_grid(1).is_err());
        assert!(make_grid(0).is_err());
    }

    #[test]
    fn placement_layouts() {
        let ramp: Vec<f64> = (1..=9).map(f64::from).collect();
        let s = place_on_circle(&ramp, 1).unwrap();
        assert_eq!(s.grid().node_count(), 11);
        assert!((s.data_arc_end() - 16.0 * std::f64::consts::PI / 11.0).abs() < 1e-14);
        assert_eq!(s.first_unfilled(), Some(9));

        let s = place_on_circle(&ramp, 0).unwrap();
        assert!(s.is_complete());
        assert!((s.data_arc_end() - (TAU - s.grid().step())).abs() < 1e-14);

        let v: Vec<f64> = (0..13).map(f64::from).collect();
        let s = place_on_circle(&v, 2).unwrap();
        assert_eq!(s.grid().node_count(), 17);
        assert_eq!(s.phantom().len(), 4);
        assert!(s.phantom().iter().all(|v| v.is_nan()));
    }

    #[test]
    fn placement_parity() {
        let v = [1.0; 8];
        assert!(matches!(
            place_on_circle(&v, 1),
            Err(Error::EvenNodeTotal { total: 10, .. })
        ));
    }

    #[test]
    fn phantom_fill_count_checked() {
        let s = place_on_circle(&[1.0, 2.0, 3.0], 1).unwrap();
        assert!(matches!(
            s.clone().with_phantom(&[1.0]),
            Err(Error::PhantomCountMismatch { expected: 2, got: 1 })
        ));
        let s = s.with_phantom(&[4.0, 5.0]).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn csv_parsing() {
        let text = "# samples\n1.5\n\n2e-1\n-3\n";
        let v = parse_samples(text, Path::new("x.csv")).unwrap();
        assert_eq!(v, vec![1.5, 0.2, -3.0]);
        let err = parse_samples("1\nabc\n", Path::new("x.csv")).unwrap_err();
        assert!(err.to_string().contains("x.csv:2"), "{err}");
    }

    proptest! {
        #[test]
        fn spacing_is_uniform(half in 1usize..200) {
            let g = make_grid(2 * half + 1).unwrap();
            let ulp = f64::EPSILON * TAU;
            prop_assert!((g.step() * g.node_count() as f64 - TAU).abs() <= 4.0 * ulp);
            for i in 0..g.node_count() - 1 {
                prop_assert!((g.node(i + 1) - g.node(i) - g.step()).abs() <= 4.0 * ulp);
            }
        }

        #[test]
        fn placement_keeps_originals(values in prop::collection::vec(-1e6f64..1e6, 3..40), k in 0usize..3) {
            let n = values.len();
            let k = if (n + 2 * k) % 2 == 0 { return Ok(()) } else { k };
            let s = place_on_circle(&values, k).unwrap();
            for (a, b) in s.original().iter().zip(&values) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
