//! Trigonometric interpolation splines for data sampled on a finite interval.
//!
//! Periodic continuation of non-periodic samples leaves a jump at the seam
//! that spoils trigonometric approximation near both ends of the data. This
//! crate implements the phantom-node remedy: the samples are laid on part of
//! an odd grid on the circle and the remaining `2k` nodes are filled from a
//! two-point Hermite polynomial that joins the end of the data smoothly back
//! to its start.
//!
//! * [`grid`]: circle grids, sample sets, CSV ingestion
//! * [`source`]: reference functions and their discretisation
//! * [`spline`]: Fourier coefficients and order-`r` trigonometric splines
//! * [`phantom`]: boundary derivative estimates, Hermite blends, phantom fill
//! * [`analysis`]: sup-norm error measurement, error tables, curve data
//! * [`optimize`]: lattice coordinate search over phantom values
//! * [`cli`]: the `trigspline` command-line front end

pub mod analysis;
pub mod cli;
pub mod error;
pub mod grid;
pub mod output;
pub mod optimize;
pub mod phantom;
pub mod source;
pub mod spline;

pub use error::{Error, Result};
pub use grid::{make_grid, place_on_circle, CircleGrid, SampleSet};
pub use phantom::{
    boundary_derivatives, build_blend, fill_phantom, DerivativeSource, HermiteBlend,
    PhantomConfig, Side,
};
pub use source::{sample_source, FunctionId, SourceFunction};
pub use spline::{
    alias_factor, build_spline, dft_odd, AliasKernels, CardinalBasis, FourierCoefficients, TrigSpline,
    DEFAULT_TAIL_TOLERANCE,
};
