//! Build trigonometric splines of several orders on periodic data and
//! compare them with the interpolating trigonometric polynomial.

use std::f64::consts::TAU;

use trigspline::{alias_factor, SampleSet, TrigSpline};

fn main() -> trigspline::Result<()> {
    let y = vec![0.3, 1.0, 0.2, -0.7, -1.0, -0.1, 0.8, 0.4, -0.5];
    let set = SampleSet::periodic(y)?;
    println!("H_1 for M = 3, r = 1: {:.9}", alias_factor(1, 3, 1, 1_000_000)?);
    for r in [3, 7, 15, 51] {
        let s = TrigSpline::new(&set, r)?;
        let gap = (0..400)
            .map(|i| {
                let t = TAU * i as f64 / 400.0;
                (s.eval(t) - s.coefficients().eval(t)).abs()
            })
            .fold(0.0, f64::max);
        println!(
            "r = {r:>2}: depth {:>5}, S(0.5) = {:+.6}, S'(0.5) = {:+.6}, max|S - T| = {gap:.2e}",
            s.truncation_depth(),
            s.eval(0.5),
            s.eval_derivative(0.5, 1)?,
        );
    }
    let s = TrigSpline::new(&set, 3)?;
    for mu in [2, 7, 11, 16, 20] {
        let (a, b) = s.harmonic_amplitude(mu);
        println!("harmonic {mu:>2}: amplitude {:.3e}", a.hypot(b));
    }
    Ok(())
}
