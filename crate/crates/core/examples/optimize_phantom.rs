//! Search phantom values directly, starting from the Hermite blend.

use trigspline::analysis::DEFAULT_DENSE;
use trigspline::optimize::{optimize_phantom, PhantomObjective};
use trigspline::SourceFunction;

fn main() -> trigspline::Result<()> {
    for (f, n) in [(SourceFunction::sine75(), 9), (SourceFunction::exp02(), 13), (SourceFunction::ramp(), 9)] {
        let objective = PhantomObjective::new(&f, n, 1, 3, DEFAULT_DENSE)?;
        let spec = objective.default_spec()?;
        let start = objective.eval(&spec.initial);
        let report = optimize_phantom(&objective, &spec)?;
        println!(
            "{} N={n}: baseline {:.5}, hermite {:.5}, optimum {:.3e} ({:.1}x) at {:?} after {} evaluations",
            f.id(),
            report.baseline_error,
            start,
            report.best_error,
            report.reduction_factor,
            report.best_values,
            report.evaluations,
        );
    }
    Ok(())
}
