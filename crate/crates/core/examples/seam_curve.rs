//! Write spline, reference and error curves to CSV, with and without phantom
//! nodes. Pass a directory as the first argument (default: current dir).

use std::path::PathBuf;

use trigspline::analysis::curve_for;
use trigspline::output::write_atomic;
use trigspline::{PhantomConfig, SourceFunction};

fn main() -> trigspline::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let f = SourceFunction::ramp();
    for (name, config) in [("plain", PhantomConfig::divided(0, 0)), ("phantom", PhantomConfig::divided(1, 2))] {
        let curve = curve_for(&f, 9, &config, 3, 401)?;
        let worst = curve.data().map(|r| r.abs_error).fold(0.0, f64::max);
        let path = dir.join(format!("ramp_{name}.csv"));
        write_atomic(&path, curve.to_csv().as_bytes())?;
        println!("{}: {} rows, max data-arc error {worst:.4}", path.display(), curve.rows.len());
    }
    Ok(())
}
