//! Error-reduction tables for the four builtin functions.

use trigspline::analysis::{run_table, table_markdown, DEFAULT_DENSE};
use trigspline::{FunctionId, SourceFunction};

fn main() -> trigspline::Result<()> {
    for (name, n) in [("ramp_integer", 9), ("sine75", 9), ("sine75", 13), ("exp02", 9), ("exp02", 13)] {
        let id: FunctionId = name.parse()?;
        let f = SourceFunction::builtin(&id, n)?;
        let reports = run_table(&f, n, &[1, 2], 3, DEFAULT_DENSE)?;
        println!("{name}, N = {n}\n{}", table_markdown(&reports));
    }
    Ok(())
}
