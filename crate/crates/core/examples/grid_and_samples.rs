//! Sample a reference function, place it on the odd circle grid and leave
//! room for phantom nodes.

use trigspline::{place_on_circle, sample_source, SourceFunction};

fn main() -> trigspline::Result<()> {
    let f = SourceFunction::sine75();
    let y = sample_source(&f, 9)?;
    let set = place_on_circle(&y, 1)?;
    let grid = set.grid();
    println!("M = {}, h = {:.6}, data arc ends at {:.6}", grid.node_count(), grid.step(), set.data_arc_end());
    for (i, v) in set.values().iter().enumerate() {
        let slot = if i < set.original_count() { "data" } else { "phantom" };
        println!("{i:>2} {slot:<8} t = {:.6}  y = {v:.6}", grid.node(i));
    }
    println!("first unfilled slot: {:?}", set.first_unfilled());
    Ok(())
}
