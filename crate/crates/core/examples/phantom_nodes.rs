//! Fill phantom nodes from a Hermite blend across the gap and see what the
//! seam does to the error on the data arc.

use trigspline::analysis::{relative_error, DEFAULT_DENSE};
use trigspline::{fill_phantom, place_on_circle, sample_source, DerivativeSource, PhantomConfig, SourceFunction, TrigSpline};

fn main() -> trigspline::Result<()> {
    let f = SourceFunction::exp02();
    let y = sample_source(&f, 13)?;
    for k in [0, 1, 2] {
        for (label, source) in [("divided", DerivativeSource::DividedDifference), ("exact", DerivativeSource::Exact)] {
            for p in 0..=2 {
                let set = fill_phantom(place_on_circle(&y, k)?, &PhantomConfig::new(k, p, source.clone()), Some(&f))?;
                let s = TrigSpline::new(&set, 3)?;
                let e = relative_error(&s, &f, set.data_arc_end(), DEFAULT_DENSE)?;
                let phantoms: Vec<String> = set.phantom().iter().map(|v| format!("{v:.4}")).collect();
                println!("k={k} p={p} {label:<8} error {:.5}  phantoms [{}]", e.value, phantoms.join(", "));
                if k == 0 {
                    break;
                }
            }
            if k == 0 {
                break;
            }
        }
    }
    Ok(())
}
