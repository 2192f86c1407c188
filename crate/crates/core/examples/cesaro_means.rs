//! Partial sums, Fejér means and Cesàro means of negative order applied to a
//! lacunary series, with the max-norm error as `n` grows.
//!
//! ```text
//! cargo run --release --example cesaro_means
//! ```

use vilenkin::{
    cesaro_mean, fejer_mean, forward, gen_lacunary, partial_sum, RadixStructure, Result,
};

fn main() -> Result<()> {
    let st = RadixStructure::uniform(3, 7)?;
    let f = gen_lacunary(0.8, &st)?;
    let spectrum = forward(&f);

    println!("m = {st}, f = lacunary(β = 0.8)");
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "n", "S_n", "σ_n", "σ_n^-0.25", "σ_n^-0.75"
    );
    for k in 1..st.level() {
        let n = st.coset_count(k);
        let err = |g: vilenkin::StepFunction| g.max_distance(&f);
        println!(
            "{n:>6} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            err(partial_sum(&spectrum, n)?)?,
            err(fejer_mean(&spectrum, n)?)?,
            err(cesaro_mean(&spectrum, n, -0.25)?)?,
            err(cesaro_mean(&spectrum, n, -0.75)?)?,
        );
    }
    Ok(())
}
