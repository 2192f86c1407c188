//! Approximation error of `σ_n^{−α}` against the bound built from the modulus
//! of continuity, for a lacunary function on a mixed-radix group.
//!
//! ```text
//! cargo run --release --example convergence_experiment -- "(2,3)^5" 0.25 0.9
//! ```

use vilenkin::approx::convergence_table_with_profile;
use vilenkin::{gen_lacunary, Exponent, ModulusProfile, NPolicy, RadixStructure, Result};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "(2,3)^5".into());
    let alpha: f64 = args.next().map_or(0.25, |a| a.parse().expect("alpha"));
    let beta: f64 = args.next().map_or(0.9, |b| b.parse().expect("beta"));

    let st = RadixStructure::from_spec(&spec, None)?;
    let f = gen_lacunary(beta, &st)?;
    let profiles =
        ModulusProfile::compute_many(&f, &[Exponent::ONE, Exponent::TWO, Exponent::Infinity]);
    println!("m = {st}, α = {alpha}, f = lacunary(β = {beta})");

    for prof in &profiles {
        println!("\np = {}", prof.p);
        println!(
            "{:>3} {:>7} {:>12} {:>12} {:>9} {:>12} {:>12}",
            "k", "n", "error", "bound", "ratio", "L3 stated", "L3 proof"
        );
        let rows =
            convergence_table_with_profile(&f, prof, alpha, 3..=st.level() - 1, NPolicy::Mk)?;
        for row in rows {
            let (stated, proof) = prof.tail_bounds(row.k)?;
            println!(
                "{:>3} {:>7} {:>12.4e} {:>12.4e} {:>9.4} {:>12.4e} {:>12.4e}",
                row.k,
                row.n,
                row.error,
                row.bound,
                row.ratio.unwrap_or(f64::NAN),
                stated,
                proof
            );
        }
    }
    Ok(())
}
