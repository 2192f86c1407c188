//! Fast Vilenkin-Fourier transform: round trip, Parseval, the quadratic
//! oracle and the CSV/JSON file formats.
//!
//! ```text
//! cargo run --release --example transform_roundtrip -- "(2,3)^4"
//! ```

use std::time::Instant;

use vilenkin::{
    forward_naive, gen_random, RadixStructure, Result, Spectrum, StepFunction, TransformPlan,
};

fn main() -> Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "(2,3)^4".into());
    let st = RadixStructure::from_spec(&spec, None)?;
    let plan = TransformPlan::new(&st);
    let f = gen_random(7, st.level(), &st)?;

    let t = Instant::now();
    let coeffs = plan.forward(&f)?;
    let fast = t.elapsed();
    let back = plan.inverse(&coeffs)?;
    println!("m = {st}, M_N = {}", st.size());
    println!(
        "fast forward: {fast:?}, round-trip error {:.2e}",
        back.max_distance(&f)?
    );

    let energy: f64 = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / st.size() as f64;
    let coeff_energy: f64 = coeffs.coeffs().iter().map(|c| c.norm_sqr()).sum();
    println!("Parseval: ∫|f|² = {energy:.12}, Σ|f̂|² = {coeff_energy:.12}");

    match forward_naive(&f) {
        Ok(slow) => println!("naive oracle agrees to {:.2e}", slow.max_distance(&coeffs)?),
        Err(e) => println!("naive oracle skipped: {e}"),
    }

    let mut csv = Vec::new();
    coeffs.write_csv(&mut csv)?;
    let reread = Spectrum::read_csv(&st, csv.as_slice())?;
    println!("CSV round trip exact: {}", reread == coeffs);
    let json = f.to_json()?;
    println!(
        "JSON round trip exact: {}",
        StepFunction::from_json(json.as_bytes())? == f
    );
    println!("first CSV lines:");
    for line in String::from_utf8_lossy(&csv).lines().take(3) {
        println!("  {line}");
    }
    Ok(())
}
