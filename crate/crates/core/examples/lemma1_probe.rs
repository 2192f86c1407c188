//! `(1/n)∫|Σ α_k D_k|` against `n^{-1/2} ‖α‖_2` for random and constant
//! coefficient vectors.
//!
//! ```text
//! cargo run --release --example lemma1_probe
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use vilenkin::{lemma1_ratio, RadixStructure, Result};

fn main() -> Result<()> {
    let st = RadixStructure::uniform(2, 12)?;
    println!("m = {st}");
    println!("{:>6} {:>14} {:>14}", "n", "max (random)", "α_k = 1");
    for n in [16usize, 64, 256, 1024, 4096] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let mut best = 0.0f64;
        for _ in 0..100 {
            let coeffs: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            best = best.max(lemma1_ratio(&st, &coeffs)?);
        }
        let ones = lemma1_ratio(&st, &vec![1.0; n])?;
        println!("{n:>6} {best:>14.5} {ones:>14.5}");
    }
    Ok(())
}
