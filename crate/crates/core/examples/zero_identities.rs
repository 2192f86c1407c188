//! The two integrals that vanish identically in the approximation estimates,
//! evaluated on random inputs.
//!
//! ```text
//! cargo run --example zero_identities
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vilenkin::{gen_random, zero_identity_i12, zero_identity_ii2, RadixStructure, Result};

fn main() -> Result<()> {
    let st = RadixStructure::from_spec("2,3,2,3,2", None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("m = {st}");
    println!(
        "{:>3} {:>4} {:>3} {:>6} {:>12} {:>12}",
        "k", "n", "r", "α", "I_12", "II_2"
    );
    for case in 0..10 {
        let f = gen_random(case, st.level(), &st)?;
        let k = rng.random_range(2..st.level());
        let n = rng.random_range(st.coset_count(k)..st.coset_count(k + 1));
        let r = rng.random_range(0..=k - 2);
        let alpha = rng.random_range(0.05..0.95);
        println!(
            "{k:>3} {n:>4} {r:>3} {alpha:>6.3} {:>12.2e} {:>12.2e}",
            zero_identity_i12(&f, r, n, alpha)?,
            zero_identity_ii2(&f, k, n, alpha)?
        );
    }
    Ok(())
}
