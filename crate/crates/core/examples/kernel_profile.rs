//! Shell maxima of the Cesàro tail kernel against `M_A^{1−α}` and its L1 norm
//! per level.
//!
//! ```text
//! cargo run --release --example kernel_profile -- 0.5
//! ```

use vilenkin::{shell_profile, RadixStructure, Result};

fn main() -> Result<()> {
    let alpha: f64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("alpha must be a number"))
        .unwrap_or(0.5);
    let st = RadixStructure::uniform(2, 13)?;
    println!("m = {st}, α = {alpha}, n = M_k");
    println!(
        "{:>3} {:>12} {:>10} {:>10}",
        "k", "max ratio", "l1 norm", "core max"
    );
    for k in 2..st.level() {
        let prof = shell_profile(&st, k, st.coset_count(k), alpha)?;
        println!(
            "{k:>3} {:>12.5} {:>10.5} {:>10.4e}",
            prof.max_ratio(),
            prof.l1_norm,
            prof.core_max
        );
    }

    let prof = shell_profile(&st, 6, st.coset_count(6), alpha)?;
    println!("\nshells at k = 6:");
    for s in &prof.shells {
        println!(
            "  A = {}: {:>5} points, max {:.4e}, M_A^(1-α) = {:.4}, ratio {:.4}",
            s.shell, s.points, s.max, s.normalizer, s.ratio
        );
    }
    Ok(())
}
