//! Cesàro numbers `A_n^α`, their two recursions and the growth `n^α / Γ(α+1)`.
//!
//! ```text
//! cargo run --example cesaro_numbers
//! ```

use vilenkin::{asymptotic_ratio, check_identity_diff, check_identity_sum, CesaroTable, Result};

fn main() -> Result<()> {
    let n = 10_000;
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>14}",
        "order", "A_n", "sum id.", "diff id.", "|ratio - 1|"
    );
    for order in [-0.75, -0.5, -0.25, 0.25, 0.5, 1.0] {
        let table = CesaroTable::new(order, n)?;
        let lower = CesaroTable::any_order(order - 1.0, n);
        println!(
            "{order:>6} {:>12.6e} {:>12.2e} {:>12.2e} {:>14.3e}",
            table.get(n),
            check_identity_sum(&table, &lower)?,
            check_identity_diff(&table, &lower)?,
            (asymptotic_ratio(order, n) - 1.0).abs()
        );
    }

    let t = CesaroTable::new(-0.5, 5)?;
    println!("\nA_j^(-1/2), j = 0..5: {:?}", t.values());
    match CesaroTable::new(-1.0, 5) {
        Ok(_) => unreachable!(),
        Err(e) => println!("order -1 rejected: {e}"),
    }
    Ok(())
}
