//! The self-test report for any radix sequence.
//!
//! ```text
//! cargo run --release --example identity_suite -- "2,3,4,5,2,3"
//! ```

use vilenkin::{selftest, RadixStructure, Result};

fn main() -> Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "2,3,4,5,2,3".into());
    let st = RadixStructure::from_spec(&spec, None)?;
    let report = selftest::run(&st, 42)?;
    println!("m = {st}, M_N = {}\n{report}", st.size());
    if !report.passed() {
        std::process::exit(1);
    }
    Ok(())
}
