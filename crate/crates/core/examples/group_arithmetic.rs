//! Points, cosets and indices of a bounded Vilenkin group.
//!
//! ```text
//! cargo run --example group_arithmetic -- "2,3^3"
//! ```

use vilenkin::{RadixStructure, Result};

fn main() -> Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "2,3,2,3".into());
    let st = RadixStructure::from_spec(&spec, None)?;
    println!("m = {st}, N = {}, M_k = {:?}", st.level(), st.cumulative());

    let x = st.point(vec![1, 2, 0, 1])?;
    let y = st.point_at(17)?;
    let sum = x.add(&y)?;
    println!("x = {:?}, y = {:?} (label 17)", x.digits(), y.digits());
    println!("x + y = {:?}, -x = {:?}", sum.digits(), x.neg().digits());
    println!("x - x is zero: {}", x.sub(&x)?.is_zero());

    for r in 0..=st.level() {
        println!(
            "r = {r}: x lies in coset {} of I_{r} (|I_{r}| = {} grid points), x in I_{r}: {}",
            x.coset_index(r)?,
            st.block_len(r),
            x.in_neighborhood(r)
        );
    }

    for n in [0, 1, 5, 23, st.size() - 1] {
        let idx = st.index(n)?;
        println!(
            "n = {n:>3}: digits {:?}, order |n| = {}",
            idx.digits(),
            idx.order()
        );
    }
    Ok(())
}
