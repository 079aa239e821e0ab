//! Comparable triples whose hat rank goes down as a multiplicity goes up.

use hfrank::inequality::scan_hat_monotonicity;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bound: i64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(13);
    let found = scan_hat_monotonicity(bound, 3)?;
    println!("{} pairs with entries <= {bound}", found.len());
    for v in found.iter().take(10) {
        println!("  Σ{} <= Σ{}: hat {} > {}", v.smaller, v.larger, v.hat_smaller, v.hat_larger);
    }
    Ok(())
}
