//! All Seifert homology spheres up to a given reduced rank (default 12).

use hfrank::botany::{bounds, Botany};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: i64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(12);
    let mut b = Botany::new();
    let rows = b.table(n_max)?;
    for (n, row) in &rows {
        let list: Vec<String> = row.tuples.iter().map(|t| t.to_string()).collect();
        println!("{n:>3} ({:>2}): {}", row.tuples.len(), list.join(" "));
    }
    let (l, p) = bounds(n_max);
    println!("scanned l <= {l}, p <= {p}: {} ranks computed", b.computed());

    // a second query reuses the memo
    let before = b.computed();
    let again = b.solve(n_max / 2)?;
    println!("row {} again: {} tuples, {} new ranks", again.n, again.tuples.len(), b.computed() - before);
    Ok(())
}
