//! Reduced and hat ranks of a Seifert sphere: `cargo run --example ranks -- 2 3 5 7`

use hfrank::deltaseq::rank_report_for_tuple;
use hfrank::SeifertTuple;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let raw: Vec<i64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let raw = if raw.is_empty() { vec![2, 3, 5, 7] } else { raw };
    let y = SeifertTuple::new(&raw)?;
    let r = rank_report_for_tuple(&y)?;

    println!("Σ{y}");
    if !y.is_degenerate() {
        let inv = y.normalized_invariants()?;
        println!("e0 = {}, euler number = {}, N = {}", inv.e0, y.euler_number()?, y.n_cutoff()?);
        let deltas: Vec<i64> = (0..=y.n_cutoff()?.min(20)).map(|n| y.delta_at(n)).collect::<Result<_, _>>()?;
        println!("Δ(0..) = {deltas:?}");
    }
    println!("κ = {}, min τ = {}, c = {}", r.kappa, r.min_tau, r.c);
    println!("rank HF_red = {}, rank HF^ = {}", r.rank_red, r.rank_hat);
    Ok(())
}
