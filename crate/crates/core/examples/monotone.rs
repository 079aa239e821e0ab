//! Enlarging a multiplicity never lowers the reduced rank.

use hfrank::inequality::{tuple_ranks, verify_monotone};
use hfrank::morphism::partial_order_immersion;
use hfrank::SeifertTuple;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let small = SeifertTuple::new(&[2, 5, 7])?;
    let big = SeifertTuple::new(&[3, 5, 11])?;
    let m = partial_order_immersion(&small, &big)?;
    println!("Σ{small} -> Σ{big}: immersion {}, injective {}", m.is_immersion(), m.is_injective());
    for (z, w) in m.pairs() {
        println!("  {z} -> {w}");
    }
    println!("{}", verify_monotone(&small, &big)?);

    // hat ranks need not follow
    let (a, b) = (tuple_ranks(&SeifertTuple::new(&[5, 7, 13])?)?, tuple_ranks(&SeifertTuple::new(&[5, 8, 13])?)?);
    println!("Σ{}: red {} hat {}", a.tuple, a.rank_red, a.rank_hat);
    println!("Σ{}: red {} hat {}", b.tuple, b.rank_red, b.rank_hat);
    Ok(())
}
