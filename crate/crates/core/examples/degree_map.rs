//! A chain of pinches and branched covers from Y' down to Y; the degrees
//! multiply and deg·rank(Y) ≤ rank(Y').

use hfrank::inequality::{verify_degree_map, DegreeMove};
use hfrank::SeifertTuple;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let start = SeifertTuple::new(&[2, 5, 11, 21])?;
    let moves = [DegreeMove::BranchedRegular { n: 11 }, DegreeMove::BranchedFiber { fiber: 21, n: 3 }];
    let mut y = start.clone();
    for mv in &moves {
        let next = mv.apply(&y)?;
        println!("Σ{y} --{mv} (degree {})--> Σ{next}", mv.degree());
        y = next;
    }
    let report = verify_degree_map(&start, &moves)?;
    println!("{report}");

    let pinch = verify_degree_map(&SeifertTuple::new(&[2, 3, 5, 7])?, &[DegreeMove::Pinch { q: 5, r: 7 }])?;
    println!("{pinch}");
    Ok(())
}
