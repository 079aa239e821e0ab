//! Graded roots from a tau list and from a sphere, in all three formats.

use hfrank::{GradedRoot, SeifertTuple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = GradedRoot::from_tau(&[-2, -1, -2, 0, -2])?;
    print!("{}", root.render("ascii")?);
    println!("vertices per grading {:?}", root.vertex_counts());
    println!("HF_red by degree {:?}", root.red_ranks_by_degree());
    println!("HF^ by degree {:?}\n", root.hat_ranks_by_degree());

    let y = SeifertTuple::new(&[2, 3, 7])?;
    let root = GradedRoot::from_tau(&y.tau_sequence()?)?;
    print!("{}", root.render("dot")?);

    let svg = GradedRoot::from_tau(&SeifertTuple::new(&[2, 3, 13])?.tau_sequence()?)?.render("svg")?;
    println!("\nsvg for Σ(2,3,13): {} bytes", svg.len());
    Ok(())
}
