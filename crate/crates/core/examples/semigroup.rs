//! The two-generator semigroup S_{q,r}, its enumeration ψ and the bad points
//! of the induced delta map with their controls θ.

use hfrank::morphism::TwoGenSemigroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = TwoGenSemigroup::new(3, 5)?;
    let f = s.frobenius();
    let gaps: Vec<i64> = (0..=f).filter(|&x| !s.contains(x)).collect();
    println!("S_{{3,5}}: Frobenius {f}, gaps {gaps:?}");
    let psi: Vec<i64> = (0..12).map(|x| s.psi(x)).collect();
    println!("ψ(0..12) = {psi:?}");
    for b in s.bad_points_upto(3 * s.qr()) {
        println!("bad {b}: defect {}, θ = {}", s.defect(b), s.theta(b)?);
    }
    Ok(())
}
