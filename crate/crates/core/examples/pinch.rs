//! The pinch map Σ(2,3,11,35) → Σ(2,3,5,7,11): a semi-immersion whose bad points are
//! controlled by θ and then split away.

use hfrank::inequality::verify_pinch;
use hfrank::morphism::{fix_defects, pinch_semi_immersion};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (rest, q, r) = (vec![2, 3, 11], 5, 7);
    let w = pinch_semi_immersion(&rest, q, r)?;
    println!("Σ{} -> Σ{}", w.source, w.target);
    println!(
        "S_{{{q},{r}}}: Frobenius {}, {} gaps",
        w.semigroup.frobenius(),
        w.semigroup.gap_count()
    );
    let table = w.morphism.defect_table()?;
    println!(
        "semi-immersion {}, {} bad points, max |defect| {}",
        w.morphism.is_semi_immersion(),
        table.bad().count(),
        table.max_abs_defect()
    );
    for (b, g) in w.theta.iter().take(5) {
        println!("  θ({b}) = {g}");
    }
    println!("control function {}", w.morphism.is_control_function(&w.theta));

    let fixed = fix_defects(&w.morphism, &w.theta)?;
    println!(
        "after splitting: immersion {}, source equivalent {}",
        fixed.is_immersion(),
        fixed.source().is_equivalent(w.morphism.source())
    );
    println!("{}", verify_pinch(&rest, q, r)?);
    Ok(())
}
