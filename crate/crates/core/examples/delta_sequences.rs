//! Abstract delta sequences: refining and merging keep both ranks, and a
//! subsequence plus its complement never outranks the whole.

use hfrank::{AbstractDeltaSequence, GradedRoot, Position};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seq = AbstractDeltaSequence::from_values(&[3, -2, 1, -3, 2, -1, 4])?;
    let show = |name: &str, s: &AbstractDeltaSequence| {
        let r = s.rank_report();
        println!("{name:<12} {:?}  τ {:?}  red {} hat {}", s.values(), s.tau_of(), r.rank_red, r.rank_hat);
    };
    show("whole", &seq);

    let refined = seq.refine(&Position::new(0), &[1, 2])?;
    show("refined", &refined);
    let labels: Vec<String> = refined.positions().iter().map(|z| z.to_string()).collect();
    println!("{:<12} {}", "positions", labels.join(" "));
    let merged = refined.merge(&refined.positions()[..2])?;
    show("merged", &merged);
    println!("canonical form {:?}", seq.canonical_form());

    let keep: Vec<Position> = [0, 3, 4].map(Position::new).to_vec();
    let sub = seq.subsequence(&keep)?;
    let rest = seq.complement(&keep)?;
    show("subsequence", &sub);
    show("complement", &rest);

    print!("{}", GradedRoot::from_delta_sequence(&seq)?.render("ascii")?);
    Ok(())
}
