//! The n embeddings of Σ(2,3,7) into its 5-fold cover Σ(2,3,35), and the
//! resulting rank inequality.

use hfrank::inequality::{verify_branched, verify_branched_hat};
use hfrank::morphism::{branched_cover_embeddings, embed_to_subsequence};
use hfrank::SeifertTuple;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let y = SeifertTuple::new(&[2, 3, 7])?;
    let family = branched_cover_embeddings(&y, 5)?;
    println!("Σ{} -> Σ{}, shift {}", family.source, family.target, family.shift);
    for (k, m) in family.morphisms.iter().enumerate() {
        let images: Vec<String> = m.pairs().map(|(_, w)| w.to_string()).collect();
        println!("  φ_{k}: embedding {} image [{}]", m.is_embedding(), images.join(", "));
    }
    println!("values preserved {}, images disjoint {}", family.values_preserved(), family.images_disjoint());

    let sub = embed_to_subsequence(&family.morphisms[0])?;
    println!("φ_0 onto its image is an isomorphism: {}", sub.onto_image().is_isomorphism());

    println!("{}", verify_branched(&y, 5)?);
    println!("{}", verify_branched_hat(&y, 5)?);
    Ok(())
}
