//! Refinement-based transforms: embeddings to subsequences, and defect repair.

use std::collections::HashMap;

use super::{DeltaMorphism, MorphismError, Result};
use crate::deltaseq::{AbstractDeltaSequence, Position};

/// A refined source mapped isomorphically onto a subsequence of a refined target.
#[derive(Clone, Debug)]
pub struct SubsequenceEmbedding {
    pub morphism: DeltaMorphism,
}

impl SubsequenceEmbedding {
    pub fn source(&self) -> &AbstractDeltaSequence {
        self.morphism.source()
    }

    pub fn target(&self) -> &AbstractDeltaSequence {
        self.morphism.target()
    }

    /// The delta subsequence of the target hit by the map.
    pub fn image(&self) -> AbstractDeltaSequence {
        let keep: Vec<Position> = self.morphism.pairs().map(|(_, w)| w.clone()).collect();
        self.target()
            .subsequence(&keep)
            .expect("image of a morphism starts with a positive value")
    }

    /// The map read as a morphism onto [`Self::image`]; it is an isomorphism.
    pub fn onto_image(&self) -> DeltaMorphism {
        let image = self.image();
        let map = (0..image.len()).collect();
        DeltaMorphism::from_parts(self.source().clone(), image, map)
    }
}

/// Refines target fibers until the map is injective and value-matched, then
/// sorts each same-sign run of the source by image through adjacent swaps.
pub fn embed_to_subsequence(m: &DeltaMorphism) -> Result<SubsequenceEmbedding> {
    if !m.is_embedding() {
        return Err(MorphismError::NotEmbedding);
    }
    let source = m.source();
    let target = m.target();
    let src_values = source.values();

    let mut plan = HashMap::new();
    let mut image: Vec<Position> = vec![Position::new(0); source.len()];
    for (j, fiber) in m.fibers() {
        let z = &target.positions()[j];
        let total = target.values()[j];
        let mut parts: Vec<i64> = fiber.iter().map(|&i| src_values[i]).collect();
        let rest = total - parts.iter().sum::<i64>();
        if rest != 0 {
            parts.push(rest);
        }
        if parts.len() == 1 {
            image[fiber[0]] = z.clone();
            continue;
        }
        for (n, &i) in fiber.iter().enumerate() {
            image[i] = z.child(n as u32);
        }
        plan.insert(z.clone(), parts);
    }
    let refined = target.refine_all(&plan)?;
    let mut map: Vec<usize> = image
        .iter()
        .map(|w| refined.index_of(w).expect("refined image exists"))
        .collect();

    // swapping adjacent same-sign values is a merge followed by a refinement
    let mut values = src_values.to_vec();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for i in 0..values.len().saturating_sub(1) {
            if (values[i] > 0) == (values[i + 1] > 0) && map[i] > map[i + 1] {
                values.swap(i, i + 1);
                map.swap(i, i + 1);
                swapped = true;
            }
        }
    }
    let new_source = AbstractDeltaSequence::new(source.positions().to_vec(), values)?;
    Ok(SubsequenceEmbedding {
        morphism: DeltaMorphism::from_parts(new_source, refined, map),
    })
}

/// Splits every bad point and every controlling good value in two so the map
/// has no bad points left.
pub fn fix_defects(m: &DeltaMorphism, theta: &[(Position, Position)]) -> Result<DeltaMorphism> {
    m.check_control_function(theta)
        .map_err(MorphismError::NotControlled)?;
    let source = m.source();
    let target = m.target();
    let index = |seq: &AbstractDeltaSequence, z: &Position| seq.index_of(z).unwrap();

    let mut src_plan = Vec::with_capacity(theta.len());
    let mut tgt_plan = Vec::with_capacity(theta.len());
    let mut links = Vec::with_capacity(theta.len());
    for (b, good) in theta {
        let (ib, igood) = (index(source, b), index(source, good));
        let (jb, jg) = (m.map[ib], m.map[igood]);
        let (d1_b, d2_b) = (source.values()[ib], target.values()[jb]);
        let (d1_good, d2_g) = (source.values()[igood], target.values()[jg]);
        src_plan.push((ib, vec![d2_b, d1_b - d2_b]));
        tgt_plan.push((jg, vec![d1_good, d2_g - d1_good]));
        links.push((ib, jb, jg));
    }
    src_plan.sort_unstable_by_key(|(i, _)| *i);
    tgt_plan.sort_unstable_by_key(|(j, _)| *j);
    let (new_source, src_at) = source.refine_indices(&src_plan)?;
    let (new_target, tgt_at) = target.refine_indices(&tgt_plan)?;

    // an unsplit target keeps its index at tgt_at[j]; a split good image sends
    // its good point to the first part, which sits at the same index
    let mut map = vec![usize::MAX; new_source.len()];
    for (i, &j) in m.map.iter().enumerate() {
        map[src_at[i]] = tgt_at[j];
    }
    for (ib, jb, jg) in links {
        map[src_at[ib]] = tgt_at[jb];
        map[src_at[ib] + 1] = tgt_at[jg] + 1;
    }
    debug_assert!(map.iter().all(|&j| j != usize::MAX));
    Ok(DeltaMorphism::from_parts(new_source, new_target, map))
}
