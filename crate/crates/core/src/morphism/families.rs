//! The explicit maps between Seifert delta sequences: branched-cover
//! embeddings, the normal-form immersion, and the vertical-pinch map.

use std::fmt;

use super::{DeltaMorphism, MorphismError, Result, TwoGenSemigroup};
use crate::arith;
use crate::deltaseq::{AbstractDeltaSequence, Position};
use crate::seifert::{SeifertError, SeifertTuple};

fn tuple(raw: &[i64]) -> Result<SeifertTuple> {
    SeifertTuple::new(raw).map_err(|e| match e {
        SeifertError::NotCoprime(a, b) => MorphismError::NotCoprime(a, b),
        other => other.into(),
    })
}

fn sequence(t: &SeifertTuple) -> Result<AbstractDeltaSequence> {
    if t.is_degenerate() {
        return Err(MorphismError::Degenerate(t.clone()));
    }
    Ok(AbstractDeltaSequence::from_seifert(t)?)
}

/// `φ_k(z) = n z + k P/p` for `k = 0, …, n-1`, into the sphere with `p` replaced by `n p`.
#[derive(Clone, Debug)]
pub struct BranchedFamily {
    pub source: SeifertTuple,
    pub target: SeifertTuple,
    pub n: i64,
    /// `P / p` for the covered fiber `p`.
    pub shift: i64,
    pub morphisms: Vec<DeltaMorphism>,
}

impl BranchedFamily {
    pub fn images_disjoint(&self) -> bool {
        let mut hit = vec![false; self.morphisms.first().map_or(0, |m| m.target().len())];
        self.morphisms
            .iter()
            .flat_map(|m| m.index_map())
            .all(|&j| !std::mem::replace(&mut hit[j], true))
    }

    pub fn values_preserved(&self) -> bool {
        self.morphisms.iter().all(|m| {
            m.index_map()
                .iter()
                .zip(m.source().values())
                .all(|(&j, &v)| m.target().values()[j] == v)
        })
    }
}

/// Branched covers along the largest fiber.
pub fn branched_cover_embeddings(t: &SeifertTuple, n: i64) -> Result<BranchedFamily> {
    let last = t.len().checked_sub(1).ok_or(MorphismError::BadFiber(0))?;
    branched_cover_embeddings_at(t, last, n)
}

/// Branched covers along the fiber at `fiber` (an index into the sorted tuple).
pub fn branched_cover_embeddings_at(t: &SeifertTuple, fiber: usize, n: i64) -> Result<BranchedFamily> {
    let ps = t.multiplicities();
    if fiber >= ps.len() {
        return Err(MorphismError::BadFiber(fiber));
    }
    if n < 1 {
        return Err(MorphismError::BadGenerator(n));
    }
    for (i, &p) in ps.iter().enumerate() {
        if i != fiber && arith::gcd(n, p) != 1 {
            return Err(MorphismError::NotCoprime(n, p));
        }
    }
    let mut raw = ps.to_vec();
    raw[fiber] = arith::checked_mul(raw[fiber], n)?;
    let target_tuple = tuple(&raw)?;
    let source = sequence(t)?;
    let target = AbstractDeltaSequence::from_seifert(&target_tuple)?;
    let shift = t.product()? / ps[fiber];

    let morphisms = (0..n)
        .map(|k| {
            let images: Vec<i64> = source
                .positions()
                .iter()
                .map(|z| n * z.base() + k * shift)
                .collect();
            DeltaMorphism::from_images(source.clone(), target.clone(), &images)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BranchedFamily {
        source: t.clone(),
        target: target_tuple,
        n,
        shift,
        morphisms,
    })
}

/// `P(k + Σ x_i/p_i) ↦ P'(k + Σ x_i/q_i)` on `S`, reflected onto `Q`.
pub fn partial_order_immersion(t: &SeifertTuple, t2: &SeifertTuple) -> Result<DeltaMorphism> {
    if t.len() != t2.len()
        || t.multiplicities().iter().zip(t2.multiplicities()).any(|(p, q)| p > q)
    {
        return Err(MorphismError::NotComparable);
    }
    let source = sequence(t)?;
    let target = sequence(t2)?;
    let (s1, s2) = (t.sphere_data()?, t2.sphere_data()?);
    let (n1, n2) = (s1.n_cutoff(), s2.n_cutoff());
    let p2 = s2.product();

    let forward = |x: i64| -> Result<i64> {
        let nf = s1.membership(x)?;
        let mut image = arith::checked_mul(nf.k, p2)?;
        for (&xi, &c) in nf.x.iter().zip(s2.cofactors()) {
            image = arith::checked_add(image, arith::checked_mul(xi, c)?)?;
        }
        Ok(image)
    };
    let images = source
        .positions()
        .iter()
        .zip(source.values())
        .map(|(z, &v)| {
            if v > 0 {
                forward(z.base())
            } else {
                Ok(n2 - forward(n1 - z.base())?)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    DeltaMorphism::from_images(source, target, &images)
}

/// Why a candidate map on `S` is not rigid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidViolation {
    MissingPoint(i64),
    NotInjective(i64),
    Decreasing(i64),
    TooFar(i64),
}

impl fmt::Display for RigidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingPoint(x) => write!(f, "no image given for {x}"),
            Self::NotInjective(x) => write!(f, "image of {x} is shared"),
            Self::Decreasing(x) => write!(f, "φ({x}) < {x}"),
            Self::TooFar(x) => write!(f, "φ({x}) - {x} exceeds half the cutoff difference"),
        }
    }
}

/// Extends a rigid map on `S` to all of `X` by `φ(N - x) = N' - φ(x)`.
pub fn rigid_extend(
    source: AbstractDeltaSequence,
    target: AbstractDeltaSequence,
    partial: &[(i64, i64)],
    n_source: i64,
    n_target: i64,
) -> Result<DeltaMorphism> {
    let mut on_s = partial.to_vec();
    on_s.sort_unstable();
    on_s.dedup();
    let mut by_image: Vec<(i64, i64)> = on_s.iter().map(|&(x, y)| (y, x)).collect();
    by_image.sort_unstable();
    if let Some(w) = by_image.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(MorphismError::NotRigid(RigidViolation::NotInjective(w[1].1)));
    }
    for &(x, y) in &on_s {
        if y < x {
            return Err(MorphismError::NotRigid(RigidViolation::Decreasing(x)));
        }
        if 2 * (y - x) > n_target - n_source {
            return Err(MorphismError::NotRigid(RigidViolation::TooFar(x)));
        }
    }
    let images = source
        .positions()
        .iter()
        .zip(source.values())
        .map(|(z, &v)| {
            let x = if v > 0 { z.base() } else { n_source - z.base() };
            let y = on_s
                .binary_search_by_key(&x, |&(a, _)| a)
                .map(|k| on_s[k].1)
                .map_err(|_| MorphismError::NotRigid(RigidViolation::MissingPoint(x)))?;
            Ok(if v > 0 { y } else { n_target - y })
        })
        .collect::<Result<Vec<_>>>()?;
    DeltaMorphism::from_images(source, target, &images)
}

/// The pinch map `Σ(t, qr) → Σ(t, q, r)` with its control function.
#[derive(Clone, Debug)]
pub struct PinchWitness {
    pub source: SeifertTuple,
    pub target: SeifertTuple,
    pub semigroup: TwoGenSemigroup,
    pub morphism: DeltaMorphism,
    /// Bad point to its controlling good point.
    pub theta: Vec<(Position, Position)>,
}

pub fn pinch_semi_immersion(t: &[i64], q: i64, r: i64) -> Result<PinchWitness> {
    let semigroup = TwoGenSemigroup::new(q, r)?;
    let qr = arith::checked_mul(q, r)?;
    let fixed: Vec<i64> = t.iter().copied().filter(|&p| p != 1).collect();
    let target_tuple = tuple(&[fixed.as_slice(), &[q, r]].concat())?;
    let source_tuple = tuple(&[fixed.as_slice(), &[qr]].concat())?;
    let source = sequence(&source_tuple)?;
    let target = sequence(&target_tuple)?;
    let sy = source_tuple.sphere_data()?;
    let n_source = sy.n_cutoff();
    let n_target = target_tuple.n_cutoff()?;
    let p0 = arith::checked_product(&fixed)?;
    let py = sy.product();

    // x = P0 [z + qr Σ x_i/p_i]; residues x_i only over the fixed fibers
    let residues: Vec<(i64, i64, i64)> = fixed
        .iter()
        .map(|&p| {
            let c = py / p;
            Ok((p, c, arith::mod_inverse(c, p)?))
        })
        .collect::<Result<_>>()?;
    let pi = |x: i64| -> i64 {
        let mut rest = x as i128;
        for &(p, c, inv) in &residues {
            let xi = (x.rem_euclid(p) as i128 * inv as i128) % p as i128;
            rest -= xi * c as i128;
        }
        debug_assert_eq!(rest % p0 as i128, 0);
        (rest / p0 as i128) as i64
    };

    let partial: Vec<(i64, i64)> = source
        .positions()
        .iter()
        .zip(source.values())
        .filter(|(_, &v)| v > 0)
        .map(|(z, _)| {
            let x = z.base();
            let zx = pi(x);
            (x, x + p0 * (semigroup.psi(zx) - zx))
        })
        .collect();
    let morphism = rigid_extend(source, target, &partial, n_source, n_target)?;

    let table = morphism.defect_table()?;
    let theta_s = |x: i64| -> Result<i64> {
        let zx = pi(x);
        Ok(x - p0 * (zx - semigroup.theta(zx)?))
    };
    let theta = table
        .bad()
        .map(|b| {
            let v = morphism.source().value_at(b).unwrap();
            let image = if v > 0 {
                theta_s(b.base())?
            } else {
                n_source - theta_s(n_source - b.base())?
            };
            Ok((b.clone(), Position::new(image)))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(PinchWitness {
        source: source_tuple,
        target: target_tuple,
        semigroup,
        morphism,
        theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::fix_defects;

    fn t(raw: &[i64]) -> SeifertTuple {
        SeifertTuple::new(raw).unwrap()
    }

    #[test]
    fn branched_two_three_seven() {
        let fam = branched_cover_embeddings(&t(&[2, 3, 7]), 5).unwrap();
        assert_eq!(fam.target, t(&[2, 3, 35]));
        assert_eq!(fam.morphisms.len(), 5);
        let one = Position::new(1);
        assert_eq!(fam.morphisms[0].image_of(&one), Some(&Position::new(5)));
        assert_eq!(fam.morphisms[2].image_of(&one), Some(&Position::new(17)));
        assert!(t(&[2, 3, 35]).sphere_data().unwrap().is_member(29 - 17));
        assert!(fam.morphisms.iter().all(|m| m.is_embedding()));
        assert!(fam.images_disjoint());
        assert!(fam.values_preserved());
    }

    #[test]
    fn branched_identity_and_errors() {
        let fam = branched_cover_embeddings(&t(&[2, 3, 7]), 1).unwrap();
        assert_eq!(fam.morphisms.len(), 1);
        assert!(fam.morphisms[0].is_isomorphism());
        assert!(matches!(
            branched_cover_embeddings(&t(&[2, 3, 7]), 6),
            Err(MorphismError::NotCoprime(6, 2))
        ));
    }

    #[test]
    fn branched_other_fiber() {
        let fam = branched_cover_embeddings_at(&t(&[2, 3, 7]), 0, 5).unwrap();
        assert_eq!(fam.target, t(&[3, 7, 10]));
        assert!(fam.morphisms.iter().all(|m| m.is_embedding()));
        assert!(fam.images_disjoint() && fam.values_preserved());
    }

    #[test]
    fn normal_form_map() {
        let m = partial_order_immersion(&t(&[2, 3, 13]), &t(&[2, 3, 17])).unwrap();
        assert_eq!(m.image_of(&Position::new(6)), Some(&Position::new(6)));
        assert!(m.is_immersion());
        let m = partial_order_immersion(&t(&[2, 3, 7]), &t(&[2, 3, 13])).unwrap();
        assert_eq!(m.image_of(&Position::new(0)), Some(&Position::new(0)));
        assert!(m.is_immersion());
        let m = partial_order_immersion(&t(&[3, 4, 5]), &t(&[3, 4, 5])).unwrap();
        assert!(m.is_isomorphism());
        assert!(matches!(
            partial_order_immersion(&t(&[2, 3, 13]), &t(&[2, 3, 11])),
            Err(MorphismError::NotComparable)
        ));
    }

    #[test]
    fn pinch_examples() {
        for (fixed, q, r) in [(&[2, 3][..], 5, 7), (&[2, 3], 5, 11), (&[2, 5], 3, 7), (&[2, 7], 3, 5)] {
            let w = pinch_semi_immersion(fixed, q, r).unwrap();
            assert!(w.morphism.is_semi_immersion());
            assert!(w.morphism.is_injective());
            assert!(w.morphism.is_control_function(&w.theta));
            assert!(w.morphism.defect_table().unwrap().max_abs_defect() <= 1);
            let fixed_map = fix_defects(&w.morphism, &w.theta).unwrap();
            assert!(fixed_map.is_immersion());
        }
        let w = pinch_semi_immersion(&[2, 3], 5, 7).unwrap();
        assert_eq!(w.source, t(&[2, 3, 35]));
        assert_eq!(w.target, t(&[2, 3, 5, 7]));
    }

    #[test]
    fn rigid_extension_rules() {
        let x = AbstractDeltaSequence::from_seifert(&t(&[2, 3, 13])).unwrap();
        let m = rigid_extend(x.clone(), x.clone(), &[(0, 0), (6, 6)], 7, 7).unwrap();
        assert!(m.is_isomorphism());
        let err = rigid_extend(x.clone(), x, &[(0, 0), (6, 7)], 7, 7);
        assert_eq!(err.unwrap_err(), MorphismError::NotRigid(RigidViolation::TooFar(6)));
    }
}
