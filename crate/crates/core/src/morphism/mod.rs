//! Maps between delta sequences and the classes they fall into.
//!
//! A [`DeltaMorphism`] stores only source, target and the index map; every
//! property is recomputed from the two sequences on demand. The validators are
//! single left-to-right scans over the source.

mod families;
mod semigroup;
mod transform;

pub use families::{
    branched_cover_embeddings, branched_cover_embeddings_at, partial_order_immersion,
    pinch_semi_immersion, rigid_extend, BranchedFamily, PinchWitness, RigidViolation,
};
pub use semigroup::TwoGenSemigroup;
pub use transform::{embed_to_subsequence, fix_defects, SubsequenceEmbedding};

use std::collections::{HashMap, HashSet};

use serde::ser::Serializer;
use serde::Serialize;
use thiserror::Error;

use crate::arith::ArithError;
use crate::deltaseq::{AbstractDeltaSequence, DeltaSeqError, Position};
use crate::seifert::{SeifertError, SeifertTuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("source position {0} has no image")]
    NotTotal(Position),
    #[error("position {0} is not in the sequence")]
    UnknownPosition(Position),
    #[error("source position {0} is mapped twice")]
    DuplicateSource(Position),
    #[error("map is not an embedding")]
    NotEmbedding,
    #[error("map is not a one-to-one semi-immersion")]
    NotSemiImmersion,
    #[error("not a control function: {0}")]
    NotControlled(ControlViolation),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("tuples are not comparable componentwise")]
    NotComparable,
    #[error("{0} is degenerate")]
    Degenerate(SeifertTuple),
    #[error("map is not rigid: {0}")]
    NotRigid(RigidViolation),
    #[error("{0} is not a member of the semigroup")]
    NotMember(i64),
    #[error("{0} is not a bad point")]
    NotBad(i64),
    #[error("image {0} is not a position of the target")]
    NotInTarget(i64),
    #[error("generators must be at least 2, got {0}")]
    BadGenerator(i64),
    #[error("fiber index {0} is out of range")]
    BadFiber(usize),
    #[error(transparent)]
    DeltaSeq(#[from] DeltaSeqError),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Result<T> = std::result::Result<T, MorphismError>;

/// The first reason a candidate θ fails the control-function conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ControlViolation {
    NotInjective(Position),
    DomainMismatch(Position),
    NotGood(Position),
    SignMismatch(Position),
    WrongDirection(Position),
    DefectTooLarge(Position),
    UnknownPosition(Position),
    NotOneToOneSemiImmersion,
}

impl std::fmt::Display for ControlViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NotInjective(z) => write!(f, "two bad points share the image {z}"),
            Self::DomainMismatch(z) => write!(f, "domain differs from the bad set at {z}"),
            Self::NotGood(z) => write!(f, "{z} is not a good point"),
            Self::SignMismatch(z) => write!(f, "{z} and its image lie on different sides"),
            Self::WrongDirection(z) => write!(f, "image of {z} lies on the wrong side of it"),
            Self::DefectTooLarge(z) => write!(f, "defect at {z} exceeds that of its image"),
            Self::UnknownPosition(z) => write!(f, "{z} is not a source position"),
            Self::NotOneToOneSemiImmersion => f.write_str("map is not a one-to-one semi-immersion"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMorphism {
    source: AbstractDeltaSequence,
    target: AbstractDeltaSequence,
    /// `map[i]` is the target index of source index `i`.
    map: Vec<usize>,
}

impl DeltaMorphism {
    /// Builds a total map from `(source position, target position)` pairs.
    pub fn new(
        source: AbstractDeltaSequence,
        target: AbstractDeltaSequence,
        pairs: impl IntoIterator<Item = (Position, Position)>,
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; source.len()];
        for (z, w) in pairs {
            let i = source.index_of(&z).ok_or_else(|| MorphismError::UnknownPosition(z.clone()))?;
            let j = target.index_of(&w).ok_or(MorphismError::UnknownPosition(w))?;
            if map[i] != usize::MAX {
                return Err(MorphismError::DuplicateSource(z));
            }
            map[i] = j;
        }
        if let Some(i) = map.iter().position(|&j| j == usize::MAX) {
            return Err(MorphismError::NotTotal(source.positions()[i].clone()));
        }
        Ok(Self { source, target, map })
    }

    /// Maps integer-labelled positions by `f`; every image must be a target position.
    pub fn from_fn(
        source: AbstractDeltaSequence,
        target: AbstractDeltaSequence,
        f: impl FnMut(i64) -> i64,
    ) -> Result<Self> {
        let images: Vec<i64> = source.positions().iter().map(|z| z.base()).map(f).collect();
        Self::from_images(source, target, &images)
    }

    /// `images[i]` is the integer target label of source index `i`.
    pub fn from_images(
        source: AbstractDeltaSequence,
        target: AbstractDeltaSequence,
        images: &[i64],
    ) -> Result<Self> {
        if let Some(z) = source.positions().iter().find(|z| z.as_int().is_none()) {
            return Err(MorphismError::UnknownPosition(z.clone()));
        }
        let labels: Option<Vec<i64>> = target.positions().iter().map(Position::as_int).collect();
        let map = match labels {
            Some(labels) => images
                .iter()
                .map(|&w| labels.binary_search(&w).map_err(|_| MorphismError::NotInTarget(w)))
                .collect::<Result<Vec<_>>>()?,
            None => images
                .iter()
                .map(|&w| {
                    target
                        .index_of(&Position::new(w))
                        .ok_or(MorphismError::NotInTarget(w))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(Self { source, target, map })
    }

    pub fn identity(seq: AbstractDeltaSequence) -> Self {
        let map = (0..seq.len()).collect();
        Self { source: seq.clone(), target: seq, map }
    }

    pub fn source(&self) -> &AbstractDeltaSequence {
        &self.source
    }

    pub fn target(&self) -> &AbstractDeltaSequence {
        &self.target
    }

    pub fn index_map(&self) -> &[usize] {
        &self.map
    }

    pub fn image_of(&self, z: &Position) -> Option<&Position> {
        self.source.index_of(z).map(|i| &self.target.positions()[self.map[i]])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Position, &Position)> + '_ {
        self.source
            .positions()
            .iter()
            .zip(&self.map)
            .map(|(z, &j)| (z, &self.target.positions()[j]))
    }

    fn src(&self, i: usize) -> i64 {
        self.source.values()[i]
    }

    fn tgt(&self, i: usize) -> i64 {
        self.target.values()[self.map[i]]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    /// `φ(S₁) ⊆ S₂` and `φ(Q₁) ⊆ Q₂`.
    pub fn is_morphism(&self) -> bool {
        (0..self.map.len()).all(|i| (self.src(i) > 0) == (self.tgt(i) > 0))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_morphism()
            && self.source.len() == self.target.len()
            && self.map.iter().enumerate().all(|(i, &j)| i == j)
            && self.source.values() == self.target.values()
    }

    /// With `both_ways`, S-before-Q and Q-before-S orders must both survive;
    /// otherwise only S-before-Q.
    fn mixed_order_holds(&self, both_ways: bool) -> bool {
        let (mut max_s, mut max_q): (Option<usize>, Option<usize>) = (None, None);
        for (i, &j) in self.map.iter().enumerate() {
            if self.src(i) > 0 {
                if both_ways && max_q.is_some_and(|m| m >= j) {
                    return false;
                }
                max_s = max_s.max(Some(j));
            } else {
                if max_s.is_some_and(|m| m >= j) {
                    return false;
                }
                max_q = max_q.max(Some(j));
            }
        }
        true
    }

    /// Every image point carries at least the total size mapped onto it.
    pub fn capacity_holds(&self) -> bool {
        let mut load = vec![0i64; self.target.len()];
        for (i, &j) in self.map.iter().enumerate() {
            load[j] += self.src(i).abs();
        }
        load.iter()
            .zip(self.target.values())
            .all(|(&l, v)| l <= v.abs())
    }

    pub fn is_embedding(&self) -> bool {
        self.is_morphism() && self.mixed_order_holds(true) && self.capacity_holds()
    }

    pub fn is_semi_immersion(&self) -> bool {
        self.is_morphism() && self.mixed_order_holds(false)
    }

    pub fn is_immersion(&self) -> bool {
        self.is_semi_immersion() && self.capacity_holds()
    }

    pub fn is_right_veering(&self) -> bool {
        if !self.is_bijective() || !self.is_semi_immersion() {
            return false;
        }
        let (mut last_s, mut last_q): (Option<usize>, Option<usize>) = (None, None);
        for (i, &j) in self.map.iter().enumerate() {
            if self.src(i) != self.tgt(i) {
                return false;
            }
            let last = if self.src(i) > 0 { &mut last_s } else { &mut last_q };
            if last.is_some_and(|l| l >= j) {
                return false;
            }
            *last = Some(j);
        }
        true
    }

    pub fn defect_table(&self) -> Result<DefectTable> {
        if !self.is_injective() || !self.is_semi_immersion() {
            return Err(MorphismError::NotSemiImmersion);
        }
        let defects: Vec<i64> = (0..self.map.len())
            .map(|i| self.src(i).abs() - self.tgt(i).abs())
            .collect();
        Ok(DefectTable { positions: self.source.positions().to_vec(), defects })
    }

    pub fn check_control_function(
        &self,
        theta: &[(Position, Position)],
    ) -> std::result::Result<(), ControlViolation> {
        let table = self
            .defect_table()
            .map_err(|_| ControlViolation::NotOneToOneSemiImmersion)?;
        let index = |z: &Position| {
            self.source
                .index_of(z)
                .ok_or_else(|| ControlViolation::UnknownPosition(z.clone()))
        };
        let mut domain = HashSet::new();
        let mut images = HashSet::new();
        for (b, g) in theta {
            let (ib, ig) = (index(b)?, index(g)?);
            if table.defects[ib] <= 0 || !domain.insert(ib) {
                return Err(ControlViolation::DomainMismatch(b.clone()));
            }
            if !images.insert(ig) {
                return Err(ControlViolation::NotInjective(g.clone()));
            }
            if table.defects[ig] >= 0 {
                return Err(ControlViolation::NotGood(g.clone()));
            }
            let in_s = self.src(ib) > 0;
            if in_s != (self.src(ig) > 0) {
                return Err(ControlViolation::SignMismatch(b.clone()));
            }
            if (in_s && ig >= ib) || (!in_s && ig <= ib) {
                return Err(ControlViolation::WrongDirection(b.clone()));
            }
            if table.defects[ib].abs() > table.defects[ig].abs() {
                return Err(ControlViolation::DefectTooLarge(b.clone()));
            }
        }
        if let Some(missing) = table.bad().find(|z| !domain.contains(&self.source.index_of(z).unwrap())) {
            return Err(ControlViolation::DomainMismatch(missing.clone()));
        }
        Ok(())
    }

    pub fn is_control_function(&self, theta: &[(Position, Position)]) -> bool {
        self.check_control_function(theta).is_ok()
    }

    /// Target index per source index, keyed by target position.
    pub(crate) fn fibers(&self) -> HashMap<usize, Vec<usize>> {
        let mut fibers: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &j) in self.map.iter().enumerate() {
            fibers.entry(j).or_default().push(i);
        }
        fibers
    }

    pub(crate) fn from_parts(
        source: AbstractDeltaSequence,
        target: AbstractDeltaSequence,
        map: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(source.len(), map.len());
        Self { source, target, map }
    }
}

impl Serialize for DeltaMorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            source: &'a AbstractDeltaSequence,
            target: &'a AbstractDeltaSequence,
            map: Vec<(&'a Position, &'a Position)>,
        }
        Wire {
            source: &self.source,
            target: &self.target,
            map: self.pairs().collect(),
        }
        .serialize(s)
    }
}

/// `d(z) = |Δ₁(z)| - |Δ₂(φ(z))|` for every source position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectTable {
    positions: Vec<Position>,
    defects: Vec<i64>,
}

impl DefectTable {
    pub fn defect(&self, z: &Position) -> Option<i64> {
        self.positions.binary_search(z).ok().map(|i| self.defects[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Position, i64)> + '_ {
        self.positions.iter().zip(self.defects.iter().copied())
    }

    pub fn bad(&self) -> impl Iterator<Item = &Position> + '_ {
        self.entries().filter(|&(_, d)| d > 0).map(|(z, _)| z)
    }

    pub fn good(&self) -> impl Iterator<Item = &Position> + '_ {
        self.entries().filter(|&(_, d)| d < 0).map(|(z, _)| z)
    }

    pub fn neutral(&self) -> impl Iterator<Item = &Position> + '_ {
        self.entries().filter(|&(_, d)| d == 0).map(|(z, _)| z)
    }

    pub fn max_abs_defect(&self) -> i64 {
        self.defects.iter().map(|d| d.abs()).max().unwrap_or(0)
    }
}
