//! Abstract delta sequences and their rank formulas.
//!
//! Positions are ordered labels. Seifert-derived sequences use plain integers;
//! refinement appends a sub-index so fresh positions slot in between their
//! neighbours without renumbering anything.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seifert::{SeifertError, SeifertSphere, SeifertTuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaSeqError {
    #[error("positions and values differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("positions are not strictly increasing at {0}")]
    Unsorted(Position),
    #[error("zero value at {0}")]
    ZeroValue(Position),
    #[error("first value is negative")]
    FirstElementNegative,
    #[error("position {0} is not in the sequence")]
    UnknownPosition(Position),
    #[error("parts do not share the sign of {0}")]
    SignMismatch(i64),
    #[error("parts sum to {got}, expected {want}")]
    SumMismatch { want: i64, got: i64 },
    #[error("{parts} parts cannot refine a value of size {value}")]
    TooManyParts { parts: usize, value: i64 },
    #[error("merge run is empty or not consecutive")]
    NotConsecutive,
    #[error("tuple {0} is degenerate")]
    DegenerateTuple(SeifertTuple),
    #[error("S and Q overlap at {0}")]
    Overlap(i64),
    #[error("the two delta formulas disagree at {0}")]
    Inconsistent(i64),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
}

pub type Result<T> = std::result::Result<T, DeltaSeqError>;

/// An ordered position label: an integer base plus an optional refinement path.
///
/// `7 < 7.0 < 7.1 < 8`. A sequence never holds a label together with one of its
/// extensions, so refining keeps the neighbours' order intact.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    base: i64,
    path: Vec<u32>,
}

impl Position {
    pub fn new(base: i64) -> Self {
        Self { base, path: Vec::new() }
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn path(&self) -> &[u32] {
        &self.path
    }

    /// The integer label, if this position was never refined.
    pub fn as_int(&self) -> Option<i64> {
        self.path.is_empty().then_some(self.base)
    }

    pub fn child(&self, index: u32) -> Self {
        let mut path = self.path.clone();
        path.push(index);
        Self { base: self.base, path }
    }
}

impl From<i64> for Position {
    fn from(base: i64) -> Self {
        Self::new(base)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for p in &self.path {
            write!(f, ".{p}")?;
        }
        Ok(())
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.path.is_empty() {
            return s.serialize_i64(self.base);
        }
        let mut seq = s.serialize_seq(Some(self.path.len() + 1))?;
        seq.serialize_element(&self.base)?;
        for p in &self.path {
            seq.serialize_element(&(*p as i64))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Path(Vec<i64>),
        }
        match Raw::deserialize(d)? {
            Raw::Int(base) => Ok(Position::new(base)),
            Raw::Path(v) if !v.is_empty() => {
                let path = v[1..]
                    .iter()
                    .map(|&p| u32::try_from(p).map_err(serde::de::Error::custom))
                    .collect::<std::result::Result<_, _>>()?;
                Ok(Position { base: v[0], path })
            }
            Raw::Path(_) => Err(serde::de::Error::custom("empty position")),
        }
    }
}

/// `κ`, `min τ`, `c` and the two ranks they determine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub kappa: i64,
    pub min_tau: i64,
    pub c: i64,
    pub rank_red: i64,
    pub rank_hat: i64,
}

impl RankReport {
    /// Ranks of S³: everything zero, `rank_hat = 1`.
    pub fn trivial() -> Self {
        Self { kappa: 0, min_tau: 0, c: 0, rank_red: 0, rank_hat: 1 }
    }

    /// Streams the rank formulas over values in position order.
    ///
    /// `min_tau` ranges over every prefix sum, the empty and the full one included.
    pub fn from_values(values: impl IntoIterator<Item = i64>) -> Self {
        let (mut kappa, mut tau, mut min_tau, mut c) = (0i64, 0i64, 0i64, 0i64);
        let mut prev = 0i64;
        for v in values {
            if v < 0 {
                kappa -= v;
            } else if prev < 0 {
                c += 1;
            }
            tau += v;
            min_tau = min_tau.min(tau);
            prev = v;
        }
        if prev < 0 {
            c += 1;
        }
        Self {
            kappa,
            min_tau,
            c,
            rank_red: kappa + min_tau,
            rank_hat: 2 * c + 1,
        }
    }
}

/// A finite, strictly ordered set of positions with nonzero values, first value positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbstractDeltaSequence {
    positions: Vec<Position>,
    values: Vec<i64>,
}

#[derive(Deserialize)]
struct RawSequence {
    positions: Vec<Position>,
    values: Vec<i64>,
}

impl<'de> Deserialize<'de> for AbstractDeltaSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSequence::deserialize(d)?;
        Self::new(raw.positions, raw.values).map_err(serde::de::Error::custom)
    }
}

impl AbstractDeltaSequence {
    pub fn new(positions: Vec<Position>, values: Vec<i64>) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(DeltaSeqError::LengthMismatch(positions.len(), values.len()));
        }
        for w in positions.windows(2) {
            if w[0] >= w[1] {
                return Err(DeltaSeqError::Unsorted(w[1].clone()));
            }
        }
        if let Some(i) = values.iter().position(|&v| v == 0) {
            return Err(DeltaSeqError::ZeroValue(positions[i].clone()));
        }
        if values.first().is_some_and(|&v| v < 0) {
            return Err(DeltaSeqError::FirstElementNegative);
        }
        Ok(Self { positions, values })
    }

    /// Values at positions `0, 1, …, k-1`.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        let positions = (0..values.len() as i64).map(Position::new).collect();
        Self::new(positions, values.to_vec())
    }

    pub fn empty() -> Self {
        Self { positions: Vec::new(), values: Vec::new() }
    }

    pub fn from_seifert(t: &SeifertTuple) -> Result<Self> {
        if t.is_degenerate() {
            return Err(DeltaSeqError::DegenerateTuple(t.clone()));
        }
        let sphere = t.sphere_data()?;
        let pairs = seifert_support(&sphere)?;
        let (positions, values) = pairs.into_iter().map(|(n, v)| (Position::new(n), v)).unzip();
        Ok(Self { positions, values })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn index_of(&self, z: &Position) -> Option<usize> {
        self.positions.binary_search(z).ok()
    }

    pub fn value_at(&self, z: &Position) -> Option<i64> {
        self.index_of(z).map(|i| self.values[i])
    }

    /// `τ(z_0) = 0, …, τ(z⁺)`: prefix sums, length `k + 1`.
    pub fn tau_of(&self) -> Vec<i64> {
        let mut tau = Vec::with_capacity(self.values.len() + 1);
        tau.push(0);
        let mut acc = 0;
        for &v in &self.values {
            acc += v;
            tau.push(acc);
        }
        tau
    }

    pub fn rank_report(&self) -> RankReport {
        RankReport::from_values(self.values.iter().copied())
    }

    fn position_set(&self, subset: &[Position]) -> Result<HashSet<usize>> {
        subset
            .iter()
            .map(|z| self.index_of(z).ok_or_else(|| DeltaSeqError::UnknownPosition(z.clone())))
            .collect()
    }

    fn restrict(&self, keep: impl Fn(usize) -> bool) -> (Vec<Position>, Vec<i64>) {
        (0..self.len())
            .filter(|&i| keep(i))
            .map(|i| (self.positions[i].clone(), self.values[i]))
            .unzip()
    }

    pub fn subsequence(&self, keep: &[Position]) -> Result<Self> {
        let keep = self.position_set(keep)?;
        let (positions, values) = self.restrict(|i| keep.contains(&i));
        Self::new(positions, values)
    }

    /// Restriction to the positions not in `removed`, with leading negatives trimmed.
    pub fn complement(&self, removed: &[Position]) -> Result<Self> {
        let removed = self.position_set(removed)?;
        let (positions, values) = self.restrict(|i| !removed.contains(&i));
        match values.iter().position(|&v| v > 0) {
            Some(first) => Ok(Self {
                positions: positions[first..].to_vec(),
                values: values[first..].to_vec(),
            }),
            None => Ok(Self::empty()),
        }
    }

    /// Replaces the value at `at` by `parts.len()` consecutive fresh positions
    /// `at.0, at.1, …`.
    pub fn refine(&self, at: &Position, parts: &[i64]) -> Result<Self> {
        self.refine_all(&HashMap::from([(at.clone(), parts.to_vec())]))
    }

    /// Several refinements in one pass; `plan` maps each refined position to its parts.
    pub fn refine_all(&self, plan: &HashMap<Position, Vec<i64>>) -> Result<Self> {
        let mut by_index = plan
            .iter()
            .map(|(at, parts)| {
                self.index_of(at)
                    .map(|i| (i, parts.clone()))
                    .ok_or_else(|| DeltaSeqError::UnknownPosition(at.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        by_index.sort_unstable_by_key(|(i, _)| *i);
        Ok(self.refine_indices(&by_index)?.0)
    }

    /// Refines at sorted, distinct indices. Also returns the new index of the
    /// first part of every old index.
    pub(crate) fn refine_indices(&self, plan: &[(usize, Vec<i64>)]) -> Result<(Self, Vec<usize>)> {
        let extra: usize = plan.iter().map(|(_, p)| p.len().saturating_sub(1)).sum();
        let mut positions = Vec::with_capacity(self.len() + extra);
        let mut values = Vec::with_capacity(self.len() + extra);
        let mut offsets = Vec::with_capacity(self.len());
        let mut next = plan.iter().peekable();
        for (i, (z, &value)) in self.positions.iter().zip(&self.values).enumerate() {
            offsets.push(positions.len());
            match next.next_if(|(k, _)| *k == i) {
                Some((_, parts)) => {
                    check_parts(value, parts)?;
                    for (j, &p) in parts.iter().enumerate() {
                        positions.push(z.child(j as u32));
                        values.push(p);
                    }
                }
                None => {
                    positions.push(z.clone());
                    values.push(value);
                }
            }
        }
        debug_assert!(next.next().is_none(), "plan indices sorted and in range");
        Ok((Self { positions, values }, offsets))
    }

    /// Collapses a consecutive same-sign run onto its first position.
    pub fn merge(&self, run: &[Position]) -> Result<Self> {
        let first = run.first().ok_or(DeltaSeqError::NotConsecutive)?;
        let start = self
            .index_of(first)
            .ok_or_else(|| DeltaSeqError::UnknownPosition(first.clone()))?;
        if start + run.len() > self.len() || self.positions[start..start + run.len()] != *run {
            return Err(DeltaSeqError::NotConsecutive);
        }
        let block = &self.values[start..start + run.len()];
        let sign = block[0] > 0;
        if let Some(&bad) = block.iter().find(|&&v| (v > 0) != sign) {
            return Err(DeltaSeqError::SignMismatch(bad));
        }
        let mut positions = self.positions.clone();
        let mut values = self.values.clone();
        positions.drain(start + 1..start + run.len());
        values.drain(start + 1..start + run.len());
        values[start] = block.iter().sum();
        Ok(Self { positions, values })
    }

    /// Maximal same-sign runs summed; equal forms mean equivalent sequences.
    pub fn canonical_form(&self) -> Vec<i64> {
        canonical_values(&self.values)
    }

    pub fn is_equivalent(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

fn check_parts(value: i64, parts: &[i64]) -> Result<()> {
    if parts.iter().any(|&p| p == 0 || (p > 0) != (value > 0)) {
        return Err(DeltaSeqError::SignMismatch(value));
    }
    let got: i64 = parts.iter().sum();
    if got != value {
        return Err(DeltaSeqError::SumMismatch { want: value, got });
    }
    if parts.is_empty() || parts.len() as i64 > value.abs() {
        return Err(DeltaSeqError::TooManyParts { parts: parts.len(), value });
    }
    Ok(())
}

pub fn canonical_values(values: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some(last) if (*last > 0) == (v > 0) => *last += v,
            _ => out.push(v),
        }
    }
    out
}

/// Nonzero `(n, Δ(n))` over `[0, N]`, sorted by `n`: the semigroup part `S` with
/// its mirror image `Q = N - S`.
pub fn seifert_support(sphere: &SeifertSphere) -> Result<Vec<(i64, i64)>> {
    let n_cut = sphere.n_cutoff();
    if n_cut < 0 {
        return Err(DeltaSeqError::DegenerateTuple(sphere.tuple().clone()));
    }
    let mut members = Vec::new();
    let mut failure = None;
    sphere.for_each_member_upto(n_cut, |n, k| {
        if failure.is_none() {
            match sphere.delta_at(n) {
                Ok(d) if d == 1 + k => members.push((n, d)),
                Ok(_) => failure = Some(DeltaSeqError::Inconsistent(n)),
                Err(e) => failure = Some(e.into()),
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    members.sort_unstable();

    // Q in ascending order is the mirror of S read backwards
    let mut merged = Vec::with_capacity(2 * members.len());
    let (mut i, mut j) = (0usize, members.len());
    while i < members.len() || j > 0 {
        let next_s = members.get(i).map(|&(n, _)| n);
        let next_q = (j > 0).then(|| n_cut - members[j - 1].0);
        match (next_s, next_q) {
            (Some(s), Some(q)) if s == q => return Err(DeltaSeqError::Overlap(s)),
            (Some(s), Some(q)) if s < q => {
                merged.push(members[i]);
                i += 1;
            }
            (Some(_), None) => {
                merged.push(members[i]);
                i += 1;
            }
            (_, Some(q)) => {
                let d = sphere.delta_at(q)?;
                debug_assert_eq!(d, -members[j - 1].1);
                merged.push((q, d));
                j -= 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(merged)
}

/// Rank report of `Σ(t)`; degenerate tuples report the ranks of S³.
pub fn rank_report_for_tuple(t: &SeifertTuple) -> Result<RankReport> {
    if t.is_degenerate() {
        return Ok(RankReport::trivial());
    }
    let sphere = t.sphere_data()?;
    let pairs = seifert_support(&sphere)?;
    Ok(RankReport::from_values(pairs.into_iter().map(|(_, v)| v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(values: &[i64]) -> AbstractDeltaSequence {
        AbstractDeltaSequence::from_values(values).unwrap()
    }

    fn pos(v: &[i64]) -> Vec<Position> {
        v.iter().map(|&n| Position::new(n)).collect()
    }

    fn tuple(raw: &[i64]) -> SeifertTuple {
        SeifertTuple::new(raw).unwrap()
    }

    #[test]
    fn from_seifert_examples() {
        let x = AbstractDeltaSequence::from_seifert(&tuple(&[2, 3, 7])).unwrap();
        assert_eq!(x.positions(), pos(&[0, 1]).as_slice());
        assert_eq!(x.values(), &[1, -1]);

        let x = AbstractDeltaSequence::from_seifert(&tuple(&[2, 3, 13])).unwrap();
        assert_eq!(x.positions(), pos(&[0, 1, 6, 7]).as_slice());
        assert_eq!(x.values(), &[1, -1, 1, -1]);

        let x = AbstractDeltaSequence::from_seifert(&tuple(&[2, 3, 35])).unwrap();
        assert_eq!(x.positions(), pos(&[0, 5, 6, 11, 12, 17, 18, 23, 24, 29]).as_slice());
        assert_eq!(x.values(), &[1, -1, 1, -1, 1, -1, 1, -1, 1, -1]);

        assert!(matches!(
            AbstractDeltaSequence::from_seifert(&tuple(&[2, 3, 5])),
            Err(DeltaSeqError::DegenerateTuple(_))
        ));
    }

    #[test]
    fn support_matches_dense_delta() {
        for raw in [[2, 3, 11], [3, 4, 5], [2, 5, 9], [5, 6, 7]] {
            let s = tuple(&raw).sphere_data().unwrap();
            let dense: Vec<(i64, i64)> = (0..=s.n_cutoff())
                .map(|n| (n, s.delta_at(n).unwrap()))
                .filter(|&(_, d)| d != 0)
                .collect();
            assert_eq!(seifert_support(&s).unwrap(), dense);
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(seq(&[1, -1]).tau_of(), vec![0, 1, 0]);
        assert_eq!(seq(&[1, -1, 1, -1]).tau_of(), vec![0, 1, 0, 1, 0]);
        assert_eq!(seq(&[2, -1, 1, -2]).tau_of(), vec![0, 2, 1, 2, 0]);
    }

    #[test]
    fn rank_examples() {
        let r = rank_report_for_tuple(&tuple(&[2, 3, 7])).unwrap();
        assert_eq!(r, RankReport { kappa: 1, min_tau: 0, c: 1, rank_red: 1, rank_hat: 3 });
        assert_eq!(rank_report_for_tuple(&tuple(&[2, 3, 13])).unwrap().rank_red, 2);
        assert_eq!(rank_report_for_tuple(&tuple(&[2, 3, 35])).unwrap().rank_red, 5);
        assert_eq!(rank_report_for_tuple(&tuple(&[2, 3, 5])).unwrap(), RankReport::trivial());
        assert_eq!(AbstractDeltaSequence::empty().rank_report(), RankReport::trivial());
        // min over the closing prefix sum matters here
        assert_eq!(seq(&[1, -3]).rank_report().rank_red, 1);
    }

    #[test]
    fn rank_matches_full_tau() {
        for raw in [[2, 3, 7], [2, 3, 13], [3, 4, 5], [2, 7, 15], [3, 5, 13]] {
            let t = tuple(&raw);
            let tau = t.tau_sequence().unwrap();
            let deltas: Vec<i64> = tau.windows(2).map(|w| w[1] - w[0]).collect();
            let kappa: i64 = deltas.iter().filter(|&&d| d < 0).map(|d| -d).sum();
            let min = *tau.iter().min().unwrap();
            assert_eq!(rank_report_for_tuple(&t).unwrap().rank_red, kappa + min);
        }
    }

    #[test]
    fn subsequence_and_complement() {
        let x = seq(&[1, -1, 1, -1]);
        assert_eq!(x.subsequence(x.positions()).unwrap(), x);
        assert_eq!(x.subsequence(&pos(&[0, 1])).unwrap().values(), &[1, -1]);
        assert_eq!(x.subsequence(&pos(&[1])), Err(DeltaSeqError::FirstElementNegative));
        assert_eq!(x.complement(&[]).unwrap(), x);
        assert_eq!(x.complement(&pos(&[0, 1])).unwrap().values(), &[1, -1]);
        assert!(x.complement(&pos(&[0, 2])).unwrap().is_empty());
    }

    #[test]
    fn refine_and_merge() {
        let x = seq(&[3, -2]);
        let r = x.refine(&Position::new(0), &[1, 2]).unwrap();
        assert_eq!(r.values(), &[1, 2, -2]);
        let r2 = r.refine(&Position::new(1), &[-1, -1]).unwrap();
        assert_eq!(r2.values(), &[1, 2, -1, -1]);
        assert_eq!(
            seq(&[2]).refine(&Position::new(0), &[1, -1, 2]),
            Err(DeltaSeqError::SignMismatch(2))
        );
        assert!(matches!(
            seq(&[2]).refine(&Position::new(0), &[1, 2]),
            Err(DeltaSeqError::SumMismatch { .. })
        ));

        let m = seq(&[1, 2]).merge(&pos(&[0, 1])).unwrap();
        assert_eq!(m.values(), &[3]);
        let m = seq(&[1, -1, -1, -1]).merge(&pos(&[1, 2, 3])).unwrap();
        assert_eq!(m.values(), &[1, -3]);
        assert_eq!(seq(&[1, -1]).merge(&pos(&[0, 1])), Err(DeltaSeqError::SignMismatch(-1)));
        assert_eq!(seq(&[1, 2, 3]).merge(&pos(&[0, 2])), Err(DeltaSeqError::NotConsecutive));
    }

    #[test]
    fn refined_positions_order_between_neighbours() {
        let x = seq(&[2, -2, 1]);
        let r = x.refine(&Position::new(1), &[-1, -1]).unwrap();
        let r = r.refine(&Position::new(0), &[1, 1]).unwrap();
        let labels: Vec<String> = r.positions().iter().map(|p| p.to_string()).collect();
        assert_eq!(labels, ["0.0", "0.1", "1.0", "1.1", "2"]);
        assert_eq!(r.canonical_form(), vec![2, -2, 1]);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(seq(&[1, 2, -1]).canonical_form(), vec![3, -1]);
        assert_eq!(seq(&[3, -1]).canonical_form(), vec![3, -1]);
        assert_eq!(seq(&[1, -1, -2, 4]).canonical_form(), vec![1, -3, 4]);
    }

    #[test]
    fn json_shape() {
        let r = seq(&[2, -1]).refine(&Position::new(0), &[1, 1]).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"positions":[[0,0],[0,1],1],"values":[1,1,-1]}"#);
        let back: AbstractDeltaSequence = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<AbstractDeltaSequence>(r#"{"positions":[0],"values":[-1]}"#).is_err());
    }

    fn arb_values() -> impl Strategy<Value = Vec<i64>> {
        (1i64..5, proptest::collection::vec((-4i64..5).prop_filter("nonzero", |v| *v != 0), 0..30))
            .prop_map(|(first, mut rest)| {
                rest.insert(0, first);
                rest
            })
    }

    proptest! {
        #[test]
        fn canonical_form_idempotent(values in arb_values()) {
            let x = seq(&values);
            let once = x.canonical_form();
            prop_assert_eq!(canonical_values(&once), once.clone());
            let y = seq(&once);
            prop_assert_eq!(x.rank_report().rank_red, y.rank_report().rank_red);
            prop_assert_eq!(x.rank_report().rank_hat, y.rank_report().rank_hat);
        }

        #[test]
        fn subsequence_inequalities(values in arb_values(), mask in proptest::collection::vec(any::<bool>(), 31)) {
            let x = seq(&values);
            let mut keep: Vec<Position> = x.positions().iter().zip(&mask).filter(|(_, &m)| m).map(|(p, _)| p.clone()).collect();
            // force a valid subsequence start
            if let Some(first_pos) = keep.iter().position(|p| x.value_at(p).unwrap() > 0) {
                keep.drain(..first_pos);
            } else {
                keep.clear();
            }
            let sub = x.subsequence(&keep).unwrap();
            let comp = x.complement(&keep).unwrap();
            let whole = x.rank_report();
            prop_assert!(sub.rank_report().rank_red + comp.rank_report().rank_red <= whole.rank_red);
            prop_assert!(sub.rank_report().rank_hat <= whole.rank_hat);
        }
    }
}
