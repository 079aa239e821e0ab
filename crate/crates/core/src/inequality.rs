//! End-to-end checks of the rank inequalities: each verifier builds the witness
//! maps, validates them, computes both ranks twice and compares.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::botany::canonical_tuples;
use crate::deltaseq::{rank_report_for_tuple, DeltaSeqError};
use crate::gradedroot::{GradedRoot, GradedRootError};
use crate::morphism::{
    branched_cover_embeddings, fix_defects, partial_order_immersion, pinch_semi_immersion,
    MorphismError,
};
use crate::seifert::{SeifertError, SeifertTuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InequalityError {
    #[error("ranks of {tuple} disagree: delta sequence gives {formula:?}, graded root gives {tree:?}")]
    RankDisagreement {
        tuple: SeifertTuple,
        formula: (i64, i64),
        tree: (i64, i64),
    },
    #[error("illegal move on {tuple}: {reason}")]
    IllegalMove { tuple: SeifertTuple, reason: String },
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    DeltaSeq(#[from] DeltaSeqError),
    #[error(transparent)]
    GradedRoot(#[from] GradedRootError),
}

pub type Result<T> = std::result::Result<T, InequalityError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    Branched,
    BranchedHat,
    Pinch,
    Monotone,
    DegreeMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleRanks {
    pub tuple: SeifertTuple,
    pub rank_red: i64,
    pub rank_hat: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: Statement,
    pub inputs: Vec<SeifertTuple>,
    pub ranks: Vec<TupleRanks>,
    pub checks: Vec<Check>,
    pub degree: i64,
    /// The inequality reads `lhs ≤ rhs`.
    pub lhs: i64,
    pub rhs: i64,
    pub verdict: Verdict,
}

impl VerificationReport {
    fn finish(
        statement: Statement,
        inputs: Vec<SeifertTuple>,
        ranks: Vec<TupleRanks>,
        checks: Vec<Check>,
        degree: i64,
        lhs: i64,
        rhs: i64,
    ) -> Self {
        let verdict = if lhs <= rhs && checks.iter().all(|c| c.passed) {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        Self { statement, inputs, ranks, checks, degree, lhs, rhs, verdict }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &str> + '_ {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds() { "holds" } else { "FAILS" };
        write!(f, "{:?}: {} <= {} {verdict}", self.statement, self.lhs, self.rhs)
    }
}

fn check(name: &str, passed: bool) -> Check {
    Check { name: name.to_string(), passed }
}

/// Reduced and hat ranks, once from the delta-sequence formulas and once from
/// the graded root of the full tau sequence; errors unless both agree.
pub fn tuple_ranks(t: &SeifertTuple) -> Result<TupleRanks> {
    let report = rank_report_for_tuple(t)?;
    if !t.is_degenerate() {
        let tau = t.sphere_data()?.tau_sequence()?;
        let root = GradedRoot::from_tau(&tau)?;
        let tree = (root.red_rank() as i64, root.hat_rank() as i64);
        if tree != (report.rank_red, report.rank_hat) {
            return Err(InequalityError::RankDisagreement {
                tuple: t.clone(),
                formula: (report.rank_red, report.rank_hat),
                tree,
            });
        }
    }
    Ok(TupleRanks {
        tuple: t.clone(),
        rank_red: report.rank_red,
        rank_hat: report.rank_hat,
    })
}

fn with_replaced(t: &SeifertTuple, index: usize, value: i64) -> Result<SeifertTuple> {
    let mut raw = t.multiplicities().to_vec();
    raw[index] = value;
    Ok(SeifertTuple::new(&raw)?)
}

/// Validated branched-cover family along the largest fiber, with the ranks of
/// both ends.
fn branched_parts(t: &SeifertTuple, n: i64) -> Result<(SeifertTuple, Vec<Check>)> {
    if t.is_degenerate() {
        // Σ(t) has trivial reduced homology, nothing to embed
        let last = t.len().checked_sub(1).ok_or_else(|| InequalityError::IllegalMove {
            tuple: t.clone(),
            reason: "no fiber to cover".into(),
        })?;
        let target = with_replaced(t, last, t.multiplicities()[last] * n)?;
        return Ok((target, vec![check("source_trivial", true)]));
    }
    let family = branched_cover_embeddings(t, n)?;
    let checks = vec![
        check("family_size", family.morphisms.len() as i64 == n),
        check("embeddings", family.morphisms.iter().all(|m| m.is_embedding())),
        check("values_preserved", family.values_preserved()),
        check("images_disjoint", family.images_disjoint()),
    ];
    Ok((family.target, checks))
}

/// `n · rank(Σ(t)) ≤ rank(Σ(t'))` where `t'` multiplies the largest fiber by `n`.
pub fn verify_branched(t: &SeifertTuple, n: i64) -> Result<VerificationReport> {
    let (target, checks) = branched_parts(t, n)?;
    let (small, big) = (tuple_ranks(t)?, tuple_ranks(&target)?);
    let (lhs, rhs) = (n * small.rank_red, big.rank_red);
    Ok(VerificationReport::finish(
        Statement::Branched,
        vec![t.clone(), target],
        vec![small, big],
        checks,
        n,
        lhs,
        rhs,
    ))
}

/// `rank_hat(Σ(t)) ≤ rank_hat(Σ(t'))` for the same covers.
pub fn verify_branched_hat(t: &SeifertTuple, n: i64) -> Result<VerificationReport> {
    let (target, checks) = branched_parts(t, n)?;
    let (small, big) = (tuple_ranks(t)?, tuple_ranks(&target)?);
    let (lhs, rhs) = (small.rank_hat, big.rank_hat);
    Ok(VerificationReport::finish(
        Statement::BranchedHat,
        vec![t.clone(), target],
        vec![small, big],
        checks,
        n,
        lhs,
        rhs,
    ))
}

/// `rank(Σ(t, qr)) ≤ rank(Σ(t, q, r))`.
pub fn verify_pinch(t: &[i64], q: i64, r: i64) -> Result<VerificationReport> {
    let qr = crate::arith::checked_mul(q, r).map_err(SeifertError::from)?;
    let source = SeifertTuple::new(&[t, &[qr]].concat())?;
    let target = SeifertTuple::new(&[t, &[q, r]].concat())?;
    let checks = if source.is_degenerate() {
        vec![check("source_trivial", true)]
    } else {
        let w = pinch_semi_immersion(t, q, r)?;
        let table = w.morphism.defect_table()?;
        let fixed = fix_defects(&w.morphism, &w.theta);
        let mut checks = vec![
            check("semi_immersion", w.morphism.is_semi_immersion()),
            check("control_function", w.morphism.is_control_function(&w.theta)),
            check("defects_at_most_one", table.max_abs_defect() <= 1),
        ];
        match fixed {
            Ok(fixed) => {
                checks.push(check("fixed_is_immersion", fixed.is_immersion()));
                checks.push(check(
                    "refinements_equivalent",
                    fixed.source().is_equivalent(w.morphism.source())
                        && fixed.target().is_equivalent(w.morphism.target()),
                ));
            }
            Err(_) => checks.push(check("fixed_is_immersion", false)),
        }
        checks
    };
    let (small, big) = (tuple_ranks(&source)?, tuple_ranks(&target)?);
    let (lhs, rhs) = (small.rank_red, big.rank_red);
    Ok(VerificationReport::finish(
        Statement::Pinch,
        vec![source, target],
        vec![small, big],
        checks,
        1,
        lhs,
        rhs,
    ))
}

fn comparable(t: &SeifertTuple, t2: &SeifertTuple) -> bool {
    t.len() == t2.len()
        && t.multiplicities()
            .iter()
            .zip(t2.multiplicities())
            .all(|(p, q)| p <= q)
}

/// `rank(Σ(t)) ≤ rank(Σ(t'))` when `t ≤ t'` entrywise.
pub fn verify_monotone(t: &SeifertTuple, t2: &SeifertTuple) -> Result<VerificationReport> {
    if !comparable(t, t2) {
        return Err(MorphismError::NotComparable.into());
    }
    let checks = if t.is_degenerate() {
        vec![check("source_trivial", true)]
    } else {
        let m = partial_order_immersion(t, t2)?;
        vec![check("immersion", m.is_immersion())]
    };
    let (small, big) = (tuple_ranks(t)?, tuple_ranks(t2)?);
    let (lhs, rhs) = (small.rank_red, big.rank_red);
    Ok(VerificationReport::finish(
        Statement::Monotone,
        vec![t.clone(), t2.clone()],
        vec![small, big],
        checks,
        1,
        lhs,
        rhs,
    ))
}

/// One elementary map `Y' → Y`, read from `Y'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMove {
    /// Degree 1: the fibers `q` and `r` become one fiber `qr`.
    Pinch { q: i64, r: i64 },
    /// Degree `n`: the fiber `fiber = n p` becomes `p`.
    BranchedFiber { fiber: i64, n: i64 },
    /// Degree `n`: the fiber `n` is dropped.
    BranchedRegular { n: i64 },
}

impl DegreeMove {
    pub fn degree(&self) -> i64 {
        match *self {
            Self::Pinch { .. } => 1,
            Self::BranchedFiber { n, .. } | Self::BranchedRegular { n } => n,
        }
    }

    /// The tuple of `Y`, given the tuple of `Y'`.
    pub fn apply(&self, t: &SeifertTuple) -> Result<SeifertTuple> {
        let ps = t.multiplicities();
        let illegal = |reason: String| InequalityError::IllegalMove { tuple: t.clone(), reason };
        let find = |p: i64| {
            ps.iter()
                .position(|&x| x == p)
                .ok_or_else(|| illegal(format!("{p} is not a fiber")))
        };
        let mut raw = ps.to_vec();
        match *self {
            Self::Pinch { q, r } => {
                if q == r {
                    return Err(illegal("pinched fibers must differ".into()));
                }
                let (i, j) = (find(q)?, find(r)?);
                raw[i] = q * r;
                raw.remove(j);
            }
            Self::BranchedFiber { fiber, n } => {
                let i = find(fiber)?;
                if n < 1 || fiber % n != 0 {
                    return Err(illegal(format!("{n} does not divide {fiber}")));
                }
                raw[i] = fiber / n;
            }
            Self::BranchedRegular { n } => {
                let i = find(n)?;
                raw.remove(i);
            }
        }
        SeifertTuple::new(&raw).map_err(|e| illegal(e.to_string()))
    }
}

impl fmt::Display for DegreeMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pinch { q, r } => write!(f, "pinch:{q},{r}"),
            Self::BranchedFiber { fiber, n } => write!(f, "branched:{fiber},{n}"),
            Self::BranchedRegular { n } => write!(f, "regular:{n}"),
        }
    }
}

/// Per-move witness: the reports whose chained inequalities give
/// `deg · rank(Y) ≤ rank(Y')` for the move.
fn move_reports(before: &SeifertTuple, after: &SeifertTuple, mv: DegreeMove) -> Result<Vec<VerificationReport>> {
    match mv {
        DegreeMove::Pinch { q, r } => {
            let rest: Vec<i64> = before
                .multiplicities()
                .iter()
                .copied()
                .filter(|&p| p != q && p != r)
                .collect();
            Ok(vec![verify_pinch(&rest, q, r)?])
        }
        DegreeMove::BranchedFiber { fiber, n } => {
            let p = fiber / n;
            let i = after.multiplicities().iter().position(|&x| x == p);
            match i {
                Some(i) => {
                    let family = crate::morphism::branched_cover_embeddings_at(after, i, n);
                    let mut checks = Vec::new();
                    if !after.is_degenerate() {
                        let family = family?;
                        checks.push(check("embeddings", family.morphisms.iter().all(|m| m.is_embedding())));
                        checks.push(check("images_disjoint", family.images_disjoint()));
                        checks.push(check("values_preserved", family.values_preserved()));
                    } else {
                        checks.push(check("source_trivial", true));
                    }
                    let (small, big) = (tuple_ranks(after)?, tuple_ranks(before)?);
                    let (lhs, rhs) = (n * small.rank_red, big.rank_red);
                    Ok(vec![VerificationReport::finish(
                        Statement::Branched,
                        vec![after.clone(), before.clone()],
                        vec![small, big],
                        checks,
                        n,
                        lhs,
                        rhs,
                    )])
                }
                // p = 1: covering along what is now a regular fiber
                None => move_reports(before, after, DegreeMove::BranchedRegular { n }),
            }
        }
        DegreeMove::BranchedRegular { n } => {
            // n rank(t, p) ≤ rank(t, n p) ≤ rank(t, p, n), through the largest fiber p
            if after.is_degenerate() {
                let small = tuple_ranks(after)?;
                let big = tuple_ranks(before)?;
                return Ok(vec![VerificationReport::finish(
                    Statement::Branched,
                    vec![after.clone(), before.clone()],
                    vec![small, big],
                    vec![check("source_trivial", true)],
                    n,
                    0,
                    0,
                )]);
            }
            let cover = verify_branched(after, n)?;
            let ps = after.multiplicities();
            let (rest, p) = ps.split_at(ps.len() - 1);
            let pinch = verify_pinch(rest, p[0], n)?;
            Ok(vec![cover, pinch])
        }
    }
}

/// Follows `moves` from `Y' = start` down to `Y` and checks
/// `|deg| · rank(Y) ≤ rank(Y')`, with every move witnessed on its own.
pub fn verify_degree_map(start: &SeifertTuple, moves: &[DegreeMove]) -> Result<VerificationReport> {
    let mut tuples = vec![start.clone()];
    let mut checks = Vec::new();
    let mut degree = 1i64;
    for (k, mv) in moves.iter().enumerate() {
        let before = tuples.last().unwrap().clone();
        let after = mv.apply(&before)?;
        degree = crate::arith::checked_mul(degree, mv.degree()).map_err(SeifertError::from)?;
        for report in move_reports(&before, &after, *mv)? {
            for c in &report.checks {
                checks.push(check(&format!("move{k}.{}.{}", statement_tag(report.statement), c.name), c.passed));
            }
            checks.push(check(&format!("move{k}.{}.inequality", statement_tag(report.statement)), report.lhs <= report.rhs));
        }
        tuples.push(after);
    }
    let end = tuples.last().unwrap().clone();
    let (small, big) = (tuple_ranks(&end)?, tuple_ranks(start)?);
    let (lhs, rhs) = (degree * small.rank_red, big.rank_red);
    Ok(VerificationReport::finish(
        Statement::DegreeMap,
        tuples,
        vec![small, big],
        checks,
        degree,
        lhs,
        rhs,
    ))
}

fn statement_tag(s: Statement) -> &'static str {
    match s {
        Statement::Branched => "branched",
        Statement::BranchedHat => "branched_hat",
        Statement::Pinch => "pinch",
        Statement::Monotone => "monotone",
        Statement::DegreeMap => "degree_map",
    }
}

/// A comparable pair whose hat ranks go the wrong way.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HatViolation {
    pub smaller: SeifertTuple,
    pub larger: SeifertTuple,
    pub hat_smaller: i64,
    pub hat_larger: i64,
}

/// Every comparable pair of `l`-fiber tuples with entries at most `bound`
/// where `rank_hat` decreases; sorted.
pub fn scan_hat_monotonicity(bound: i64, l: usize) -> Result<Vec<HatViolation>> {
    let tuples = canonical_tuples(l, bound);
    let hats: HashMap<SeifertTuple, i64> = tuples
        .iter()
        .map(|t| Ok((t.clone(), rank_report_for_tuple(t)?.rank_hat)))
        .collect::<Result<_>>()?;
    let mut out: Vec<HatViolation> = tuples
        .iter()
        .flat_map(|t| {
            let hats = &hats;
            tuples
                .iter()
                .filter(move |t2| *t2 != t && comparable(t, t2))
                .filter(move |t2| hats[t] > hats[*t2])
                .map(move |t2| HatViolation {
                    smaller: t.clone(),
                    larger: t2.clone(),
                    hat_smaller: hats[t],
                    hat_larger: hats[t2],
                })
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(raw: &[i64]) -> SeifertTuple {
        SeifertTuple::new(raw).unwrap()
    }

    #[test]
    fn branched_equality_case() {
        let r = verify_branched(&t(&[2, 3, 7]), 5).unwrap();
        assert!(r.holds(), "{:?}", r);
        assert_eq!((r.lhs, r.rhs), (5, 5));
        assert_eq!(r.inputs[1], t(&[2, 3, 35]));
        let one = verify_branched(&t(&[2, 3, 7]), 1).unwrap();
        assert_eq!((one.lhs, one.rhs), (1, 1));
    }

    #[test]
    fn branched_into_fifty_five() {
        let r = verify_branched(&t(&[2, 3, 11]), 5).unwrap();
        assert!(r.holds());
        assert_eq!(r.lhs, 5);
        assert_eq!(r.rhs, tuple_ranks(&t(&[2, 3, 55])).unwrap().rank_red);
    }

    #[test]
    fn branched_hat_cases() {
        let r = verify_branched_hat(&t(&[2, 3, 7]), 5).unwrap();
        assert_eq!((r.lhs, r.rhs), (3, 11));
        assert!(r.holds());
        let eq = verify_branched_hat(&t(&[2, 3, 7]), 1).unwrap();
        assert_eq!(eq.lhs, eq.rhs);
        assert!(verify_branched_hat(&t(&[2, 5, 7]), 3).unwrap().holds());
    }

    #[test]
    fn pinch_cases() {
        let r = verify_pinch(&[2, 3], 5, 7).unwrap();
        assert!(r.holds(), "{:?}", r);
        assert_eq!((r.lhs, r.rhs), (5, 13));
        assert!(verify_pinch(&[2, 3], 5, 11).unwrap().holds());
        assert!(verify_pinch(&[2, 7], 3, 5).unwrap().holds());
    }

    #[test]
    fn monotone_cases() {
        let r = verify_monotone(&t(&[2, 3, 7]), &t(&[2, 3, 13])).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 2));
        assert!(r.holds());
        let same = verify_monotone(&t(&[3, 5, 7]), &t(&[3, 5, 7])).unwrap();
        assert_eq!(same.lhs, same.rhs);
        assert!(verify_monotone(&t(&[2, 3, 5, 7]), &t(&[2, 3, 5, 11])).unwrap().holds());
        assert!(matches!(
            verify_monotone(&t(&[2, 3, 13]), &t(&[2, 3, 7])),
            Err(InequalityError::Morphism(MorphismError::NotComparable))
        ));
    }

    #[test]
    fn degree_map_cases() {
        let pinch = verify_degree_map(&t(&[2, 3, 5, 7]), &[DegreeMove::Pinch { q: 5, r: 7 }]).unwrap();
        assert!(pinch.holds());
        assert_eq!((pinch.degree, pinch.lhs, pinch.rhs), (1, 5, 13));

        let cover = verify_degree_map(&t(&[2, 3, 35]), &[DegreeMove::BranchedFiber { fiber: 35, n: 5 }]).unwrap();
        assert!(cover.holds());
        assert_eq!((cover.degree, cover.lhs, cover.rhs), (5, 5, 5));

        let empty = verify_degree_map(&t(&[2, 3, 7]), &[]).unwrap();
        assert_eq!((empty.degree, empty.lhs, empty.rhs), (1, 1, 1));
    }

    #[test]
    fn degree_map_chain_multiplies() {
        let moves = [
            DegreeMove::BranchedRegular { n: 11 },
            DegreeMove::BranchedFiber { fiber: 21, n: 3 },
        ];
        let start = t(&[2, 5, 11, 21]);
        let r = verify_degree_map(&start, &moves).unwrap();
        assert_eq!(r.degree, 33);
        assert_eq!(r.inputs.last().unwrap(), &t(&[2, 5, 7]));
        assert!(r.holds(), "{:?}", r.failed_checks().collect::<Vec<_>>());
    }

    #[test]
    fn illegal_moves() {
        let y = t(&[2, 3, 7]);
        for mv in [
            DegreeMove::Pinch { q: 2, r: 5 },
            DegreeMove::BranchedFiber { fiber: 7, n: 2 },
            DegreeMove::BranchedRegular { n: 5 },
        ] {
            assert!(matches!(mv.apply(&y), Err(InequalityError::IllegalMove { .. })));
        }
    }

    #[test]
    fn branched_composition_matches_product() {
        let y = t(&[2, 5, 7]);
        let once = verify_branched(&y, 3).unwrap();
        let twice = verify_branched(&once.inputs[1], 3).unwrap();
        let direct = verify_branched(&y, 9).unwrap();
        assert_eq!(twice.inputs[1], direct.inputs[1]);
        assert_eq!(twice.rhs, direct.rhs);
        assert!(9 * once.ranks[0].rank_red <= twice.rhs);
    }

    #[test]
    fn hat_scan_up_to_seven_is_clean() {
        assert!(scan_hat_monotonicity(7, 3).unwrap().is_empty());
    }

    #[test]
    fn hat_scan_up_to_thirteen_finds_drops() {
        let found = scan_hat_monotonicity(13, 3).unwrap();
        let pair = HatViolation {
            smaller: t(&[5, 7, 13]),
            larger: t(&[5, 8, 13]),
            hat_smaller: 35,
            hat_larger: 33,
        };
        assert!(found.contains(&pair));
        assert_eq!(found.len(), 8);
        // both routes agree on the offending values
        assert_eq!(tuple_ranks(&pair.smaller).unwrap().rank_hat, 35);
        assert_eq!(tuple_ranks(&pair.larger).unwrap().rank_hat, 33);
        for v in &found {
            assert!(v.hat_smaller > v.hat_larger);
            assert!(comparable(&v.smaller, &v.larger));
        }
    }

    #[test]
    fn report_json_shape() {
        let r = verify_branched(&t(&[2, 3, 7]), 5).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["statement"], "branched");
        assert_eq!(v["verdict"], "holds");
        assert_eq!(v["inputs"][1], serde_json::json!([2, 3, 35]));
    }
}
