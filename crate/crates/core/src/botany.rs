//! Every Seifert homology sphere of a given reduced rank.
//!
//! Candidates are bounded by `l! < max(2n, 7)` and `p_l < 6n + 7`. Inside those
//! bounds the scan walks increasing coprime tuples and stops a branch as soon
//! as the rank inequalities force everything further along it above the
//! target: ranks grow with each entry, and appending a fiber `p` to a prefix
//! of rank `r` gives rank at least `p·r`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::deltaseq::{rank_report_for_tuple, DeltaSeqError};
use crate::seifert::SeifertTuple;

pub type Result<T> = std::result::Result<T, DeltaSeqError>;

/// `(l_max, p_max)`: the longest tuple length with `l! < max(2n, 7)` and the
/// largest entry `6n + 6`.
pub fn bounds(n: i64) -> (usize, i64) {
    let cap = (2 * n).max(7);
    let mut l = 3usize;
    let mut fact: i64 = 6;
    while fact.saturating_mul(l as i64 + 1) < cap {
        l += 1;
        fact *= l as i64;
    }
    (l, 6 * n + 6)
}

/// Pairwise coprime `2 ≤ p_1 < … < p_l ≤ max`, in lexicographic order.
pub fn canonical_tuples(l: usize, max: i64) -> Vec<SeifertTuple> {
    fn walk(prefix: &mut Vec<i64>, l: usize, max: i64, out: &mut Vec<SeifertTuple>) {
        if prefix.len() == l {
            out.push(SeifertTuple::new(prefix).expect("coprime by construction"));
            return;
        }
        let start = prefix.last().map_or(2, |p| p + 1);
        for p in start..=max {
            if prefix.iter().all(|&x| arith::gcd(x, p) == 1) {
                prefix.push(p);
                walk(prefix, l, max, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(&mut Vec::with_capacity(l), l, max, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub rank_red: i64,
    pub rank_hat: i64,
    pub n_cutoff: i64,
}

impl RankEntry {
    pub fn compute(t: &SeifertTuple) -> Result<Self> {
        let report = rank_report_for_tuple(t)?;
        let n_cutoff = if t.len() < 3 { -1 } else { t.n_cutoff()? };
        Ok(Self {
            rank_red: report.rank_red,
            rank_hat: report.rank_hat,
            n_cutoff,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BotanyResult {
    pub n: i64,
    /// Sorted; `[]` is S³.
    pub tuples: Vec<SeifertTuple>,
    #[serde(skip)]
    pub l_max: usize,
    #[serde(skip)]
    pub p_max: i64,
}

impl BotanyResult {
    /// One `rank,p_1,…,p_l` line per tuple; S³ is `0,`.
    pub fn csv(&self) -> String {
        let mut out = String::new();
        for t in &self.tuples {
            let joined: Vec<String> = t.multiplicities().iter().map(i64::to_string).collect();
            let _ = writeln!(out, "{},{}", self.n, joined.join(","));
        }
        out
    }
}

/// A scan with a rank memo that survives between calls.
#[derive(Clone, Debug, Default)]
pub struct Botany {
    memo: HashMap<SeifertTuple, RankEntry>,
    computed: usize,
}

struct Walk<'a> {
    botany: &'a mut Botany,
    l: usize,
    p_max: i64,
    n_max: i64,
    /// Tuples (by length) already known to rule out everything above them.
    dead: Vec<Vec<Vec<i64>>>,
    found: Vec<(SeifertTuple, i64)>,
}

impl Walk<'_> {
    fn dominated(&self, t: &[i64]) -> bool {
        self.dead[t.len()]
            .iter()
            .any(|d| d.iter().zip(t).all(|(a, b)| a <= b))
    }

    fn walk(&mut self, prefix: &mut Vec<i64>) -> Result<()> {
        let start = prefix.last().map_or(2, |p| p + 1);
        for p in start..=self.p_max {
            if !prefix.iter().all(|&x| arith::gcd(x, p) == 1) {
                continue;
            }
            prefix.push(p);
            let len = prefix.len();
            if len < 3 {
                self.walk(prefix)?;
                prefix.pop();
                continue;
            }
            // everything later in this loop dominates the current tuple
            if self.dominated(prefix) {
                prefix.pop();
                break;
            }
            let t = SeifertTuple::new(prefix).expect("coprime by construction");
            let rank = self.botany.rank(&t)?.rank_red;
            let floor = if len == self.l { rank } else { (p + 1).saturating_mul(rank) };
            if floor > self.n_max {
                self.dead[len].push(prefix.clone());
                prefix.pop();
                break;
            }
            if len == self.l {
                self.found.push((t, rank));
            } else {
                self.walk(prefix)?;
            }
            prefix.pop();
        }
        Ok(())
    }
}

impl Botany {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_memo(entries: impl IntoIterator<Item = (SeifertTuple, RankEntry)>) -> Self {
        Self { memo: entries.into_iter().collect(), computed: 0 }
    }

    pub fn memo(&self) -> &HashMap<SeifertTuple, RankEntry> {
        &self.memo
    }

    /// Number of ranks computed rather than read from the memo.
    pub fn computed(&self) -> usize {
        self.computed
    }

    pub fn rank(&mut self, t: &SeifertTuple) -> Result<RankEntry> {
        if let Some(e) = self.memo.get(t) {
            return Ok(*e);
        }
        let e = RankEntry::compute(t)?;
        self.computed += 1;
        self.memo.insert(t.clone(), e);
        Ok(e)
    }

    /// Every tuple with `3 ≤ l ≤ l_max`, entries `≤ p_max` and rank `≤ n_max`.
    fn scan(&mut self, n_max: i64, l_max: usize, p_max: i64) -> Result<Vec<(SeifertTuple, i64)>> {
        let mut found = Vec::new();
        for l in 3..=l_max {
            let mut w = Walk {
                botany: self,
                l,
                p_max,
                n_max,
                dead: vec![Vec::new(); l + 1],
                found: Vec::new(),
            };
            w.walk(&mut Vec::with_capacity(l))?;
            found.append(&mut w.found);
        }
        Ok(found)
    }

    pub fn solve(&mut self, n: i64) -> Result<BotanyResult> {
        let (l_max, p_max) = bounds(n);
        let mut tuples: Vec<SeifertTuple> = self
            .scan(n, l_max, p_max)?
            .into_iter()
            .filter(|(_, r)| *r == n)
            .map(|(t, _)| t)
            .collect();
        if n == 0 {
            tuples.push(SeifertTuple::sphere());
        }
        tuples.sort();
        Ok(BotanyResult { n, tuples, l_max, p_max })
    }

    /// Rows `0..=n_max` from a single scan at the largest bounds.
    pub fn table(&mut self, n_max: i64) -> Result<BTreeMap<i64, BotanyResult>> {
        let mut rows: BTreeMap<i64, BotanyResult> = (0..=n_max)
            .map(|n| {
                let (l_max, p_max) = bounds(n);
                (n, BotanyResult { n, tuples: Vec::new(), l_max, p_max })
            })
            .collect();
        let (l_max, p_max) = bounds(n_max);
        for (t, r) in self.scan(n_max, l_max, p_max)? {
            rows.get_mut(&r).expect("rank within range").tuples.push(t);
        }
        rows.get_mut(&0).unwrap().tuples.push(SeifertTuple::sphere());
        for row in rows.values_mut() {
            row.tuples.sort();
        }
        Ok(rows)
    }
}

pub fn solve(n: i64) -> Result<BotanyResult> {
    Botany::new().solve(n)
}

pub fn table(n_max: i64) -> Result<BTreeMap<i64, BotanyResult>> {
    Botany::new().table(n_max)
}
