//! Seifert invariant arithmetic for Σ(p_1, …, p_l).
//!
//! [`SeifertTuple`] is the canonical multiplicity list. [`SeifertSphere`] caches
//! the derived constants (product, cofactors `P/p_i`, normalized invariants,
//! cutoff `N`) so the delta function and normal forms can be evaluated in tight
//! loops without recomputing them.

use std::fmt;

use num_rational::Ratio;
use num_traits::CheckedAdd;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ArithError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("multiplicities {0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("multiplicity {0} is not positive")]
    NonPositiveEntry(i64),
    #[error("operation needs at least one singular fiber")]
    Empty,
    #[error("{0} is degenerate (S^3 or Σ(2,3,5)); it has no delta sequence")]
    Degenerate(SeifertTuple),
    #[error("{n} is not in the semigroup of {tuple}")]
    NotMember { tuple: SeifertTuple, n: i64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Result<T> = std::result::Result<T, SeifertError>;

/// Pairwise coprime multiplicities, sorted ascending, all `≥ 2`.
///
/// The empty tuple and one-entry tuples are legal and stand for S³.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SeifertTuple(Vec<i64>);

impl SeifertTuple {
    /// Canonicalizes a raw multiplicity list: entries equal to 1 are dropped and
    /// the rest sorted.
    pub fn new(raw: &[i64]) -> Result<Self> {
        if let Some(&bad) = raw.iter().find(|&&p| p < 1) {
            return Err(SeifertError::NonPositiveEntry(bad));
        }
        let mut values: Vec<i64> = raw.iter().copied().filter(|&p| p != 1).collect();
        values.sort_unstable();
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                if arith::gcd(values[i], values[j]) != 1 {
                    return Err(SeifertError::NotCoprime(values[i], values[j]));
                }
            }
        }
        Ok(Self(values))
    }

    /// S³ as the empty tuple.
    pub fn sphere() -> Self {
        Self(Vec::new())
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self) -> Result<i64> {
        Ok(arith::checked_product(&self.0)?)
    }

    /// S³ (at most two fibers) or the Poincaré sphere Σ(2,3,5).
    pub fn is_degenerate(&self) -> bool {
        self.0.len() <= 2 || self.0 == [2, 3, 5]
    }

    pub fn sphere_data(&self) -> Result<SeifertSphere> {
        SeifertSphere::new(self.clone())
    }

    pub fn normalized_invariants(&self) -> Result<NormalizedInvariants> {
        Ok(self.sphere_data()?.invariants().clone())
    }

    /// `e = e_0 + Σ p_i'/p_i`; always equals `-1/P`.
    pub fn euler_number(&self) -> Result<Ratio<i64>> {
        let inv = self.normalized_invariants()?;
        let mut e = Ratio::from_integer(inv.e0);
        for &(pp, p) in &inv.pairs {
            e = e
                .checked_add(&Ratio::new(pp, p))
                .ok_or(ArithError::Overflow)?;
        }
        Ok(e)
    }

    pub fn n_cutoff(&self) -> Result<i64> {
        Ok(self.sphere_data()?.n_cutoff())
    }

    pub fn delta_at(&self, n: i64) -> Result<i64> {
        self.sphere_data()?.delta_at(n)
    }

    pub fn membership(&self, n: i64) -> Result<NormalForm> {
        self.sphere_data()?.membership(n)
    }

    pub fn delta_semigroup(&self, n: i64) -> Result<i64> {
        self.sphere_data()?.delta_semigroup(n)
    }

    pub fn semigroup_elements_upto(&self, bound: i64) -> Result<Vec<i64>> {
        self.sphere_data()?.semigroup_elements_upto(bound)
    }

    pub fn tau_sequence(&self) -> Result<Vec<i64>> {
        self.sphere_data()?.tau_sequence()
    }
}

impl TryFrom<Vec<i64>> for SeifertTuple {
    type Error = SeifertError;

    fn try_from(raw: Vec<i64>) -> Result<Self> {
        Self::new(&raw)
    }
}

impl From<SeifertTuple> for Vec<i64> {
    fn from(t: SeifertTuple) -> Self {
        t.0
    }
}

impl fmt::Display for SeifertTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("S^3");
        }
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// `(e_0, (p_1', p_1), …, (p_l', p_l))` with `e_0 P + Σ p_i' P/p_i = -1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedInvariants {
    pub e0: i64,
    /// `(p_i', p_i)` with `0 ≤ p_i' < p_i`.
    pub pairs: Vec<(i64, i64)>,
}

impl NormalizedInvariants {
    /// Evaluates the left-hand side of the defining identity exactly.
    pub fn identity_lhs(&self) -> Result<i64> {
        let ps: Vec<i64> = self.pairs.iter().map(|&(_, p)| p).collect();
        let product = arith::checked_product(&ps)?;
        let mut acc = arith::checked_mul(self.e0, product)?;
        for &(pp, p) in &self.pairs {
            acc = arith::checked_add(acc, arith::checked_mul(pp, product / p)?)?;
        }
        Ok(acc)
    }
}

/// `n = P (k + Σ x_i / p_i)` with `0 ≤ x_i < p_i`. `n` lies in the semigroup iff `k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub k: i64,
    pub x: Vec<i64>,
}

impl NormalForm {
    pub fn is_member(&self) -> bool {
        self.k >= 0
    }
}

/// A Seifert tuple together with its derived constants.
#[derive(Clone, Debug)]
pub struct SeifertSphere {
    tuple: SeifertTuple,
    product: i64,
    /// `P / p_i`
    cofactors: Vec<i64>,
    /// `(P / p_i)^{-1} mod p_i`
    cofactor_inverses: Vec<i64>,
    invariants: NormalizedInvariants,
    n_cutoff: i64,
}

impl SeifertSphere {
    pub fn new(tuple: SeifertTuple) -> Result<Self> {
        if tuple.is_empty() {
            return Err(SeifertError::Empty);
        }
        let ps = tuple.multiplicities();
        let product = arith::checked_product(ps)?;
        let cofactors: Vec<i64> = ps.iter().map(|&p| product / p).collect();
        let cofactor_inverses = ps
            .iter()
            .zip(&cofactors)
            .map(|(&p, &c)| arith::mod_inverse(c, p))
            .collect::<std::result::Result<Vec<_>, _>>()?;

        // p_i' ≡ -(P/p_i)^{-1} (mod p_i), then e_0 from the identity
        let mut weighted = 0i64;
        let mut pairs = Vec::with_capacity(ps.len());
        for ((&p, &c), &inv) in ps.iter().zip(&cofactors).zip(&cofactor_inverses) {
            let pp = (-inv).rem_euclid(p);
            weighted = arith::checked_add(weighted, arith::checked_mul(pp, c)?)?;
            pairs.push((pp, p));
        }
        let numerator = arith::checked_sub(-1, weighted)?;
        debug_assert_eq!(numerator % product, 0);
        let invariants = NormalizedInvariants {
            e0: numerator / product,
            pairs,
        };
        if invariants.identity_lhs()? != -1 {
            // unreachable for coprime input; kept as a hard check on the residue solve
            return Err(ArithError::Overflow.into());
        }

        let l = ps.len() as i64;
        let cofactor_sum = cofactors
            .iter()
            .try_fold(0i64, |acc, &c| arith::checked_add(acc, c))?;
        let n_cutoff = arith::checked_sub(arith::checked_mul(l - 2, product)?, cofactor_sum)?;

        Ok(Self {
            tuple,
            product,
            cofactors,
            cofactor_inverses,
            invariants,
            n_cutoff,
        })
    }

    pub fn tuple(&self) -> &SeifertTuple {
        &self.tuple
    }

    pub fn product(&self) -> i64 {
        self.product
    }

    pub fn cofactors(&self) -> &[i64] {
        &self.cofactors
    }

    pub fn invariants(&self) -> &NormalizedInvariants {
        &self.invariants
    }

    /// `N = (l-2) P - Σ P/p_i`.
    pub fn n_cutoff(&self) -> i64 {
        self.n_cutoff
    }

    pub fn is_degenerate(&self) -> bool {
        self.tuple.is_degenerate()
    }

    /// `Δ(n) = 1 + |e_0| n - Σ ⌈n p_i' / p_i⌉`.
    pub fn delta_at(&self, n: i64) -> Result<i64> {
        debug_assert!(n >= 0);
        let mut acc = arith::checked_add(1, arith::checked_mul(self.invariants.e0.abs(), n)?)?;
        for &(pp, p) in &self.invariants.pairs {
            acc -= arith::ceil_div(arith::checked_mul(n, pp)?, p)?;
        }
        Ok(acc)
    }

    /// Coefficient `k` of the normal form; negative exactly for non-members.
    pub fn normal_form_k(&self, n: i64) -> i64 {
        let ps = self.tuple.multiplicities();
        if self.product < 1 << 31 && (0..1 << 40).contains(&n) {
            let mut rest = n;
            for ((&p, &c), &inv) in ps.iter().zip(&self.cofactors).zip(&self.cofactor_inverses) {
                rest -= (n % p) * inv % p * c;
            }
            return rest.div_euclid(self.product);
        }
        let mut rest = n as i128;
        for ((&p, &c), &inv) in self
            .tuple
            .multiplicities()
            .iter()
            .zip(&self.cofactors)
            .zip(&self.cofactor_inverses)
        {
            let x = ((n.rem_euclid(p) as i128) * inv as i128) % p as i128;
            rest -= x * c as i128;
        }
        debug_assert_eq!(rest % self.product as i128, 0);
        (rest.div_euclid(self.product as i128)) as i64
    }

    pub fn membership(&self, n: i64) -> Result<NormalForm> {
        let mut rest = n as i128;
        let mut x = Vec::with_capacity(self.cofactors.len());
        for ((&p, &c), &inv) in self
            .tuple
            .multiplicities()
            .iter()
            .zip(&self.cofactors)
            .zip(&self.cofactor_inverses)
        {
            let xi = ((n.rem_euclid(p) as i128) * inv as i128) % p as i128;
            rest -= xi * c as i128;
            x.push(xi as i64);
        }
        debug_assert_eq!(rest % self.product as i128, 0);
        let k = rest.div_euclid(self.product as i128);
        let k = i64::try_from(k).map_err(|_| ArithError::Overflow)?;
        Ok(NormalForm { k, x })
    }

    pub fn is_member(&self, n: i64) -> bool {
        n >= 0 && self.normal_form_k(n) >= 0
    }

    /// `Δ` on a semigroup member via its normal form: `1 + k`.
    pub fn delta_semigroup(&self, n: i64) -> Result<i64> {
        let k = self.normal_form_k(n);
        if n < 0 || k < 0 {
            return Err(SeifertError::NotMember {
                tuple: self.tuple.clone(),
                n,
            });
        }
        Ok(1 + k)
    }

    /// Semigroup members in `[0, bound]` by sieving with the generators `P/p_i`.
    pub fn semigroup_elements_upto(&self, bound: i64) -> Result<Vec<i64>> {
        if bound < 0 {
            return Ok(Vec::new());
        }
        let len = usize::try_from(bound).map_err(|_| ArithError::Overflow)? + 1;
        let mut member = vec![false; len];
        member[0] = true;
        for n in 1..len {
            member[n] = self
                .cofactors
                .iter()
                .any(|&g| (g as usize) <= n && member[n - g as usize]);
        }
        Ok(member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(n, _)| n as i64)
            .collect())
    }

    /// Calls `visit(n, k)` for every semigroup member `n ≤ bound`, where `k` is the
    /// normal-form coefficient. Order is unspecified.
    pub fn for_each_member_upto(&self, bound: i64, mut visit: impl FnMut(i64, i64)) {
        if bound < 0 {
            return;
        }
        let ps = self.tuple.multiplicities();
        let product = self.product;
        let cofactors = &self.cofactors;

        fn walk(
            depth: usize,
            partial: i64,
            ps: &[i64],
            cofactors: &[i64],
            product: i64,
            bound: i64,
            visit: &mut dyn FnMut(i64, i64),
        ) {
            if depth == ps.len() {
                let mut n = partial;
                let mut k = 0;
                while n <= bound {
                    visit(n, k);
                    n += product;
                    k += 1;
                }
                return;
            }
            let step = cofactors[depth];
            let mut value = partial;
            for _ in 0..ps[depth] {
                if value > bound {
                    break;
                }
                walk(depth + 1, value, ps, cofactors, product, bound, visit);
                value += step;
            }
        }

        walk(0, 0, ps, cofactors, product, bound, &mut visit);
    }

    /// `τ(0) = 0`, `τ(n+1) = τ(n) + Δ(n)` for `0 ≤ n ≤ N`; length `N + 2`.
    pub fn tau_sequence(&self) -> Result<Vec<i64>> {
        if self.n_cutoff < 0 {
            return Err(SeifertError::Degenerate(self.tuple.clone()));
        }
        let len = usize::try_from(self.n_cutoff).map_err(|_| ArithError::Overflow)? + 2;
        let mut tau = Vec::with_capacity(len);
        tau.push(0i64);
        for n in 0..=self.n_cutoff {
            let next = arith::checked_add(*tau.last().unwrap(), self.delta_at(n)?)?;
            tau.push(next);
        }
        Ok(tau)
    }
}
