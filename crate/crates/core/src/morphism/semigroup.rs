//! The two-generator semigroup `S_{q,r} = {aq + br : a, b ≥ 0}` and the
//! order-preserving bijection `ψ : ℕ → S_{q,r}`, evaluated pointwise.

use super::{MorphismError, Result};
use crate::arith;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGenSemigroup {
    q: i64,
    r: i64,
    /// `q^{-1} mod r`
    q_inv: i64,
    /// The first `(q-1)(r-1)/2` members, i.e. `ψ` below the shift point.
    small: Vec<i64>,
}

impl TwoGenSemigroup {
    pub fn new(q: i64, r: i64) -> Result<Self> {
        for g in [q, r] {
            if g < 2 {
                return Err(MorphismError::BadGenerator(g));
            }
        }
        if arith::gcd(q, r) != 1 {
            return Err(MorphismError::NotCoprime(q, r));
        }
        let q_inv = arith::mod_inverse(q, r)?;
        let mut s = Self { q, r, q_inv, small: Vec::new() };
        let shift = s.gap_count();
        s.small = (0..2 * shift).filter(|&x| s.contains(x)).collect();
        debug_assert_eq!(s.small.len() as i64, shift);
        Ok(s)
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn qr(&self) -> i64 {
        self.q * self.r
    }

    pub fn frobenius(&self) -> i64 {
        self.q * self.r - self.q - self.r
    }

    /// `(q-1)(r-1)/2`, the number of gaps and also the eventual shift of `ψ`.
    pub fn gap_count(&self) -> i64 {
        (self.q - 1) * (self.r - 1) / 2
    }

    /// The unique `a ∈ [0, r)` with `s ≡ aq (mod r)`, and `b = (s - aq)/r`.
    fn decompose(&self, s: i64) -> (i64, i64) {
        let a = (s.rem_euclid(self.r) * self.q_inv) % self.r;
        (a, (s - a * self.q).div_euclid(self.r))
    }

    pub fn contains(&self, s: i64) -> bool {
        s >= 0 && self.decompose(s).1 >= 0
    }

    pub fn psi(&self, x: i64) -> i64 {
        debug_assert!(x >= 0);
        let shift = self.gap_count();
        if x >= shift {
            x + shift
        } else {
            self.small[x as usize]
        }
    }

    /// `Δ^{qr}(x) = 1 + ⌊x/qr⌋`.
    pub fn delta_upper(&self, x: i64) -> i64 {
        1 + x.div_euclid(self.qr())
    }

    /// `Δ_{q,r}(aq + br) = 1 + ⌊a/r⌋ + ⌊b/q⌋`, using the decomposition with `a < r`.
    pub fn delta_lower(&self, s: i64) -> Result<i64> {
        let (a, b) = self.decompose(s);
        if s < 0 || b < 0 {
            return Err(MorphismError::NotMember(s));
        }
        Ok(1 + a / self.r + b / self.q)
    }

    /// `d_ψ(x) = Δ^{qr}(x) - Δ_{q,r}(ψ(x))`.
    pub fn defect(&self, x: i64) -> i64 {
        self.delta_upper(x) - self.delta_lower(self.psi(x)).expect("ψ lands in the semigroup")
    }

    pub fn is_bad(&self, x: i64) -> bool {
        self.defect(x) > 0
    }

    /// The structural description of a bad point: `b ≥ qr` and `ψ(b) - k·qr ∉ S`
    /// with `k = ⌊b/qr⌋`.
    pub fn is_bad_by_shift(&self, b: i64) -> bool {
        let qr = self.qr();
        b >= qr && !self.contains(self.psi(b) - (b / qr) * qr)
    }

    pub fn bad_points_upto(&self, bound: i64) -> Vec<i64> {
        (0..=bound).filter(|&x| self.is_bad(x)).collect()
    }

    /// `θ_{q,r}(b) = 2k·qr - b - 1` with `k = ⌊b/qr⌋`.
    pub fn theta(&self, b: i64) -> Result<i64> {
        if b < 0 || !self.is_bad(b) {
            return Err(MorphismError::NotBad(b));
        }
        let qr = self.qr();
        Ok(2 * (b / qr) * qr - b - 1)
    }
}
