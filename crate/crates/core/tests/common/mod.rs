#![allow(dead_code)]

use hfrank::arith::gcd;
use hfrank::SeifertTuple;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn t(raw: &[i64]) -> SeifertTuple {
    SeifertTuple::new(raw).unwrap()
}

fn coprime_with_all(p: i64, others: &[i64]) -> bool {
    others.iter().all(|&q| gcd(p, q) == 1)
}

/// Sorted pairwise coprime entries in `2..=max_entry`, product at most `max_product`.
pub fn random_raw(rng: &mut ChaCha8Rng, l: usize, max_entry: i64, max_product: i64) -> Vec<i64> {
    loop {
        let mut raw: Vec<i64> = Vec::with_capacity(l);
        let mut product = 1i64;
        for _ in 0..l {
            let p = rng.gen_range(2..=max_entry);
            if !coprime_with_all(p, &raw) {
                break;
            }
            raw.push(p);
            product *= p;
        }
        if raw.len() == l && product <= max_product {
            raw.sort_unstable();
            return raw;
        }
    }
}

pub fn random_tuple(rng: &mut ChaCha8Rng, l: usize, max_entry: i64, max_product: i64) -> SeifertTuple {
    loop {
        let t = t(&random_raw(rng, l, max_entry, max_product));
        if !t.is_degenerate() {
            return t;
        }
    }
}

/// Tuples with three to five fibers for the arithmetic suite.
pub fn arithmetic_corpus() -> Vec<SeifertTuple> {
    let mut r = rng(4);
    (0..500)
        .map(|_| {
            let l = r.gen_range(3..=5);
            let max_entry = [100, 50, 30][l - 3];
            random_tuple(&mut r, l, max_entry, 1_000_000)
        })
        .collect()
}

/// `(t, n)` with `n` coprime to every fiber but the largest, covers of product at most 10⁶.
pub fn branched_corpus() -> Vec<(SeifertTuple, i64)> {
    let mut r = rng(51);
    let mut out = Vec::new();
    while out.len() < 200 {
        let l = r.gen_range(3..=5);
        let t = random_tuple(&mut r, l, 50, 1_000_000);
        let n = r.gen_range(1..=7);
        let ps = t.multiplicities();
        if !coprime_with_all(n, &ps[..ps.len() - 1]) || t.product().unwrap() * n > 1_000_000 {
            continue;
        }
        out.push((t, n));
    }
    out
}

pub fn comparable_corpus() -> Vec<(SeifertTuple, SeifertTuple)> {
    let mut r = rng(52);
    let mut out = Vec::new();
    while out.len() < 200 {
        let l = r.gen_range(3..=5);
        let small = random_tuple(&mut r, l, 40, 1_000_000);
        let mut raw = small.multiplicities().to_vec();
        for p in raw.iter_mut() {
            *p += r.gen_range(0..=10);
        }
        let Ok(big) = SeifertTuple::new(&raw) else { continue };
        let ordered = big.len() == small.len()
            && small.multiplicities().iter().zip(big.multiplicities()).all(|(a, b)| a <= b);
        if ordered && big.product().unwrap() <= 1_000_000 {
            out.push((small, big));
        }
    }
    out
}

/// `(t, q, r)` with `Σ(t, qr)` nondegenerate and `Σ(t, q, r)` of product at most 10⁶.
pub fn pinch_corpus() -> Vec<(Vec<i64>, i64, i64)> {
    let mut r = rng(53);
    let mut out = Vec::new();
    while out.len() < 100 {
        let l = r.gen_range(2..=3);
        let raw = random_raw(&mut r, l + 2, 50, 1_000_000);
        // pick which two entries get pinched
        let i = r.gen_range(0..raw.len());
        let mut j = r.gen_range(0..raw.len() - 1);
        if j >= i {
            j += 1;
        }
        let (q, s) = (raw[i], raw[j]);
        let rest: Vec<i64> = raw
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, &p)| p)
            .collect();
        let source = t(&[rest.as_slice(), &[q * s]].concat());
        if !source.is_degenerate() {
            out.push((rest, q, s));
        }
    }
    out
}
