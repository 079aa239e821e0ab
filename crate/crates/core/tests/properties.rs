//! Cross-module properties: botany facts, sparse against dense ranks, and the
//! verifiers on small random spheres.

mod common;

use std::collections::BTreeSet;

use common::t;
use hfrank::arith::gcd;
use hfrank::botany::{self, Botany};
use hfrank::deltaseq::rank_report_for_tuple;
use hfrank::inequality::{tuple_ranks, verify_branched, verify_monotone, verify_pinch};
use hfrank::{GradedRoot, SeifertTuple};
use proptest::prelude::*;

fn golden_row(n: i64) -> BTreeSet<Vec<i64>> {
    include_str!("golden/table1.csv")
        .lines()
        .filter_map(|line| {
            let mut cells = line.split(',');
            let rank: i64 = cells.next()?.parse().ok()?;
            let tuple: Vec<i64> = cells.filter(|c| !c.is_empty()).map(|c| c.parse().unwrap()).collect();
            (rank == n).then_some(tuple)
        })
        .collect()
}

#[test]
fn scaling_family() {
    for n in 0..=100 {
        assert_eq!(rank_report_for_tuple(&t(&[2, 3, 6 * n + 7])).unwrap().rank_red, n + 1, "n = {n}");
    }
    assert_eq!(rank_report_for_tuple(&t(&[2, 3, 5, 7])).unwrap().rank_red, 13);
}

#[test]
fn largest_fiber_bound_is_strict() {
    let mut b = Botany::new();
    for n in 0..=12 {
        let top = 6 * n + 7;
        for p1 in 2..top {
            for p2 in p1 + 1..top {
                if gcd(p1, p2) != 1 || gcd(p1, top) != 1 || gcd(p2, top) != 1 {
                    continue;
                }
                let rank = b.rank(&t(&[p1, p2, top])).unwrap().rank_red;
                assert_ne!(rank, n, "({p1},{p2},{top})");
                // ranks only grow along p2
                if rank > n {
                    break;
                }
            }
        }
    }
}

fn coprime_tuple(max_entry: i64, max_product: i64) -> impl Strategy<Value = SeifertTuple> {
    proptest::collection::vec(2..=max_entry, 3..=5).prop_filter_map("pairwise coprime", move |raw| {
        let y = SeifertTuple::new(&raw).ok()?;
        (y.len() == raw.len() && !y.is_degenerate() && y.product().ok()? <= max_product).then_some(y)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solve_matches_the_table(n in 0i64..=12) {
        let got: BTreeSet<Vec<i64>> = botany::solve(n)
            .unwrap()
            .tuples
            .iter()
            .map(|y| y.multiplicities().to_vec())
            .collect();
        prop_assert_eq!(got, golden_row(n));
    }

    #[test]
    fn sparse_and_dense_roots_agree(y in coprime_tuple(30, 200_000)) {
        let sparse = rank_report_for_tuple(&y).unwrap();
        let root = GradedRoot::from_tau(&y.tau_sequence().unwrap()).unwrap();
        prop_assert_eq!(root.red_rank() as i64, sparse.rank_red);
        prop_assert_eq!(root.hat_rank() as i64, sparse.rank_hat);
    }

    #[test]
    fn branched_covers_compose(y in coprime_tuple(20, 20_000), n in 1i64..=4, m in 1i64..=4) {
        let ps = y.multiplicities();
        prop_assume!(ps[..ps.len() - 1].iter().all(|&p| gcd(p, n * m) == 1));
        let once = verify_branched(&y, n).unwrap();
        let mut raw = ps.to_vec();
        *raw.last_mut().unwrap() *= n;
        let twice = verify_branched(&t(&raw), m).unwrap();
        let direct = verify_branched(&y, n * m).unwrap();
        prop_assert!(once.holds() && twice.holds() && direct.holds());
        prop_assert_eq!(direct.degree, once.degree * twice.degree);
        // both routes land on the same cover
        prop_assert_eq!(direct.rhs, twice.rhs);
        prop_assert!(direct.lhs <= twice.lhs);
    }

    #[test]
    fn monotone_pairs_hold(y in coprime_tuple(20, 50_000), bumps in proptest::collection::vec(0i64..6, 5)) {
        let raw: Vec<i64> = y.multiplicities().iter().zip(&bumps).map(|(p, b)| p + b).collect();
        let Ok(big) = SeifertTuple::new(&raw) else { return Ok(()) };
        prop_assume!(big.len() == y.len() && big.product().unwrap() <= 200_000);
        prop_assume!(y.multiplicities().iter().zip(big.multiplicities()).all(|(a, b)| a <= b));
        let rep = verify_monotone(&y, &big).unwrap();
        prop_assert!(rep.holds(), "{}", rep);
        prop_assert!(tuple_ranks(&y).unwrap().rank_red <= tuple_ranks(&big).unwrap().rank_red);
    }

    #[test]
    fn pinches_hold(rest in proptest::collection::vec(2i64..15, 1..=2), q in 2i64..12, r in 2i64..12) {
        let mut all = rest.clone();
        all.extend([q, r]);
        prop_assume!(SeifertTuple::new(&all).map(|y| y.len() == all.len()).unwrap_or(false));
        let source = t(&[rest.as_slice(), &[q * r]].concat());
        prop_assume!(!source.is_degenerate());
        let rep = verify_pinch(&rest, q, r).unwrap();
        prop_assert!(rep.holds(), "{}", rep);
    }
}
