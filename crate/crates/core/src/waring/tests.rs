use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use super::*;

/// Smallest t such that some multiset of t bases in 0..q has k-th power
/// sum ≡ −1 (mod q), by enumerating nondecreasing tuples.
fn exhaustive_min(k: u32, q: u64) -> usize {
    fn reach(k: u32, q: u64, t: usize, start: u64, acc: u64) -> bool {
        if t == 0 {
            return acc == q - 1;
        }
        (start..q).any(|x| reach(k, q, t - 1, x, (acc + x.pow(k) % q) % q))
    }
    (1..).find(|&t| reach(k, q, t, 0, 0)).unwrap()
}

#[test]
fn min_powers_examples() {
    let r = min_powers_for_neg1(2, 4).unwrap();
    assert_eq!((r.m, r.witness.clone()), (3, vec![1, 1, 1]));
    let r = min_powers_for_neg1(2, 8).unwrap();
    assert_eq!((r.m, r.witness.clone()), (4, vec![2, 1, 1, 1]));
    assert!(r.verified);
    for q in [2u64, 7, 64, 1000] {
        let r = min_powers_for_neg1(1, q).unwrap();
        assert_eq!((r.m, r.witness), (1, vec![q - 1]));
    }
    let r = min_powers_for_neg1(2, 32).unwrap();
    assert_eq!((r.m, r.witness), (4, vec![5, 2, 1, 1]));
    assert!(min_powers_for_neg1(0, 5).is_err());
    assert!(min_powers_for_neg1(2, 1).is_err());
}

#[test]
fn min_powers_is_minimal_against_enumeration() {
    for k in 1..=3u32 {
        for q in 2..=30u64 {
            let r = min_powers_for_neg1(k, q).unwrap();
            assert_eq!(r.m, exhaustive_min(k, q), "k={k} q={q}");
            assert!(r.verified);
            assert_eq!(r.witness.len(), r.m);
            assert!(r.witness.iter().all(|&x| x > 0 && x < q));
        }
    }
}

#[test]
fn bound_sweep() {
    for k in 1..=5u32 {
        for q in 2..=200u64 {
            let v = hl_bound_check(k, q).unwrap();
            assert!(v.pass, "k={k} q={q} m={}", v.m);
        }
    }
}

#[test]
fn large_moduli_from_the_delta_schedule() {
    for d in 2..=5u64 {
        for (k, q) in delta_schedule(3, d, DeltaMode::Factorial).unwrap().into_iter().enumerate() {
            let k = k as u32 + 1;
            let r = min_powers_for_neg1(k, q).unwrap();
            assert!(r.verified && r.m <= power_cap(k), "d={d} k={k} q={q}");
        }
    }
}

#[test]
fn rank_bookkeeping() {
    assert_eq!(capped_n(1, 1).unwrap(), 2);
    assert_eq!(capped_n(2, 1).unwrap(), 18);
    assert_eq!(capped_n(2, 2).unwrap(), 27);
    assert_eq!(capped_n(3, 1).unwrap(), 2 * 9 * 13);
    assert_eq!(rank_r(1, 1).unwrap(), 3);
    assert_eq!(rank_r(2, 1).unwrap(), 20);
    for n in 1..=6 {
        for m in 1..=6 {
            assert!(rank_r(n, m).unwrap() >= n as u64);
        }
    }
}

#[test]
fn delta_schedules() {
    assert_eq!(delta_schedule(2, 2, DeltaMode::Factorial).unwrap(), vec![4, 32]);
    assert_eq!(delta_schedule(1, 1, DeltaMode::Factorial).unwrap(), vec![1]);
    assert_eq!(delta_schedule(2, 3, DeltaMode::Linear).unwrap(), vec![3, 9]);
    assert!(delta_schedule(30, 1000, DeltaMode::Factorial).is_err());
    assert!(delta_schedule(2, 0, DeltaMode::Linear).is_err());
}

#[test]
fn build_multiset_examples() {
    let a = build_multiset(1, 1, &[7]).unwrap();
    assert_eq!(a.entries, vec![-1, 1]);
    assert_eq!(a.power_sums, vec![BigInt::from(0)]);

    let a = build_multiset(1, 3, &[5]).unwrap();
    assert_eq!(a.entries, vec![-3, 1, 1, 1]);
    assert_eq!(a.multiplicity(1), 3);

    let a = build_multiset(2, 1, &[4, 32]).unwrap();
    assert_eq!(a.cardinality(), 18);
    assert_eq!(a.power_sums[0], BigInt::from(0));
    let a2 = &a.factors[1].entries;
    assert_eq!(a2.len(), 9);
    assert_eq!(power_sum(a2, 2), BigInt::from(32));
    assert!(a.power_sums[1].is_multiple_of(&BigInt::from(32)));

    assert!(build_multiset(2, 1, &[4, 0]).is_err());
    assert!(build_multiset(2, 1, &[4]).is_err());
    assert!(build_multiset(0, 1, &[]).is_err());
}

#[test]
fn build_multiset_sweep_passes_independent_check() {
    for n in 1..=3usize {
        for m in 1..=2usize {
            for d in 2..=5u64 {
                for mode in [DeltaMode::Factorial, DeltaMode::Linear] {
                    let deltas = delta_schedule(n, d, mode).unwrap();
                    let a = build_multiset(n, m, &deltas).unwrap();
                    assert_eq!(a.cardinality() as u64, capped_n(n, m).unwrap());
                    assert!(a.multiplicity(1) >= m);
                    for (k, &delta) in (1..=n as u32).zip(&deltas) {
                        let p: BigInt = a.entries.iter().map(|&x| BigInt::from(x).pow(k)).sum();
                        assert!(p.is_multiple_of(&BigInt::from(delta)), "n={n} m={m} d={d} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn multiset_serializes_as_pairs() {
    let a = build_multiset(1, 2, &[3]).unwrap();
    let v = serde_json::to_value(&a).unwrap();
    assert_eq!(v["entries"], serde_json::json!([[-2, 1], [1, 2]]));
    assert_eq!(a.pairs(), vec![(-2, 1), (1, 2)]);
}

#[test]
fn manifold_examples() {
    let r = manifold_report(&[(1, 1)], 1).unwrap();
    assert_eq!(r.description, "T^2×U(3)");
    assert_eq!(r.dim, 2 + 9);
    assert_eq!(r.headline[0].bound, 5);
    assert!(r.pass);

    let r = manifold_report(&[(2, 1)], 1).unwrap();
    assert_eq!(r.factors[0].unitary_rank, 20);
    assert_eq!(r.headline[0].bound, 50);
    assert!(r.headline[0].pass);

    let r = manifold_report(&[(1, 1), (2, 1)], 2).unwrap();
    assert_eq!(r.dim, 11 + 4 + 400);
    assert_eq!(r.power_dim, 2 * 415);
    assert_eq!(r.special_family.torus_dim, 6);
    assert_eq!(r.special_family.unitary_rank, 25);
    assert_eq!(r.factors[0].su_alternative_dim, 2 + 15);

    assert!(manifold_report(&[], 1).is_err());
    assert!(manifold_report(&[(1, 1)], 0).is_err());
}

#[test]
fn headline_bound_holds_widely() {
    for n in 1..=12 {
        let r = manifold_report(&[(n, 1)], 1).unwrap();
        assert!(r.headline[0].pass, "n={n}");
    }
    for r in 1..=10 {
        assert!(manifold_report(&[(1, 1)], r).unwrap().special_family.ranks_fit, "r={r}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn power_sums_multiply(a in prop::collection::vec(-50i64..=50, 0..12), b in prop::collection::vec(-50i64..=50, 0..12), k in 1u32..=5) {
        let ab = product_multiset(&a, &b).unwrap();
        prop_assert_eq!(power_sum(&ab, k), power_sum(&a, k) * power_sum(&b, k));
    }

    #[test]
    fn witness_resums(k in 1u32..=6, q in 2u64..=400) {
        let r = min_powers_for_neg1(k, q).unwrap();
        let s: u128 = r.witness.iter().map(|&x| (x as u128).pow(k) % q as u128).sum();
        prop_assert_eq!(s % q as u128, q as u128 - 1);
    }
}
