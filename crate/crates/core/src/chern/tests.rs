use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn degree_one(coeffs: &[i64]) -> GradedClass {
    let n = coeffs.len();
    coeffs
        .iter()
        .enumerate()
        .fold(GradedClass::zero(n), |acc, (i, &a)| acc.add(&GradedClass::omega(n, i + 1).scale(&q(a))))
}

/// exp as the truncated power series Σ x^k / k!, independent of the
/// product formula used by `exp_class`.
fn exp_series(x: &GradedClass) -> GradedClass {
    let mut out = GradedClass::one(x.n());
    let mut fact = BigInt::one();
    for k in 1..=x.n() as u32 {
        fact *= k;
        out = out.add(&x.pow(k).scale(&BigRational::new(BigInt::one(), fact.clone())));
    }
    out
}

#[test]
fn generators_square_to_zero() {
    let w = GradedClass::omega(3, 2);
    assert!(w.mul(&w).is_zero());
    let one = GradedClass::one(3);
    assert_eq!(one.add(&w).mul(&one.sub(&w)), one);
    let w1 = GradedClass::omega(3, 1);
    assert_eq!(w1.mul(&w), w.mul(&w1));
}

#[test]
fn power_of_omega_sum_is_factorial_times_elementary() {
    for n in 1..=6usize {
        let s = GradedClass::omega_sum(n);
        for k in 0..=n as u32 + 1 {
            let p = s.pow(k);
            let mut fact = BigInt::one();
            for i in 1..=k {
                fact *= i;
            }
            for sub in 0..(1u32 << n) {
                let expect =
                    if sub.count_ones() == k { BigRational::from_integer(fact.clone()) } else { BigRational::zero() };
                assert_eq!(p.coeff(sub), expect, "n={n} k={k} subset {sub:b}");
            }
        }
    }
}

#[test]
fn exp_examples() {
    let e = degree_one(&[2, 3]).exp_class().unwrap();
    assert_eq!(e.coeff(0), q(1));
    assert_eq!(e.coeff(0b01), q(2));
    assert_eq!(e.coeff(0b10), q(3));
    assert_eq!(e.coeff(0b11), q(6));
    assert!(GradedClass::one(2).exp_class().is_err());
    let s = GradedClass::omega_sum(4).scale(&q(5));
    assert_eq!(s.exp_class().unwrap(), exp_series(&s));
}

#[test]
fn pullback_scales_degree_k_by_d_to_2k() {
    let x = degree_one(&[1, 1, 1]).exp_class().unwrap();
    let y = x.pullback_eps(3);
    assert_eq!(y.coeff(0), q(1));
    assert_eq!(y.coeff(0b001), q(9));
    assert_eq!(y.coeff(0b011), q(81));
    assert_eq!(y.coeff(0b111), q(729));
    assert_eq!(y.divide_eps(3).unwrap(), x);
    assert!(x.divide_eps(2).is_err());
}

#[test]
fn subset_solution_for_zero_f() {
    let f = vec![BigInt::zero(); 4];
    let fam = solve_subset_coefficients(&Integers, 2, &f).unwrap();
    assert_eq!(fam.g[0b01], vec![BigInt::from(-1)]);
    assert_eq!(fam.g[0b10], vec![BigInt::from(0)]);
    assert_eq!(fam.g[0b11], vec![BigInt::from(1), BigInt::from(0)]);
    assert!(verify_subset_identity(&Integers, 2, &f, &fam).pass);
}

#[test]
fn subset_identity_random_over_integers_and_residues() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    for case in 0..500 {
        let n = rng.gen_range(1..=6usize);
        let f: Vec<BigInt> = (0..1usize << n).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
        let fam = solve_subset_coefficients(&Integers, n, &f).unwrap();
        let v = verify_subset_identity(&Integers, n, &f, &fam);
        assert!(v.pass, "case {case}: {:?}", v.mismatch);

        let modulus = rng.gen_range(2..=97u64);
        let ring = IntegersMod(modulus);
        let fm: Vec<u64> = (0..1usize << n).map(|_| rng.gen_range(0..modulus)).collect();
        let fam = solve_subset_coefficients(&ring, n, &fm).unwrap();
        let v = verify_subset_identity(&ring, n, &fm, &fam);
        assert!(v.pass, "case {case} mod {modulus}: {:?}", v.mismatch);
    }
}

#[test]
fn perturbed_solution_fails() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5usize);
        let f: Vec<BigInt> = (0..1usize << n).map(|_| BigInt::from(rng.gen_range(-50i64..=50))).collect();
        let mut fam = solve_subset_coefficients(&Integers, n, &f).unwrap();
        let j = rng.gen_range(1..1usize << n);
        let i = rng.gen_range(0..fam.g[j].len());
        fam.g[j][i] += 1;
        assert!(!verify_subset_identity(&Integers, n, &f, &fam).pass);
    }
    assert!(solve_subset_coefficients(&Integers, 2, &vec![BigInt::zero(); 3]).is_err());
}

#[test]
fn realize_examples() {
    let gamma = GradedClass::from_int(2, 5).add(&GradedClass::omega(2, 1).scale(&q(3))).add(&GradedClass::monomial(
        2,
        0b11,
        q(-4),
    ));
    let r = realize_class(2, &gamma).unwrap();
    assert!(r.pass);
    assert_eq!(r.bundle.rank, 3);
    assert_eq!(r.reduced_rank, 2);
    assert_eq!(r.gamma0, "2");
    assert_eq!(r.bundle.ch.higher_part(), gamma.higher_part());
    assert_eq!(r.bundle.ch.constant_term(), q(3));

    let half = GradedClass::omega(2, 1).scale(&BigRational::new(1.into(), 2.into()));
    assert!(realize_class(2, &half).is_err());
    assert!(realize_class(3, &gamma).is_err());
}

#[test]
fn realize_random_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5usize);
        let mut gamma = GradedClass::from_int(n, rng.gen_range(-5..=5));
        for s in 1..(1u32 << n) {
            gamma = gamma.add(&GradedClass::monomial(n, s, q(rng.gen_range(-20..=20))));
        }
        let r = realize_class(n, &gamma).unwrap();
        assert!(r.pass);
        assert_eq!(r.bundle.rank, (1 << n) - 1);
        assert_eq!(r.bundle.recompute().unwrap(), (r.bundle.rank, r.bundle.ch.clone()));
    }
}

fn random_bundle(rng: &mut ChaCha8Rng, n: usize, depth: u32) -> Bundle {
    let pick = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..5) };
    match pick {
        0 => {
            let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            Bundle::line("x", degree_one(&c)).unwrap()
        }
        1 => Bundle::trivial(n),
        2 => Bundle::pullback(rng.gen_range(1..=3), random_bundle(rng, n, depth - 1)),
        3 => Bundle::sum((0..rng.gen_range(1..=3)).map(|_| random_bundle(rng, n, depth - 1)).collect()).unwrap(),
        _ => Bundle::tensor((0..rng.gen_range(1..=3)).map(|_| random_bundle(rng, n, depth - 1)).collect()).unwrap(),
    }
}

/// Chern character of a bundle via the power series of each line, the
/// ring operations and the pullback, computed without the caches.
fn ch_oracle(b: &Bundle) -> GradedClass {
    match &b.expr {
        BundleExpr::Line { c1, .. } => exp_series(c1),
        BundleExpr::Trivial => GradedClass::one(b.n()),
        BundleExpr::Pullback { d, inner } => ch_oracle(inner).pullback_eps(*d),
        BundleExpr::Sum { parts } => parts.iter().fold(GradedClass::zero(b.n()), |acc, p| acc.add(&ch_oracle(p))),
        BundleExpr::Tensor { parts } => parts.iter().fold(GradedClass::one(b.n()), |acc, p| acc.mul(&ch_oracle(p))),
    }
}

#[test]
fn chern_character_is_a_ring_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4usize);
        let b = random_bundle(&mut rng, n, 3);
        assert_eq!(b.ch, ch_oracle(&b));
        assert_eq!(b.ch.constant_term(), q(b.rank as i64));
    }
}

fn power_sum(a: &[i64], k: u32) -> BigInt {
    a.iter().map(|&x| BigInt::from(x).pow(k)).sum()
}

#[test]
fn chi_coefficients_are_negated_power_sums() {
    let a = [1i64, 1, 2, 5];
    let n = 3;
    let chi = chi_of_multiset(n, 2, &a, 4).unwrap();
    for s in 0..(1u32 << n) {
        let k = s.count_ones();
        let expect = -power_sum(&a, k) * BigInt::from(4).pow(k);
        assert_eq!(chi.coeff(s), BigRational::from_integer(expect));
    }
    // δ = d needs p_k(A) ≡ 0 mod d^k.
    assert!(chi_of_multiset(1, 2, &[1], 2).is_err());
    assert!(chi_of_multiset(1, 2, &[1, 1], 2).is_ok());
}

#[test]
fn assemble_small_cases() {
    let p = assemble_pi_g(1, 1, 1, &[1, -1], 1).unwrap();
    assert!(p.ch_degree_zero && p.recomputed_ch_matches);
    assert_eq!(p.expression_rank, 3);
    assert_eq!(p.reduced_rank, 3);
    assert_eq!(p.optimized_rank, Some(2));

    let a = vec![1i64; 18];
    let p = assemble_pi_g(2, 1, 2, &a, 4).unwrap();
    assert!(p.ch_degree_zero && p.recomputed_ch_matches);
    assert_eq!(p.reduced_rank, 20);
    assert_eq!(p.expression_rank, 3 + 18);
    assert_eq!(p.optimized_rank, None);
    assert_eq!(p.bundle.ch.constant_term(), q(21));
    assert_eq!(p.chi.pullback_eps(1), p.chi);

    assert!(assemble_pi_g(1, 1, 1, &[0, 0], 1).is_err());
    assert!(assemble_pi_g(1, 2, 1, &[1, 2], 1).is_err());
}

#[test]
fn triviality_checks() {
    let v = triviality_preconditions(3, 5, &GradedClass::from_int(3, 5));
    assert!(v.pass);
    assert_eq!(v.k0_rank, "32");
    assert!(!triviality_preconditions(3, 2, &GradedClass::from_int(3, 2)).pass);
    assert!(!triviality_preconditions(1, 2, &GradedClass::omega(1, 1)).pass);
}

#[test]
fn serialization_is_ordered_by_degree() {
    let x = degree_one(&[1, 2]).exp_class().unwrap();
    let s = serde_json::to_string(&x).unwrap();
    assert_eq!(s, r#"{"[]":"1","[1]":"1","[2]":"2","[1,2]":"2"}"#);
    assert_eq!(x.to_string(), "1 + 1·ω1 + 2·ω2 + 2·ω1·ω2");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pullback_is_a_ring_homomorphism(a in prop::collection::vec(-9i64..=9, 8), b in prop::collection::vec(-9i64..=9, 8), d in 1u64..=4) {
        let build = |v: &[i64]| (0..8u32).fold(GradedClass::zero(3), |acc, s| acc.add(&GradedClass::monomial(3, s, q(v[s as usize]))));
        let (x, y) = (build(&a), build(&b));
        prop_assert_eq!(x.mul(&y).pullback_eps(d), x.pullback_eps(d).mul(&y.pullback_eps(d)));
        prop_assert_eq!(x.add(&y).pullback_eps(d), x.pullback_eps(d).add(&y.pullback_eps(d)));
    }

    #[test]
    fn exp_turns_sums_into_products(a in prop::collection::vec(-6i64..=6, 4), b in prop::collection::vec(-6i64..=6, 4)) {
        let (x, y) = (degree_one(&a), degree_one(&b));
        prop_assert_eq!(x.add(&y).exp_class().unwrap(), x.exp_class().unwrap().mul(&y.exp_class().unwrap()));
    }
}

#[test]
fn waring_multisets_cancel_to_degree_zero() {
    use crate::waring::{build_multiset, delta_schedule, DeltaMode};
    for n in 1..=3usize {
        for m in 1..=2usize {
            for d in 2..=3u64 {
                for mode in [DeltaMode::Factorial, DeltaMode::Linear] {
                    let a = build_multiset(n, m, &delta_schedule(n, d, mode).unwrap()).unwrap();
                    for delta in [d as i64, -(d as i64)] {
                        let p = assemble_pi_g(n, m, d, &a.entries, delta).unwrap();
                        assert!(p.ch_degree_zero, "n={n} m={m} d={d} {mode:?} δ={delta}");
                        assert_eq!(p.reduced_rank as u64, crate::waring::rank_r(n, m).unwrap());
                        assert!(triviality_preconditions(n, p.reduced_rank, &p.bundle.ch).pass);
                    }
                }
            }
        }
    }
}
