//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the console; exits non-zero on any FAIL.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use naw_core::action::{
    boxtimes_kernel, build_snm_action, central_product_action, diagram_report, leaf_abelian_actions, leaf_e_action,
    max_amalgamable, ActionDatum,
};
use naw_core::central::{
    eval_expr, heisenberg_decomposition, snm_verify, special_decomposition_search, SnmCertificate,
};
use naw_core::chern::{assemble_pi_g, solve_subset_coefficients, verify_subset_identity, Integers, IntegersMod};
use naw_core::ghys::{
    analyze_unitarity, build_matrices, emit_region_table, numeric_action_check, verify_relations, NumericOptions,
};
use naw_core::groups::expr::parse;
use naw_core::groups::{abelian_group, e_group, heisenberg_group, iso_search, Elem, IDENTITY};
use naw_core::waring::{build_multiset, delta_schedule, hl_bound_check, min_powers_for_neg1, DeltaMode};

/// Wall-clock budgets; `None` where no limit is stated.
const BUDGET_EGROUP: Option<Duration> = Some(Duration::from_secs(30));
const BUDGET_HEISENBERG: Option<Duration> = Some(Duration::from_secs(120));
const BUDGET_CALCULUS: Option<Duration> = Some(Duration::from_secs(120));
const BUDGET_SUBSET: Option<Duration> = Some(Duration::from_secs(60));
const BUDGET_MULTISET: Option<Duration> = Some(Duration::from_secs(60));
const BUDGET_GHYS: Option<Duration> = Some(Duration::from_secs(120));
/// Numeric agreement of the SU(2) action relations.
const GHYS_TOL: f64 = 1e-9;
const GHYS_SAMPLES: usize = 100;
const SUBSET_CASES: usize = 500;
const MIN_CENTRAL_PRODUCT_CASES: usize = 20;
const BOXTIMES_MAX_ORDER: usize = 4096;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_egroup_suite() -> Outcome {
    let mut count = 0;
    for d in 1..=6u32 {
        let h3 = heisenberg_group(1, d).map_err(|e| e.to_string())?;
        for j in 0..d {
            let g = e_group(d, j).map_err(|e| e.to_string())?;
            let el = |l: [u32; 3]| g.find(&l.map(|x| x % d)).unwrap();
            let (a, b, c) = (el([1, 0, 0]), el([0, 1, 0]), el([0, 0, 1]));
            let gj = g.pow(c, j as i64);
            let dd = d as i64;
            ensure(g.order() == (d as usize).pow(3), || format!("E({d},{j}) has order {}", g.order()))?;
            ensure(g.pow(a, dd) == gj && g.pow(b, dd) == gj && g.pow(c, dd) == IDENTITY, || {
                format!("E({d},{j}) powers")
            })?;
            ensure(g.commutator(a, c) == IDENTITY && g.commutator(b, c) == IDENTITY, || {
                format!("E({d},{j}) γ central")
            })?;
            ensure(g.commutator(a, b) == c, || format!("E({d},{j}) [α,β] ≠ γ"))?;
            let z = g.center();
            ensure(z == g.subgroup_generated(&[c]) && z.order() == d as usize, || format!("E({d},{j}) centre"))?;
            if j == 0 {
                ensure(iso_search(&g, &h3).map_err(|e| e.to_string())?.is_some(), || format!("E({d},0) ≇ H_3(Z/{d})"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} groups"))
}

fn c2_heisenberg() -> Outcome {
    let cases = [(1, 2), (1, 3), (2, 2), (2, 3), (1, 4)];
    for (n, d) in cases {
        let dec = heisenberg_decomposition(n, d).map_err(|e| e.to_string())?;
        ensure(dec.pass, || format!("H({n},{d}) decomposition"))?;
        ensure(dec.internal.commute && dec.internal.product_is_whole, || format!("H({n},{d}) internal product"))?;
        ensure(dec.factors_isomorphic_to_e_d0.iter().all(|&b| b), || format!("H({n},{d}) factors"))?;
        let (v, _) = snm_verify(&dec.group, &dec.certificate).map_err(|e| e.to_string())?;
        ensure(v.pass, || format!("H({n},{d}) snm_verify: {:?}", v.notes))?;
    }
    Ok(format!("{} cases", cases.len()))
}

fn leaf_catalogue() -> Vec<ActionDatum> {
    let mut out = Vec::new();
    for d in 1..=6u32 {
        for j in 0..d {
            let e = e_group(d, j).unwrap();
            for &z in e.center().members() {
                out.push(leaf_e_action(d, j, z).unwrap());
            }
        }
    }
    for ns in [vec![2u32], vec![3], vec![4], vec![5], vec![6], vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 6]] {
        let a = abelian_group(&ns).unwrap();
        for z in a.elements().skip(1) {
            let (f, l) = leaf_abelian_actions(&ns, a.label(z)).unwrap();
            out.push(f);
            out.push(l);
        }
    }
    out
}

fn brute_force_kernel(r1: &ActionDatum, r2: &ActionDatum) -> Vec<(Elem, Elem)> {
    let (p1, p2) = (r1.realization.as_ref().unwrap(), r2.realization.as_ref().unwrap());
    let mut out = Vec::new();
    for x in r1.group.elements() {
        for y in r2.group.elements() {
            if p1[x as usize].tensor(&p2[y as usize]).is_trivial() {
                out.push((x, y));
            }
        }
    }
    out
}

fn c3_calculus() -> Outcome {
    let leaves = leaf_catalogue();
    let mut pairs = 0;
    for r1 in &leaves {
        for r2 in &leaves {
            if r1.group.order() * r2.group.order() > BOXTIMES_MAX_ORDER {
                continue;
            }
            ensure(boxtimes_kernel(r1, r2) == brute_force_kernel(r1, r2), || {
                format!("kernel mismatch on {} ⊠ {}", r1.group.name(), r2.group.name())
            })?;
            pairs += 1;
        }
    }
    let faithful: Vec<&ActionDatum> = leaves.iter().filter(|r| r.faithful).collect();
    let mut cases = 0;
    for (i, r1) in faithful.iter().enumerate().step_by(4) {
        for r2 in faithful.iter().skip(i % 7).step_by(9) {
            let phi = max_amalgamable(r1, r2).map_err(|e| e.to_string())?;
            if r1.group.order() * r2.group.order() / phi.len() > 2048 {
                continue;
            }
            let ca = central_product_action(r1, r2, &phi).map_err(|e| e.to_string())?;
            let name = || format!("{} ⋏ {}", r1.group.name(), r2.group.name());
            ensure(ca.datum.faithful, || format!("{} not faithful", name()))?;
            ensure(ca.datum.realized_kernel() == Some(vec![IDENTITY]), || format!("{} kernel", name()))?;
            ensure(ca.zbar_multiplicative == Some(true), || format!("{} |Z̄|", name()))?;
            cases += 1;
        }
    }
    ensure(cases >= MIN_CENTRAL_PRODUCT_CASES, || format!("only {cases} central-product cases"))?;
    Ok(format!("{pairs} leaf pairs, {cases} central products"))
}

fn check_snm_action(cert: &SnmCertificate, what: &str) -> Result<(), String> {
    let a = build_snm_action(cert).map_err(|e| format!("{what}: {e}"))?;
    ensure(a.rho_f.faithful, || format!("{what}: ϱ_f not faithful"))?;
    ensure(a.rho_f.realized_kernel() == Some(vec![IDENTITY]), || format!("{what}: enumerated kernel"))?;
    ensure(a.shared_base && a.rho_f.same_base(&a.rho_1), || format!("{what}: ϱ_f and ϱ_1 differ on the base"))?;
    ensure(diagram_report(&a.rho_f).pass && diagram_report(&a.rho_1).pass, || format!("{what}: diagram"))
}

fn c4_snm_pipeline() -> Outcome {
    let mut certs = 0;
    for (n, d) in [(1, 2), (1, 3), (2, 2), (2, 3), (1, 4)] {
        let dec = heisenberg_decomposition(n, d).map_err(|e| e.to_string())?;
        check_snm_action(&dec.certificate, &format!("H({n},{d})"))?;
        certs += 1;
    }
    let specials: [(&str, u64); 12] = [
        ("E(2,0)", 2),
        ("E(2,1)", 2),
        ("CP(E(2,0),E(2,0))", 2),
        ("CP(E(2,0),E(2,1))", 2),
        ("DP(E(2,0),E(2,0))", 2),
        ("DP(A(2),A(2),A(2))", 2),
        ("E(3,0)", 3),
        ("E(3,1)", 3),
        ("DP(A(3),A(3))", 3),
        ("DP(E(2,1),E(2,1))", 2),
        ("CP(E(3,0),E(3,1))", 3),
        ("H(2,3)", 3),
    ];
    let mut groups = 0;
    for (expr, p) in specials {
        let s = eval_expr(&parse(expr).unwrap()).map_err(|e| e.to_string())?;
        let r = (s.order() as f64).log(p as f64).round() as usize;
        let dec = special_decomposition_search(&s, p, r).map_err(|e| format!("{expr}: {e}"))?;
        let dec = dec.ok_or_else(|| format!("{expr}: search found no decomposition"))?;
        ensure(dec.pass, || format!("{expr}: decomposition does not verify"))?;
        for part in &dec.parts {
            check_snm_action(&part.certificate, expr)?;
            certs += 1;
        }
        groups += 1;
    }
    Ok(format!("{certs} certificates from {groups} special groups and 5 Heisenberg groups"))
}

/// Coefficient of ∏_{i∈I} x_i in ∑_J ∏_{j∈J}(1 + g_J(j) x_j) is ∑_{J⊇I} ∏_{i∈I} g_J(i).
fn expand_oracle<T: Clone>(
    n: usize,
    g: &[Vec<T>],
    zero: T,
    one: T,
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
) -> Vec<T> {
    let size = 1usize << n;
    let mut out = vec![zero; size];
    for (j, vals) in g.iter().enumerate().skip(1) {
        let idx: Vec<usize> = (0..n).filter(|&b| j >> b & 1 == 1).collect();
        for (i, slot) in out.iter_mut().enumerate() {
            if i & !j != 0 {
                continue;
            }
            let mut term = one.clone();
            for (pos, &b) in idx.iter().enumerate() {
                if i >> b & 1 == 1 {
                    term = mul(&term, &vals[pos]);
                }
            }
            *slot = add(slot, &term);
        }
    }
    out
}

fn c5_subset_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..SUBSET_CASES {
        let n = rng.gen_range(1..=6usize);
        let f: Vec<BigInt> = (0..1usize << n).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
        let fam = solve_subset_coefficients(&Integers, n, &f).map_err(|e| e.to_string())?;
        ensure(verify_subset_identity(&Integers, n, &f, &fam).pass, || format!("Z case {case}: verifier"))?;
        let lhs = expand_oracle(n, &fam.g, BigInt::zero(), BigInt::one(), |a, b| a + b, |a, b| a * b);
        ensure(lhs[0] == BigInt::from((1i64 << n) - 1), || format!("Z case {case}: constant term"))?;
        ensure((1..1 << n).all(|i| lhs[i] == f[i]), || format!("Z case {case}: oracle"))?;

        let q = rng.gen_range(2..=97u64);
        let ring = IntegersMod(q);
        let fq: Vec<u64> = (0..1usize << n).map(|_| rng.gen_range(0..q)).collect();
        let fam = solve_subset_coefficients(&ring, n, &fq).map_err(|e| e.to_string())?;
        ensure(verify_subset_identity(&ring, n, &fq, &fam).pass, || format!("Z/{q} case {case}: verifier"))?;
        let lhs = expand_oracle(n, &fam.g, 0u64, 1u64, |a, b| (a + b) % q, |a, b| a * b % q);
        ensure(lhs[0] == ((1u64 << n) - 1) % q, || format!("Z/{q} case {case}: constant term"))?;
        ensure((1..1 << n).all(|i| lhs[i] == fq[i]), || format!("Z/{q} case {case}: oracle"))?;
    }
    Ok(format!("{SUBSET_CASES} cases over Z and over Z/q"))
}

/// (m + 1) ∏_{k=2}^{n} (4k + 1).
fn capped_n_oracle(n: usize, m: usize) -> usize {
    (2..=n).fold(m + 1, |acc, k| acc * (4 * k + 1))
}

fn parameter_sets() -> Vec<(usize, usize, u64, DeltaMode)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in 1..=2 {
            for d in 2..=5 {
                for mode in [DeltaMode::Factorial, DeltaMode::Linear] {
                    out.push((n, m, d, mode));
                }
            }
        }
    }
    out
}

fn c6_multisets() -> Outcome {
    let sets = parameter_sets();
    for &(n, m, d, mode) in &sets {
        let tag = || format!("(n,m,d)=({n},{m},{d}) {mode:?}");
        let deltas = delta_schedule(n, d, mode).map_err(|e| e.to_string())?;
        let expected: Vec<u64> = (1..=n as u32)
            .map(|k| match mode {
                DeltaMode::Factorial => d.pow(2 * k) * (1..=k as u64).product::<u64>(),
                DeltaMode::Linear => d.pow(k),
            })
            .collect();
        ensure(deltas == expected, || format!("{}: δ = {deltas:?}", tag()))?;
        let a = build_multiset(n, m, &deltas).map_err(|e| e.to_string())?;
        ensure(a.entries.len() == capped_n_oracle(n, m), || format!("{}: |A| = {}", tag(), a.entries.len()))?;
        ensure(a.entries.iter().filter(|&&x| x == 1).count() >= m, || format!("{}: too few ones", tag()))?;
        for (k, &dk) in (1..=n as u32).zip(&deltas) {
            let mut sum = BigInt::zero();
            for &x in &a.entries {
                let mut p = BigInt::one();
                for _ in 0..k {
                    p *= x;
                }
                sum += p;
            }
            ensure((sum % BigInt::from(dk)).is_zero(), || format!("{}: δ_{k} ∤ p_{k}(A)", tag()))?;
        }
    }
    Ok(format!("{} parameter sets", sets.len()))
}

/// Fewest k-th powers summing to −1 mod q, by breadth-first search.
fn min_powers_oracle(k: u32, q: u64) -> usize {
    let powers: BTreeSet<u64> = (0..q).map(|x| (0..k).fold(1 % q, |acc, _| acc * x % q)).collect();
    let mut reach: BTreeSet<u64> = [0].into();
    let target = q - 1;
    for m in 0.. {
        if reach.contains(&target) {
            return m;
        }
        reach = reach.iter().flat_map(|&r| powers.iter().map(move |&p| (r + p) % q)).collect();
    }
    unreachable!()
}

fn c7_waring() -> Outcome {
    let mut exhaustive = 0;
    for k in 1..=3 {
        for q in 2..=30u64 {
            let rep = min_powers_for_neg1(k, q).map_err(|e| e.to_string())?;
            ensure(rep.verified, || format!("k={k} q={q}: witness does not re-sum"))?;
            let want = min_powers_oracle(k, q);
            ensure(rep.m == want, || format!("k={k} q={q}: M = {} but minimum is {want}", rep.m))?;
            exhaustive += 1;
        }
    }
    let mut bound = 0;
    for k in 1..=5 {
        for q in 2..=200u64 {
            let v = hl_bound_check(k, q).map_err(|e| e.to_string())?;
            ensure(v.pass, || format!("k={k} q={q}: M = {} > {}", v.m, v.bound))?;
            bound += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive, {bound} bound checks"))
}

fn c8_cancellation() -> Outcome {
    let sets = parameter_sets();
    for &(n, m, d, mode) in &sets {
        let tag = || format!("(n,m,d)=({n},{m},{d}) {mode:?}");
        let deltas = delta_schedule(n, d, mode).map_err(|e| e.to_string())?;
        let a = build_multiset(n, m, &deltas).map_err(|e| e.to_string())?;
        let pi = assemble_pi_g(n, m, d, &a.entries, d as i64).map_err(|e| format!("{}: {e}", tag()))?;
        ensure(pi.ch_degree_zero, || format!("{}: ch has positive-degree terms", tag()))?;
        ensure(pi.recomputed_ch_matches, || format!("{}: cached ch differs", tag()))?;
        ensure(pi.reduced_rank == capped_n_oracle(n, m) + n, || format!("{}: rank {}", tag(), pi.reduced_rank))?;
    }
    let deltas = delta_schedule(1, 2, DeltaMode::Factorial).unwrap();
    let a = build_multiset(1, 1, &deltas).unwrap();
    ensure(a.entries == [-1, 1], || format!("n=m=1 multiset {:?}", a.entries))?;
    let pi = assemble_pi_g(1, 1, 2, &a.entries, 2).map_err(|e| e.to_string())?;
    ensure(pi.chi.higher_part().is_zero(), || format!("n=m=1: χ = {}", pi.chi))?;
    ensure(pi.optimized_rank == Some(2), || format!("n=m=1: optimized rank {:?}", pi.optimized_rank))?;
    Ok(format!("{} parameter sets, rank-2 specialization", sets.len()))
}

fn c9_ghys() -> Outcome {
    let mut relations = 0;
    for d in 2..=8u32 {
        for j in 0..d {
            let g = build_matrices(d, j).map_err(|e| e.to_string())?;
            for r in verify_relations(&g).map_err(|e| e.to_string())? {
                ensure(r.pass, || format!("d={d} j={j}: {} fails", r.name))?;
                relations += 1;
            }
            let u = analyze_unitarity(&g).map_err(|e| e.to_string())?;
            ensure(u.det_q_is_theta_power && !u.det_q_is_one, || format!("d={d} j={j}: det Q = {:?}", u.det_q))?;
            ensure(u.discrepancy.is_some(), || format!("d={d} j={j}: special-unitary discrepancy not flagged"))?;
        }
    }
    let mut worst: f64 = 0.0;
    for j in 0..2 {
        let g = build_matrices(2, j).map_err(|e| e.to_string())?;
        let table = emit_region_table(&g).map_err(|e| e.to_string())?;
        let opts = NumericOptions { samples: GHYS_SAMPLES, tol: GHYS_TOL, seed: 0 };
        let rep = numeric_action_check(&g, &table, &opts).map_err(|e| e.to_string())?;
        for name in ["γ^d = 1", "α^d = γ^j"] {
            let r = rep.relations.iter().find(|r| r.name == name).ok_or_else(|| format!("missing relation {name}"))?;
            ensure(r.max_deviation <= GHYS_TOL, || format!("d=2 j={j}: {name} deviates by {:e}", r.max_deviation))?;
            worst = worst.max(r.max_deviation);
        }
    }
    Ok(format!("{relations} exact relations, det Q = θ^(−2d) flagged, numeric max deviation {worst:.1e}"))
}

fn c10_determinism() -> Outcome {
    let runs: &[&[&str]] = &[
        &["egroup", "--d", "4", "--j", "3", "--verify"],
        &["heisenberg", "--n", "2", "--d", "3", "--decompose"],
        &["action", "CP(E(2,0),E(2,0))"],
        &["action", "A(2,4)"],
        &["bundle", "--n", "3", "--m", "2", "--d", "5"],
        &["bundle", "--n", "2", "--m", "1", "--d", "3", "--delta-mode", "linear", "--delta", "-3"],
        &["manifold", "--I", "(1,1);(2,1)", "--r", "2"],
        &["manifold", "--I", ""],
        &["ghys", "--d", "4", "--j", "3", "--seed", "17"],
        &["waring", "--k", "3", "--modulus", "93750"],
        &["special", "CP(E(2,0),E(2,1))", "--p", "2"],
    ];
    let bin = env!("CARGO_BIN_EXE_naw");
    for args in runs {
        let once = || Command::new(bin).args(*args).output().map_err(|e| e.to_string());
        let (a, b) = (once()?, once()?);
        ensure(a.status == b.status && a.stdout == b.stdout, || format!("{args:?} differs between runs"))?;
        ensure(!a.stdout.is_empty(), || format!("{args:?} printed nothing"))?;
    }
    Ok(format!("{} commands run twice", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("C1  E(d,j) suite, d ≤ 6", c1_egroup_suite, BUDGET_EGROUP),
        ("C2  Heisenberg decomposition", c2_heisenberg, BUDGET_HEISENBERG),
        ("C3  action calculus", c3_calculus, BUDGET_CALCULUS),
        ("C4  faithful S_{n,m} actions", c4_snm_pipeline, None),
        ("C5  subset identity, 500 random f", c5_subset_identity, BUDGET_SUBSET),
        ("C6  Waring multisets", c6_multisets, BUDGET_MULTISET),
        ("C7  Waring minimality and bound", c7_waring, None),
        ("C8  Chern cancellation", c8_cancellation, None),
        ("C9  SU(2) action certificate", c9_ghys, BUDGET_GHYS),
        ("C10 CLI determinism", c10_determinism, None),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("took {took:.1?}, budget {b:.0?}")),
            (o, _) => o,
        };
        let budget = budget.map_or("none".to_string(), |b| format!("{b:.0?}"));
        match outcome {
            Ok(detail) => println!("PASS  {name:<36} {took:>9.2?} (budget {budget})  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<36} {took:>9.2?} (budget {budget})  {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
