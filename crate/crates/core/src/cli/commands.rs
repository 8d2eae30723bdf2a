use serde::Serialize;
use serde_json::json;

use crate::action::{build_snm_action, diagram_report, leaf_abelian_actions, leaf_e_action};
use crate::central::{
    eval_expr, find_snm_certificate, heisenberg_decomposition, snm_verify, special_decomposition_search,
    standard_certificate, SnmCertificate,
};
use crate::cert::{Certificate, Status};
use crate::chern::{assemble_pi_g, triviality_preconditions};
use crate::error::{NawError, Result};
use crate::ghys::{emit_certificate, NumericOptions};
use crate::groups::expr::{parse, GroupExpr};
use crate::groups::{dihedral_group, e_group, iso_search, prime_factors, quaternion_group, FiniteGroup, IDENTITY};
use crate::waring::{
    build_multiset, delta_schedule, manifold_report, min_powers_for_neg1, power_cap, rank_r, DeltaMode,
};

pub fn cmd_egroup(d: u32, j: u32, verify: bool, seed: u64) -> Result<Certificate> {
    let mut cert = Certificate::new("egroup", json!({ "d": d, "j": j, "verify": verify }), seed);
    let g = e_group(d, j)?;
    let expected = (d as usize).pow(3);
    cert.check("order is d³", g.order() == expected, json!({ "order": g.order(), "expected": expected }));
    if verify {
        let find = |l: [u32; 3]| g.find(&l.map(|x| x % d)).expect("generator label");
        let (a, b, c) = (find([1, 0, 0]), find([0, 1, 0]), find([0, 0, 1]));
        let gj = g.pow(c, j as i64);
        let dd = d as i64;
        cert.check("α^d = γ^j", g.pow(a, dd) == gj, json!(null));
        cert.check("β^d = γ^j", g.pow(b, dd) == gj, json!(null));
        cert.check("γ^d = 1", g.pow(c, dd) == IDENTITY, json!(null));
        cert.check(
            "[α, γ] = [β, γ] = 1",
            g.commutator(a, c) == IDENTITY && g.commutator(b, c) == IDENTITY,
            json!(null),
        );
        cert.check("[α, β] = γ", g.commutator(a, b) == c, json!(null));
        let z = g.center();
        let gamma = g.subgroup_generated(&[c]);
        cert.check("Z = ⟨γ⟩ of order d", z == gamma && z.order() == d as usize, json!({ "center_order": z.order() }));
        cert.check("multiplication is associative", g.is_associative(), json!(null));
        if g.order() == 8 {
            let q8 = iso_search(&g, &quaternion_group()?)?.is_some();
            let d8 = iso_search(&g, &dihedral_group(4)?)?.is_some();
            let name = if q8 {
                "Q8"
            } else if d8 {
                "D8"
            } else {
                "other"
            };
            cert.artifact("isomorphism_type", name);
        }
    }
    cert.artifact("group", g.name());
    Ok(cert)
}

pub fn cmd_heisenberg(n: u32, d: u32, decompose: bool, seed: u64) -> Result<Certificate> {
    let mut cert = Certificate::new("heisenberg", json!({ "n": n, "d": d, "decompose": decompose }), seed);
    let h = crate::groups::heisenberg_group(n, d)?;
    let expected = (d as usize).pow(2 * n + 1);
    cert.check("order is d^(2n+1)", h.order() == expected, json!({ "order": h.order(), "expected": expected }));
    if decompose && n >= 1 {
        let dec = heisenberg_decomposition(n, d)?;
        cert.check("internal central product", dec.internal.pass, &dec.internal);
        cert.check("pairwise intersections equal ⟨γ⟩", dec.intersections_equal_a, json!(null));
        cert.check(
            "factors ≅ E(d,0)",
            dec.factors_isomorphic_to_e_d0.iter().all(|&b| b),
            &dec.factors_isomorphic_to_e_d0,
        );
        cert.check("S_{n,1} certificate verifies", dec.verdict.pass, &dec.verdict);
        cert.artifact("factor_count", dec.certificate.factors.len());
        cert.artifact("certificate", &dec.certificate);
    }
    Ok(cert)
}

fn parse_label(s: &str) -> Result<Vec<u32>> {
    s.trim()
        .trim_matches(|c| c == '[' || c == ']' || c == '(' || c == ')')
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| NawError::InvalidInput(format!("bad label entry {t:?}: {e}"))))
        .collect()
}

/// Leaves of a left-nested chain of central products.
fn cp_leaves(e: &GroupExpr, out: &mut Vec<GroupExpr>) {
    match e {
        GroupExpr::CP(a, b) => {
            cp_leaves(a, out);
            cp_leaves(b, out);
        }
        other => out.push(other.clone()),
    }
}

/// E(d,j_1) ⋏ ... ⋏ E(d,j_n) [⋏ A]: the standard certificate with γ glued to γ.
fn chain_certificate(leaves: &[GroupExpr], z: Option<&[u32]>) -> Result<Option<SnmCertificate>> {
    let (es, tail) = match leaves.last() {
        Some(GroupExpr::A(ns)) => (&leaves[..leaves.len() - 1], Some(ns.clone())),
        _ => (leaves, None),
    };
    let mut js = Vec::new();
    let mut d0 = None;
    for l in es {
        match l {
            GroupExpr::E(d, j) if d0.is_none_or(|x| x == *d) => {
                d0 = Some(*d);
                js.push(*j);
            }
            _ => return Ok(None),
        }
    }
    let Some(d) = d0 else { return Ok(None) };
    let abelian = tail.unwrap_or_else(|| vec![d]);
    let zl = match z {
        Some(l) => l.to_vec(),
        None => {
            let a = crate::groups::abelian_group(&abelian)?;
            match a.elements().find(|&x| a.order_of(x) == d as u64) {
                Some(x) => a.label(x).to_vec(),
                None => return Ok(None),
            }
        }
    };
    let units = vec![1; js.len() - 1];
    Ok(Some(standard_certificate(d, &js, &units, &abelian, &zl)?.0))
}

fn prime_power(n: usize) -> Option<u64> {
    let ps = prime_factors(n as u64);
    (ps.len() == 1).then(|| ps[0])
}

pub fn cmd_action(expr: &str, z: Option<&str>, seed: u64) -> Result<Certificate> {
    let mut cert = Certificate::new("action", json!({ "expr": expr, "z": z }), seed);
    let e = parse(expr)?;
    let z = z.map(parse_label).transpose()?;
    match &e {
        GroupExpr::E(d, j) => {
            let g = e_group(*d, *j)?;
            let zl = z.unwrap_or_else(|| vec![0, 0, 1 % d]);
            let zel = g.find(&zl).ok_or_else(|| NawError::InvalidInput(format!("{zl:?} is not in {}", g.name())))?;
            let rho = leaf_e_action(*d, *j, zel)?;
            let rep = diagram_report(&rho);
            cert.check("diagram is exact", rep.pass, &rep);
            cert.check("action is faithful", rho.faithful, json!(null));
            let b = (*d as usize).pow(2);
            cert.check("B has order d²", rho.b_order() == b, json!({ "b_order": rho.b_order() }));
            cert.artifact("route", "leaf_e");
            cert.artifact("rho", rho.summary());
            return Ok(cert);
        }
        GroupExpr::A(ns) => {
            let a = crate::groups::abelian_group(ns)?;
            let zl = match z {
                Some(l) => l,
                None => {
                    let top = a.exponent();
                    let x = a.elements().find(|&x| a.order_of(x) == top).unwrap_or(IDENTITY);
                    a.label(x).to_vec()
                }
            };
            let (faithful, line) = leaf_abelian_actions(ns, &zl)?;
            let (rf, r1) = (diagram_report(&faithful), diagram_report(&line));
            cert.check("faithful diagram is exact", rf.pass, &rf);
            cert.check("line diagram is exact", r1.pass, &r1);
            cert.check("diagonal action is faithful", faithful.faithful, json!(null));
            cert.check("actions share base data", faithful.same_base(&line), json!(null));
            cert.artifact("route", "leaf_abelian");
            cert.artifact("rho_f", faithful.summary());
            cert.artifact("rho_1", line.summary());
            return Ok(cert);
        }
        _ => {}
    }
    let g = eval_expr(&e)?;
    let (route, snm) = match &e {
        GroupExpr::H(n, d) => ("heisenberg", Some(heisenberg_decomposition(*n, *d)?.certificate)),
        GroupExpr::CP(..) => {
            let mut leaves = Vec::new();
            cp_leaves(&e, &mut leaves);
            ("chain", chain_certificate(&leaves, z.as_deref())?)
        }
        _ => ("search", None),
    };
    let (route, snm) = match snm {
        Some(c) if snm_verify(&g, &c)?.0.pass => (route, Some(c)),
        _ => match prime_power(g.order()) {
            Some(p) => ("search", find_snm_certificate(&g, p)?.map(|(c, _)| c)),
            None => ("search", None),
        },
    };
    cert.artifact("route", route);
    let Some(snm) = snm else {
        cert.push("S_{n,m} certificate found", Status::Inconclusive, json!({ "order": g.order() }));
        return Ok(cert);
    };
    let (verdict, _) = snm_verify(&g, &snm)?;
    cert.check("S_{n,m} certificate verifies", verdict.pass, &verdict);
    let act = build_snm_action(&snm)?;
    let (rf, r1) = (diagram_report(&act.rho_f), diagram_report(&act.rho_1));
    cert.check("ϱ_f diagram is exact", rf.pass, &rf);
    cert.check("ϱ_1 diagram is exact", r1.pass, &r1);
    cert.check("ϱ_f is faithful", act.rho_f.faithful, json!({ "order": act.rho_f.group.order() }));
    cert.check("ϱ_f and ϱ_1 share base data", act.shared_base, json!(null));
    cert.artifact("certificate", &snm);
    cert.artifact("summary", act.summary());
    cert.artifact("rho_f", act.rho_f.summary());
    cert.artifact("rho_1", act.rho_1.summary());
    Ok(cert)
}

pub fn cmd_bundle(n: usize, m: usize, d: u64, mode: DeltaMode, delta: Option<i64>, seed: u64) -> Result<Certificate> {
    #[derive(Serialize)]
    struct Inputs {
        n: usize,
        m: usize,
        d: u64,
        delta_mode: DeltaMode,
        delta: Option<i64>,
    }
    let mut cert = Certificate::new("bundle", Inputs { n, m, d, delta_mode: mode, delta }, seed);
    if n > 4 {
        return Err(NawError::CapExceeded { what: "bundle n".into(), size: n, cap: 4 });
    }
    let deltas = delta_schedule(n, d, mode)?;
    let a = build_multiset(n, m, &deltas)?;
    let verdict = a.verify()?;
    cert.check("multiset invariants", verdict.pass, &verdict);
    let delta = delta.unwrap_or(i64::try_from(d).map_err(|_| NawError::Overflow)?);
    let pi = assemble_pi_g(n, m, d, &a.entries, delta)?;
    cert.check("π_χ realizes γ", pi.pi_chi.pass, json!({ "reduced_rank": pi.pi_chi.reduced_rank }));
    cert.check("ch(π_G) is concentrated in degree 0", pi.ch_degree_zero, pi.bundle.ch.to_string());
    cert.check("cached ch matches recomputation", pi.recomputed_ch_matches, json!(null));
    let r = rank_r(n, m)?;
    cert.check(
        "reduced rank is R(n, m)",
        pi.reduced_rank as u64 == r,
        json!({ "reduced_rank": pi.reduced_rank, "R": r }),
    );
    let triv = triviality_preconditions(n, pi.reduced_rank, &pi.bundle.ch);
    cert.check("triviality preconditions", triv.pass, &triv);
    cert.artifact("deltas", &deltas);
    cert.artifact("multiset", &a);
    cert.artifact("chi", pi.chi.to_string());
    cert.artifact("gamma", pi.gamma.to_string());
    cert.artifact("f", &pi.pi_chi.f);
    cert.artifact(
        "ranks",
        json!({
            "expression": pi.expression_rank,
            "reduced": pi.reduced_rank,
            "optimized": pi.optimized_rank,
        }),
    );
    Ok(cert)
}

/// Parses "(n,m);(n,m);..." into pairs.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for item in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let inner = item
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| NawError::Parse { pos: 0, msg: format!("expected (n,m), got {item:?}") })?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|t| t.trim().parse().map_err(|e| NawError::Parse { pos: 0, msg: format!("{t:?}: {e}") }))
            .collect::<Result<_>>()?;
        match nums[..] {
            [n, m] => out.push((n, m)),
            _ => return Err(NawError::Parse { pos: 0, msg: format!("expected two entries in {item:?}") }),
        }
    }
    Ok(out)
}

pub fn cmd_manifold(pairs: &str, r: usize, seed: u64) -> Result<Certificate> {
    let mut cert = Certificate::new("manifold", json!({ "I": pairs, "r": r }), seed);
    let parsed = parse_pairs(pairs)?;
    let rep = manifold_report(&parsed, r)?;
    cert.check("dimensions are consistent", rep.pass, json!({ "dim": rep.dim, "description": rep.description }));
    cert.check("R(n,1) ≤ 5ⁿ n!", rep.headline.iter().all(|h| h.pass), &rep.headline);
    cert.artifact("report", &rep);
    Ok(cert)
}

pub fn cmd_ghys(d: u32, j: u32, samples: usize, tol: f64, seed: u64) -> Result<Certificate> {
    emit_certificate(d, j, &NumericOptions { samples, tol, seed })
}

pub fn cmd_waring(k: u32, modulus: u64, seed: u64) -> Result<Certificate> {
    let mut cert = Certificate::new("waring", json!({ "k": k, "modulus": modulus }), seed);
    let rep = min_powers_for_neg1(k, modulus)?;
    cert.check("witness sums to −1", rep.verified, &rep.witness);
    let cap = power_cap(k);
    cert.check("M ≤ 4k", rep.m <= cap, json!({ "m": rep.m, "cap": cap }));
    cert.artifact("representation", &rep);
    Ok(cert)
}

pub fn cmd_special(expr: &str, p: u64, r: Option<usize>, seed: u64) -> Result<Certificate> {
    let mut cert = Certificate::new("special", json!({ "expr": expr, "p": p, "r": r }), seed);
    let s: FiniteGroup = eval_expr(&parse(expr)?)?;
    let r = match r {
        Some(r) => r,
        None => {
            let mut k = 0;
            let mut n = s.order();
            while n > 1 && n.is_multiple_of(p as usize) {
                n /= p as usize;
                k += 1;
            }
            k
        }
    };
    match special_decomposition_search(&s, p, r)? {
        Some(dec) => {
            cert.check("∩ K_i = 1", dec.injective, json!(null));
            cert.check(
                "every quotient is certified in S_{n,m}",
                dec.parts.iter().all(|x| x.verdict.pass),
                dec.parts.iter().map(|x| x.verdict.pass).collect::<Vec<_>>(),
            );
            cert.check(
                "2n + m ≤ max(r, 3)",
                dec.parts.iter().all(|x| x.bound.pass),
                dec.parts.iter().map(|x| &x.bound).collect::<Vec<_>>(),
            );
            cert.artifact("branch", dec.branch);
            cert.artifact("decomposition", &dec);
        }
        None => cert.push("decomposition found", Status::Inconclusive, json!({ "order": s.order() })),
    }
    Ok(cert)
}
