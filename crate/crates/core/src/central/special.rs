use serde::Serialize;

use super::snm::{order_bound_check, snm_verify, standard_certificate, OrderBound, SnmCertificate, SnmVerdict};
use crate::caps::Caps;
use crate::error::{NawError, Result};
use crate::groups::{abelian_group, e_group, is_special_p_group, iso_search, Elem, FiniteGroup, Subgroup, IDENTITY};

#[derive(Debug, Clone, Serialize)]
pub struct SpecialPart {
    pub k_members: Vec<Elem>,
    pub quotient_order: usize,
    pub certificate: SnmCertificate,
    pub verdict: SnmVerdict,
    pub bound: OrderBound,
    /// For the elementary abelian branch: S/K_i ≅ Z(G_i) was checked.
    pub embeds_in_center: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialDecomposition {
    pub p: u64,
    pub r: usize,
    /// log_p |Z(S)|.
    pub s: usize,
    pub branch: &'static str,
    pub parts: Vec<SpecialPart>,
    /// ∩ K_i = 1, i.e. S embeds diagonally into ∏ S/K_i.
    pub injective: bool,
    pub pass: bool,
}

fn log_p(mut n: usize, p: u64) -> usize {
    let mut k = 0;
    while n > 1 {
        n /= p as usize;
        k += 1;
    }
    k
}

fn nondecreasing(n: usize, vals: &[u32]) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        for mut rest in nondecreasing(n - 1, &vals[i..]) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

fn tuples(n: usize, vals: &[u32]) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in tuples(n - 1, vals) {
        for &v in vals {
            let mut t = rest.clone();
            t.push(v);
            out.push(t);
        }
    }
    out
}

/// Searches E(p,j_1) ⋏ ... ⋏ E(p,j_n) ⋏ A with A ∈ {Z_p^a, Z_p^{a−1} × Z_{p²}}
/// for a group isomorphic to `q`; first match in canonical order.
pub fn find_snm_certificate(q: &FiniteGroup, p: u64) -> Result<Option<(SnmCertificate, SnmVerdict)>> {
    let k = log_p(q.order(), p);
    let p32 = p as u32;
    let js_vals = [0u32, 1];
    let units: Vec<u32> = (1..p32).collect();
    let mut n = 1;
    while 2 * n < k {
        let rest = k - 2 * n;
        let mut shapes: Vec<Vec<u32>> = vec![vec![p32; rest]];
        if rest >= 2 {
            let mut s = vec![p32; rest - 2];
            s.push(p32 * p32);
            shapes.push(s);
        }
        for shape in shapes {
            let a = abelian_group(&shape)?;
            let zs: Vec<Elem> = a.elements().filter(|&x| a.order_of(x) == p).collect();
            for js in nondecreasing(n, &js_vals) {
                for us in tuples(n - 1, &units) {
                    for &z in &zs {
                        let (cert, assembly) = standard_certificate(p32, &js, &us, &shape, a.label(z))?;
                        if iso_search(q, &assembly.group)?.is_some() {
                            let (verdict, _) = snm_verify(q, &cert)?;
                            if verdict.pass {
                                return Ok(Some((cert, verdict)));
                            }
                        }
                    }
                }
            }
        }
        n += 1;
    }
    Ok(None)
}

/// Bounded search for central K_i ⊆ Z(S) with ∩K_i = 1 and every S/K_i
/// certified in some S_{n_i,m_i}, checking 2n_i + m_i ≤ max(r,3).
pub fn special_decomposition_search(s: &FiniteGroup, p: u64, r: usize) -> Result<Option<SpecialDecomposition>> {
    let caps = Caps::from_env();
    caps.check("special_decomposition_search", s.order(), caps.special_order)?;
    if (p as usize).checked_pow(r as u32) != Some(s.order()) {
        return Err(NawError::InvalidInput(format!("|S| = {} is not {p}^{r}", s.order())));
    }
    let verdict = is_special_p_group(s, p)?;
    if !verdict.special {
        return Err(NawError::InvalidInput(format!("{} is not a special {p}-group", s.name())));
    }
    let bound_r = r.max(3);
    let s_rank = log_p(verdict.center_order, p);
    if verdict.elementary_abelian {
        return elementary_abelian_branch(s, p, r, s_rank).map(Some);
    }
    let center = s.center();
    let mut matched: Vec<(Subgroup, SpecialPart)> = Vec::new();
    for k in s.abelian_subgroups(&center) {
        let (q, _) = s.quotient(&k)?;
        if q.is_abelian() {
            continue;
        }
        if let Some((cert, verdict)) = find_snm_certificate(&q, p)? {
            let bound = order_bound_check(cert.n, cert.m, bound_r);
            matched.push((
                k.clone(),
                SpecialPart {
                    k_members: k.members().to_vec(),
                    quotient_order: q.order(),
                    certificate: cert,
                    verdict,
                    bound,
                    embeds_in_center: None,
                },
            ));
        }
    }
    for t in 1..=s_rank.max(1) {
        if let Some(choice) = first_trivial_intersection(s, &matched, t) {
            let parts: Vec<SpecialPart> = choice.iter().map(|&i| matched[i].1.clone()).collect();
            let pass = parts.iter().all(|p| p.verdict.pass && p.bound.pass);
            return Ok(Some(SpecialDecomposition {
                p,
                r,
                s: s_rank,
                branch: "non_abelian",
                parts,
                injective: true,
                pass,
            }));
        }
    }
    Ok(None)
}

fn first_trivial_intersection(s: &FiniteGroup, matched: &[(Subgroup, SpecialPart)], t: usize) -> Option<Vec<usize>> {
    fn rec(
        s: &FiniteGroup,
        matched: &[(Subgroup, SpecialPart)],
        t: usize,
        start: usize,
        acc: Subgroup,
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if chosen.len() == t {
            return acc.is_trivial().then(|| chosen.clone());
        }
        for i in start..matched.len() {
            chosen.push(i);
            let next = s.intersection(&acc, &matched[i].0);
            if let Some(found) = rec(s, matched, t, i + 1, next, chosen) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
    rec(s, matched, t, 0, s.whole(), &mut Vec::new())
}

fn elementary_abelian_branch(s: &FiniteGroup, p: u64, r: usize, s_rank: usize) -> Result<SpecialDecomposition> {
    let basis = s.generators();
    let p32 = p as u32;
    let (cert, assembly) = standard_certificate(p32, &[0], &[], &[p32], &[1])?;
    let (verdict, _) = snm_verify(&assembly.group, &cert)?;
    let is_e_p0 = iso_search(&assembly.group, &e_group(p32, 0)?)?.is_some();
    let (center_group, _) = assembly.group.subgroup_as_group(&assembly.group.center());
    let mut parts = Vec::new();
    let mut meet = s.whole();
    for i in 0..basis.len() {
        let others: Vec<Elem> = basis.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
        let k = s.subgroup_generated(&others);
        meet = s.intersection(&meet, &k);
        let (q, _) = s.quotient(&k)?;
        let embeds = iso_search(&q, &center_group)?.is_some() && is_e_p0;
        parts.push(SpecialPart {
            k_members: k.members().to_vec(),
            quotient_order: q.order(),
            certificate: cert.clone(),
            verdict: verdict.clone(),
            bound: order_bound_check(cert.n, cert.m, r.max(3)),
            embeds_in_center: Some(embeds),
        });
    }
    let injective = meet.members() == [IDENTITY];
    let pass = injective && parts.iter().all(|p| p.verdict.pass && p.bound.pass && p.embeds_in_center == Some(true));
    Ok(SpecialDecomposition { p, r, s: s_rank, branch: "elementary_abelian", parts, injective, pass })
}
