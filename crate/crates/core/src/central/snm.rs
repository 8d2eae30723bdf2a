use serde::Serialize;

use super::product::{
    central_product, cyclic_iso, internal_central_product_check, is_maximal_central_iso, CentralProduct,
    InternalVerdict, MaximalityVerdict,
};
use crate::error::{NawError, Result};
use crate::groups::{
    abelian_group, e_group, heisenberg_group, iso_search, min_generators, Elem, FiniteGroup, Iso, IDENTITY,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EFactor {
    pub d: u32,
    pub j: u32,
}

/// One amalgamation step: the generator of the cyclic subgroup on the left
/// (a label in the product built so far) and its image in the next factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Amalgamation {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub order: u64,
}

/// Witness that a group lies in S_{n,m}: E_1 ⋏ ... ⋏ E_n ⋏ A.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnmCertificate {
    pub n: usize,
    pub m: usize,
    pub d: u64,
    pub factors: Vec<EFactor>,
    pub abelian_part: Vec<u32>,
    pub amalgamations: Vec<Amalgamation>,
    pub maximality_witnesses: Vec<bool>,
}

/// The iterated central product rebuilt from a certificate.
#[derive(Debug, Clone)]
pub struct Assembly {
    pub group: FiniteGroup,
    /// E_1, ..., E_n, A in order.
    pub factors: Vec<FiniteGroup>,
    /// Stage i amalgamates the product of the first i+1 factors with factor i+1.
    pub stages: Vec<CentralProduct>,
    pub maximality: Vec<MaximalityVerdict>,
    pub amalgamation_isos: Vec<Iso>,
}

impl Assembly {
    /// Embedding of factor `i` into the final group.
    pub fn factor_embedding(&self, i: usize) -> Vec<Elem> {
        let (mut map, start): (Vec<Elem>, usize) = if i == 0 {
            (self.factors[0].elements().collect(), 0)
        } else {
            (self.stages[i - 1].right_embed.clone(), i)
        };
        for stage in &self.stages[start..] {
            map = map.iter().map(|&x| stage.left_embed[x as usize]).collect();
        }
        map
    }
}

fn factor_groups(cert: &SnmCertificate) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    for f in &cert.factors {
        out.push(e_group(f.d, f.j)?);
    }
    out.push(abelian_group(&cert.abelian_part)?);
    Ok(out)
}

/// Rebuilds the iterated central product described by `cert`.
pub fn assemble(cert: &SnmCertificate) -> Result<Assembly> {
    let factors = factor_groups(cert)?;
    if cert.amalgamations.len() + 1 != factors.len() {
        return Err(NawError::Certificate(format!(
            "{} factors need {} amalgamations, found {}",
            factors.len(),
            factors.len() - 1,
            cert.amalgamations.len()
        )));
    }
    let mut acc = factors[0].clone();
    let mut stages = Vec::new();
    let mut maximality = Vec::new();
    let mut amalgamation_isos = Vec::new();
    for (k, am) in cert.amalgamations.iter().enumerate() {
        let next = &factors[k + 1];
        let z = acc
            .find(&am.left)
            .ok_or_else(|| NawError::Certificate(format!("amalgamation {k}: left label {:?} not found", am.left)))?;
        let w = next
            .find(&am.right)
            .ok_or_else(|| NawError::Certificate(format!("amalgamation {k}: right label {:?} not found", am.right)))?;
        let phi = cyclic_iso(&acc, next, z, w)?;
        if phi.len() as u64 != am.order {
            return Err(NawError::Certificate(format!(
                "amalgamation {k} has order {}, claimed {}",
                phi.len(),
                am.order
            )));
        }
        maximality.push(is_maximal_central_iso(&acc, next, &phi)?);
        let cp = central_product(&acc, next, &phi)?;
        acc = cp.group.clone();
        stages.push(cp);
        amalgamation_isos.push(phi);
    }
    Ok(Assembly { group: acc, factors, stages, maximality, amalgamation_isos })
}

/// Certificate for E(d,j_1) ⋏ ... ⋏ E(d,j_n) ⋏ A where consecutive E-factors
/// are glued along their full centres (γ ↦ γ^{u_i}) and A along γ ↦ z.
pub fn standard_certificate(
    d: u32,
    js: &[u32],
    units: &[u32],
    abelian_part: &[u32],
    z: &[u32],
) -> Result<(SnmCertificate, Assembly)> {
    if js.is_empty() || units.len() + 1 != js.len() {
        return Err(NawError::InvalidInput("need n ≥ 1 factors and n−1 unit choices".into()));
    }
    let gamma = |u: u32| if d == 1 { vec![0, 0, 0] } else { vec![0, 0, u % d] };
    let mut amalgamations = Vec::new();
    let mut acc = e_group(d, js[0])?;
    let mut centre_gen = acc.find(&gamma(1)).unwrap();
    for (i, &j) in js.iter().enumerate().skip(1) {
        let next = e_group(d, j)?;
        let w = next.find(&gamma(units[i - 1])).unwrap();
        amalgamations.push(Amalgamation {
            left: acc.label(centre_gen).to_vec(),
            right: gamma(units[i - 1]),
            order: d as u64,
        });
        let phi = cyclic_iso(&acc, &next, centre_gen, w)?;
        let cp = central_product(&acc, &next, &phi)?;
        centre_gen = cp.left_embed[centre_gen as usize];
        acc = cp.group;
    }
    amalgamations.push(Amalgamation { left: acc.label(centre_gen).to_vec(), right: z.to_vec(), order: d as u64 });
    let a = abelian_group(abelian_part)?;
    let mut cert = SnmCertificate {
        n: js.len(),
        m: min_generators(&a)?,
        d: d as u64,
        factors: js.iter().map(|&j| EFactor { d, j }).collect(),
        abelian_part: abelian_part.to_vec(),
        amalgamations,
        maximality_witnesses: Vec::new(),
    };
    let assembly = assemble(&cert)?;
    cert.maximality_witnesses = assembly.maximality.iter().map(|v| v.maximal).collect();
    Ok((cert, assembly))
}

#[derive(Debug, Clone, Serialize)]
pub struct SnmVerdict {
    pub pass: bool,
    pub rebuilt_order: usize,
    pub isomorphic: bool,
    pub maximality: Vec<bool>,
    pub maximality_matches_claim: bool,
    pub cyclic_of_order_d: bool,
    pub factors_in_e_d: bool,
    pub abelian_in_a_md: bool,
    pub notes: Vec<String>,
    /// Isomorphism from the checked group onto the rebuilt product.
    #[serde(skip)]
    pub iso: Option<Iso>,
}

/// Rebuilds the product from `cert` and checks it against `g`.
pub fn snm_verify(g: &FiniteGroup, cert: &SnmCertificate) -> Result<(SnmVerdict, Assembly)> {
    let assembly = assemble(cert)?;
    let mut notes = Vec::new();
    let iso = if assembly.group.order() == g.order() { iso_search(g, &assembly.group)? } else { None };
    if iso.is_none() {
        notes.push(format!("rebuilt group of order {} is not isomorphic to {}", assembly.group.order(), g.name()));
    }
    let maximality: Vec<bool> = assembly.maximality.iter().map(|v| v.maximal).collect();
    let maximality_matches_claim = cert.maximality_witnesses.is_empty() || cert.maximality_witnesses == maximality;
    for (i, m) in maximality.iter().enumerate() {
        if !m {
            notes.push(format!("amalgamation {i} is not a maximal central isomorphism"));
        }
    }
    let cyclic_of_order_d = cert.amalgamations.iter().all(|a| a.order == cert.d);
    let factors_in_e_d =
        cert.factors.len() == cert.n && cert.n >= 1 && cert.factors.iter().all(|f| f.d as u64 == cert.d && f.j < f.d);
    let a = assembly.factors.last().unwrap();
    let has_order_d = a.elements().any(|x| a.order_of(x) == cert.d);
    let abelian_in_a_md = min_generators(a)? == cert.m && has_order_d;
    if !abelian_in_a_md {
        notes.push("abelian part is not in A_{m,d}".into());
    }
    let pass = iso.is_some()
        && maximality.iter().all(|&m| m)
        && maximality_matches_claim
        && cyclic_of_order_d
        && factors_in_e_d
        && abelian_in_a_md;
    let verdict = SnmVerdict {
        pass,
        rebuilt_order: assembly.group.order(),
        isomorphic: iso.is_some(),
        maximality,
        maximality_matches_claim,
        cyclic_of_order_d,
        factors_in_e_d,
        abelian_in_a_md,
        notes,
        iso,
    };
    Ok((verdict, assembly))
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderBound {
    pub n: usize,
    pub m: usize,
    /// log_p of the lower bound (p³)^n p^m / p^n.
    pub lower_exponent: usize,
    pub r: usize,
    pub pass: bool,
}

/// |G_i| ≥ p^{2n+m} against |S| = p^r: pass iff 2n + m ≤ r.
pub fn order_bound_check(n: usize, m: usize, r: usize) -> OrderBound {
    let lower_exponent = 2 * n + m;
    OrderBound { n, m, lower_exponent, r, pass: lower_exponent <= r }
}

#[derive(Debug, Clone, Serialize)]
pub struct HeisenbergDecomposition {
    pub n: u32,
    pub d: u32,
    pub order: usize,
    pub certificate: SnmCertificate,
    pub internal: InternalVerdict,
    pub factors_isomorphic_to_e_d0: Vec<bool>,
    pub intersections_equal_a: bool,
    pub verdict: SnmVerdict,
    pub pass: bool,
    #[serde(skip)]
    pub group: FiniteGroup,
}

/// Splits H_{2n+1}(Z/d) into E_k = ⟨α_k, β_k, γ⟩ and A = ⟨γ⟩ and certifies
/// membership in S_{n,1}.
pub fn heisenberg_decomposition(n: u32, d: u32) -> Result<HeisenbergDecomposition> {
    let h = heisenberg_group(n, d)?;
    let width = 2 * n as usize + 1;
    let unit = |pos: usize| {
        let mut l = vec![0u32; width];
        if d > 1 {
            l[pos] = 1;
        }
        h.find(&l).unwrap()
    };
    let gamma = unit(2 * n as usize);
    let a_sub = h.subgroup_generated(&[gamma]);
    let mut parts = Vec::new();
    for k in 0..n as usize {
        parts.push(h.subgroup_generated(&[unit(k), unit(n as usize + k), gamma]));
    }
    let e_d0 = e_group(d, 0)?;
    let mut factors_isomorphic_to_e_d0 = Vec::new();
    for p in &parts {
        let (sub, _) = h.subgroup_as_group(p);
        factors_isomorphic_to_e_d0.push(iso_search(&sub, &e_d0)?.is_some());
    }
    let mut all_parts = parts.clone();
    all_parts.push(a_sub.clone());
    let internal = internal_central_product_check(&h, &all_parts);
    let intersections_equal_a = internal.intersections.iter().all(|s| s.members == a_sub.members());
    let js = vec![0; n as usize];
    let units = vec![1; n as usize - 1];
    let z = if d == 1 { vec![0] } else { vec![1] };
    let (certificate, _) = standard_certificate(d, &js, &units, &[d], &z)?;
    let (verdict, _) = snm_verify(&h, &certificate)?;
    let pass = internal.pass && intersections_equal_a && factors_isomorphic_to_e_d0.iter().all(|&b| b) && verdict.pass;
    debug_assert!(h.label(IDENTITY).iter().all(|&x| x == 0));
    Ok(HeisenbergDecomposition {
        n,
        d,
        order: h.order(),
        certificate,
        internal,
        factors_isomorphic_to_e_d0,
        intersections_equal_a,
        verdict,
        pass,
        group: h,
    })
}
