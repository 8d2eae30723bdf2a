use std::sync::Arc;

use serde::Serialize;

use super::datum::{ActionDatum, BaseMap, PointAction};
use super::leaves::{leaf_abelian_actions, leaf_e_action};
use crate::caps::Caps;
use crate::central::{assemble, central_product, Assembly, CentralProduct, SnmCertificate};
use crate::error::{NawError, Result};
use crate::exact::Torsion;
use crate::groups::{search_injective_homs, Elem, Iso, Subgroup, IDENTITY};

/// ker(ϱ_1 ⊠ ϱ_2) = {(g_1, g_2) ∈ D_1 × D_2 : λ_1(g_1) + λ_2(g_2) = 0}.
pub fn boxtimes_kernel(r1: &ActionDatum, r2: &ActionDatum) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for &g1 in r1.scalar_subgroup.members() {
        let l1 = r1.lambda(g1).expect("λ on D");
        for &g2 in r2.scalar_subgroup.members() {
            if (l1 + r2.lambda(g2).expect("λ on D")).is_zero() {
                out.push((g1, g2));
            }
        }
    }
    out
}

/// The external tensor product ϱ_1 ⊠ ϱ_2 of G_1 × G_2, with its kernel.
pub fn boxtimes(r1: &ActionDatum, r2: &ActionDatum) -> Result<(Vec<(Elem, Elem)>, ActionDatum)> {
    let mut cp = central_product_action(r1, r2, &Iso::trivial())?;
    let name = format!("DP({},{})", r1.group.name(), r2.group.name());
    cp.datum.group = Arc::new((*cp.datum.group).clone().with_name(name));
    Ok((cp.boxtimes_kernel, cp.datum))
}

/// Checks that φ lies in the amalgamable poset A(ϱ_1, ϱ_2).
pub fn check_amalgamable(r1: &ActionDatum, r2: &ActionDatum, phi: &Iso) -> Result<()> {
    let (z1, z2) = (r1.group.center(), r2.group.center());
    for &(x, y) in &phi.pairs {
        if !z1.contains(x) || !r1.scalar_subgroup.contains(x) {
            return Err(NawError::NotAmalgamable(format!("{:?} is not in Z(G_1) ∩ D(ϱ_1)", r1.group.label(x))));
        }
        if !z2.contains(y) || !r2.scalar_subgroup.contains(y) {
            return Err(NawError::NotAmalgamable(format!("{:?} is not in Z(G_2) ∩ D(ϱ_2)", r2.group.label(y))));
        }
        if r1.lambda(x) != r2.lambda(y) {
            return Err(NawError::NotAmalgamable(format!(
                "λ_1({:?}) ≠ λ_2({:?})",
                r1.group.label(x),
                r2.group.label(y)
            )));
        }
    }
    Ok(())
}

/// The amalgamable isomorphisms, ordered by restriction.
#[derive(Debug, Clone)]
pub struct AmalgamablePoset {
    /// Sorted by size, then by pairs.
    pub elements: Vec<Iso>,
}

impl AmalgamablePoset {
    /// `elements[i] ≤ elements[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[j].extends(&self.elements[i])
    }

    pub fn greatest(&self) -> Option<&Iso> {
        let top = self.elements.last()?;
        self.elements.iter().all(|e| top.extends(e)).then_some(top)
    }

    /// Antisymmetry of the restriction order.
    pub fn is_antisymmetric(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq(i, j) && self.leq(j, i))))
    }

    pub fn is_chain(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| (0..n).all(|j| self.leq(i, j) || self.leq(j, i)))
    }
}

/// Enumerates A(ϱ_1, ϱ_2): every isomorphism φ: D_1 → D_2 between subgroups
/// of Z(G_i) ∩ D(ϱ_i) with λ_1 = λ_2∘φ.
pub fn amalgamable_poset(r1: &ActionDatum, r2: &ActionDatum) -> Result<AmalgamablePoset> {
    let (g1, g2) = (&*r1.group, &*r2.group);
    let (z1, z2) = (g1.center(), g2.center());
    let caps = Caps::from_env();
    caps.check("amalgamable poset |Z(G_1)|·|Z(G_2)|", z1.order() * z2.order(), caps.poset)?;
    let c1 = g1.intersection(&z1, &r1.scalar_subgroup);
    let c2 = g2.intersection(&z2, &r2.scalar_subgroup);
    let mut elements = Vec::new();
    for s1 in g1.abelian_subgroups(&c1) {
        let gens = g1.generators_of(&s1);
        let cands: Vec<Vec<Elem>> = gens
            .iter()
            .map(|&x| {
                c2.members()
                    .iter()
                    .copied()
                    .filter(|&y| g2.order_of(y) == g1.order_of(x) && r2.lambda(y) == r1.lambda(x))
                    .collect()
            })
            .collect();
        search_injective_homs(g1, g2, &gens, &cands, &mut |map| {
            elements.push(Iso::from_partial_map(map));
            true
        });
    }
    elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.pairs.cmp(&b.pairs)));
    elements.dedup();
    Ok(AmalgamablePoset { elements })
}

/// φ̄ with K_φ̄ = ker(ϱ_1 ⊠ ϱ_2): φ̄(g_1) = g_2⁻¹ for (g_1, g_2) in the kernel.
pub fn max_amalgamable(r1: &ActionDatum, r2: &ActionDatum) -> Result<Iso> {
    if !r1.faithful || !r2.faithful {
        return Err(NawError::InvalidInput("the greatest amalgamable map needs faithful actions".into()));
    }
    let phi = Iso::from_pairs(boxtimes_kernel(r1, r2).into_iter().map(|(a, b)| (a, r2.group.inv(b))).collect());
    check_amalgamable(r1, r2, &phi)?;
    Ok(phi)
}

/// Partner scalar for gluing along φ: z = φ(z_1) where z_1 generates D_1
/// with λ_1(z_1) = 1/r, r = |D_1|. Any ϱ_2 with λ_2(z) = 1/r makes φ
/// amalgamable.
pub fn select_partner_scalar(r1: &ActionDatum, phi: &Iso) -> Result<(Elem, u64)> {
    if !r1.faithful {
        return Err(NawError::InvalidInput("partner selection needs a faithful action".into()));
    }
    let r = phi.len() as u64;
    let target = Torsion::new(1, r);
    for &(x, y) in &phi.pairs {
        if !r1.scalar_subgroup.contains(x) {
            return Err(NawError::NotAmalgamable(format!("{:?} is not in D(ϱ_1)", r1.group.label(x))));
        }
        if r1.lambda(x) == Some(target) {
            return Ok((y, r));
        }
    }
    Err(NawError::NotAmalgamable("domain of φ is not cyclic".into()))
}

/// The action ϱ_1 ⋏_φ ϱ_2 with the data of its construction.
#[derive(Debug, Clone)]
pub struct CentralAction {
    pub datum: ActionDatum,
    pub boxtimes_kernel: Vec<(Elem, Elem)>,
    /// ker(ϱ_1 ⊠ ϱ_2)/K_φ as elements of the central product.
    pub kernel: Vec<Elem>,
    /// |B| = |B_1|·|B_2|.
    pub b_multiplicative: bool,
    /// |Z̄| = |Z̄_1|·|Z̄_2| when all three are faithful.
    pub zbar_multiplicative: Option<bool>,
}

pub fn central_product_action(r1: &ActionDatum, r2: &ActionDatum, phi: &Iso) -> Result<CentralAction> {
    check_amalgamable(r1, r2, phi)?;
    let cp = central_product(&r1.group, &r2.group, phi)?;
    central_product_action_on(r1, r2, &cp)
}

/// As [`central_product_action`] on an already built central product whose
/// factors are the groups of `r1` and `r2`.
pub fn central_product_action_on(r1: &ActionDatum, r2: &ActionDatum, cp: &CentralProduct) -> Result<CentralAction> {
    check_amalgamable(r1, r2, &cp.phi)?;
    let (g1, g2) = (&*r1.group, &*r2.group);
    let g = Arc::new(cp.group.clone());
    let n = g.order();
    let mut lambda: Vec<Option<Torsion>> = vec![None; n];
    for &x in r1.scalar_subgroup.members() {
        for &y in r2.scalar_subgroup.members() {
            let l = r1.lambda(x).unwrap() + r2.lambda(y).unwrap();
            let slot = &mut lambda[cp.project(x, y) as usize];
            if slot.is_some_and(|old| old != l) {
                return Err(NawError::NotAmalgamable("λ is not constant on K_φ-cosets".into()));
            }
            *slot = Some(l);
        }
    }
    let mut kernel_mask = vec![false; n];
    for &x in r1.base_kernel.members() {
        for &y in r2.base_kernel.members() {
            kernel_mask[cp.project(x, y) as usize] = true;
        }
    }
    let mut eta: Vec<Option<Vec<Torsion>>> = vec![None; n];
    let mut points: Option<Vec<Option<PointAction>>> =
        (r1.realization.is_some() && r2.realization.is_some()).then(|| vec![None; n]);
    for x in g1.elements() {
        for y in g2.elements() {
            let e = cp.project(x, y) as usize;
            if eta[e].is_none() {
                let mut v = r1.base.eta[x as usize].clone();
                v.extend_from_slice(&r2.base.eta[y as usize]);
                eta[e] = Some(v);
                if let (Some(pts), Some(p1), Some(p2)) = (points.as_mut(), &r1.realization, &r2.realization) {
                    pts[e] = Some(p1[x as usize].tensor(&p2[y as usize]));
                }
            }
        }
    }
    let mut moduli = r1.base.moduli.clone();
    moduli.extend_from_slice(&r2.base.moduli);
    let scalar_subgroup = Subgroup::from_mask(lambda.iter().map(Option::is_some).collect());
    let mut datum = ActionDatum {
        group: g,
        base_kernel: Subgroup::from_mask(kernel_mask),
        scalar_subgroup,
        lambda,
        faithful: false,
        base: BaseMap { moduli, eta: eta.into_iter().map(Option::unwrap).collect() },
        rank: r1.rank * r2.rank,
        realization: points.map(|v| v.into_iter().map(Option::unwrap).collect()),
    };
    let bk = boxtimes_kernel(r1, r2);
    let mut kernel: Vec<Elem> = bk.iter().map(|&(x, y)| cp.project(x, y)).collect();
    kernel.sort_unstable();
    kernel.dedup();
    if kernel != datum.action_kernel() {
        return Err(NawError::Mismatch("action kernel differs from ker(ϱ_1 ⊠ ϱ_2)/K_φ".into()));
    }
    datum.faithful = kernel == [IDENTITY];
    let b_multiplicative = datum.b_order() == r1.b_order() * r2.b_order();
    let zbar_multiplicative = match (datum.zbar_order(), r1.zbar_order(), r2.zbar_order()) {
        (Some(z), Some(a), Some(b)) => Some(z == a * b),
        _ => None,
    };
    Ok(CentralAction { datum, boxtimes_kernel: bk, kernel, b_multiplicative, zbar_multiplicative })
}

/// The faithful action ϱ_f and the line action ϱ_1 of a member of S_{n,m}.
#[derive(Debug, Clone)]
pub struct SnmAction {
    pub rho_f: ActionDatum,
    pub rho_1: ActionDatum,
    pub assembly: Assembly,
    /// |Z̄| of the faithful actions on H_1, ..., H_n.
    pub zbar_chain: Vec<Option<usize>>,
    /// (label, r) of each partner scalar, in the factor it was chosen in.
    pub partners: Vec<(Vec<u32>, u64)>,
    pub shared_base: bool,
    pub eta_surjective: bool,
}

/// Folds the leaf actions along the amalgamations of `cert`, then attaches
/// the faithful and the line diagonal actions of the abelian factor.
pub fn build_snm_action(cert: &SnmCertificate) -> Result<SnmAction> {
    let asm = assemble(cert)?;
    if let Some(k) = asm.maximality.iter().position(|v| !v.maximal) {
        return Err(NawError::Certificate(format!("amalgamation {k} is not maximal central")));
    }
    let n = cert.factors.len();
    if n == 0 {
        return Err(NawError::Certificate("no E-factors".into()));
    }
    let f0 = &cert.factors[0];
    let gamma = asm.factors[0].find(&[0, 0, 1 % f0.d]).expect("γ");
    let mut rho = leaf_e_action(f0.d, f0.j, gamma)?;
    let mut zbar_chain = vec![rho.zbar_order()];
    let mut partners = Vec::new();
    for k in 0..n - 1 {
        let phi = &asm.amalgamation_isos[k];
        let (z, r) = select_partner_scalar(&rho, phi)?;
        let f = &cert.factors[k + 1];
        partners.push((asm.factors[k + 1].label(z).to_vec(), r));
        let leaf = leaf_e_action(f.d, f.j, z)?;
        rho = central_product_action_on(&rho, &leaf, &asm.stages[k])?.datum;
        zbar_chain.push(rho.zbar_order());
    }
    let phi = &asm.amalgamation_isos[n - 1];
    let (z, r) = select_partner_scalar(&rho, phi)?;
    let zlabel = asm.factors[n].label(z).to_vec();
    partners.push((zlabel.clone(), r));
    let (faithful, line) = leaf_abelian_actions(&cert.abelian_part, &zlabel)?;
    let rho_f = central_product_action_on(&rho, &faithful, &asm.stages[n - 1])?.datum;
    let rho_1 = central_product_action_on(&rho, &line, &asm.stages[n - 1])?.datum;
    let shared_base = rho_f.same_base(&rho_1);
    let eta_surjective = rho_f.base.is_surjective();
    Ok(SnmAction { rho_f, rho_1, assembly: asm, zbar_chain, partners, shared_base, eta_surjective })
}

#[derive(Debug, Clone, Serialize)]
pub struct SnmActionSummary {
    pub faithful: bool,
    pub zbar_chain: Vec<Option<usize>>,
    pub partners: Vec<(Vec<u32>, u64)>,
    pub shared_base: bool,
    pub eta_surjective: bool,
}

impl SnmAction {
    pub fn summary(&self) -> SnmActionSummary {
        SnmActionSummary {
            faithful: self.rho_f.faithful,
            zbar_chain: self.zbar_chain.clone(),
            partners: self.partners.clone(),
            shared_base: self.shared_base,
            eta_surjective: self.eta_surjective,
        }
    }
}
