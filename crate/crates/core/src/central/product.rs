use serde::Serialize;

use crate::caps::Caps;
use crate::error::{NawError, Result};
use crate::groups::expr::GroupExpr;
use crate::groups::{
    abelian_group, direct_product, e_group, extend_hom, heisenberg_group, search_injective_homs, Elem, FiniteGroup,
    Iso, Subgroup, IDENTITY,
};

/// G_1 ⋏_φ G_2 together with the maps out of G_1 × G_2.
#[derive(Debug, Clone)]
pub struct CentralProduct {
    pub group: FiniteGroup,
    pub phi: Iso,
    /// Members of K_φ as pair indices `g1·|G_2| + g2`.
    pub k_phi: Vec<usize>,
    /// Projection from pair index to element of the central product.
    pub pair_to_elem: Vec<Elem>,
    pub left_embed: Vec<Elem>,
    pub right_embed: Vec<Elem>,
    pub right_order: usize,
}

impl CentralProduct {
    pub fn project(&self, g1: Elem, g2: Elem) -> Elem {
        self.pair_to_elem[g1 as usize * self.right_order + g2 as usize]
    }
}

/// Checks that φ is an isomorphism between central subgroups.
pub fn check_central_iso(g1: &FiniteGroup, g2: &FiniteGroup, phi: &Iso) -> Result<()> {
    if phi.apply(IDENTITY) != Some(IDENTITY) || !phi.verify(g1, g2) {
        return Err(NawError::InvalidInput("φ is not an isomorphism".into()));
    }
    let d1 = phi.domain(g1.order());
    let d2 = phi.image(g2.order());
    if g1.subgroup_generated(d1.members()) != d1 || g2.subgroup_generated(d2.members()) != d2 {
        return Err(NawError::InvalidInput("φ is not defined on a subgroup".into()));
    }
    if !g1.is_central(&d1) {
        return Err(NawError::NotCentral(format!("domain of φ in {}", g1.name())));
    }
    if !g2.is_central(&d2) {
        return Err(NawError::NotCentral(format!("image of φ in {}", g2.name())));
    }
    Ok(())
}

/// External central product G_1 × G_2 / K_φ with K_φ = {(z, φ(z)⁻¹)}.
/// Coset representatives are minimal pair indices, which are the
/// lexicographically smallest concatenated labels.
pub fn central_product(g1: &FiniteGroup, g2: &FiniteGroup, phi: &Iso) -> Result<CentralProduct> {
    check_central_iso(g1, g2, phi)?;
    let (n1, n2) = (g1.order(), g2.order());
    let name = format!("CP({},{})", g1.name(), g2.name());
    let order = (n1 * n2) / phi.len();
    Caps::from_env().check_order(&name, order)?;
    let kernel: Vec<(Elem, Elem)> = phi.pairs.iter().map(|&(z, w)| (z, g2.inv(w))).collect();
    let k_phi = kernel.iter().map(|&(a, b)| a as usize * n2 + b as usize).collect();
    let mut class = vec![Elem::MAX; n1 * n2];
    let mut reps: Vec<(Elem, Elem)> = Vec::with_capacity(order);
    for a in 0..n1 as Elem {
        for b in 0..n2 as Elem {
            if class[a as usize * n2 + b as usize] != Elem::MAX {
                continue;
            }
            let id = reps.len() as Elem;
            reps.push((a, b));
            for &(z, w) in &kernel {
                class[g1.mul(a, z) as usize * n2 + g2.mul(b, w) as usize] = id;
            }
        }
    }
    let q = reps.len();
    let mut table = vec![0 as Elem; q * q];
    for (i, &(a1, b1)) in reps.iter().enumerate() {
        for (j, &(a2, b2)) in reps.iter().enumerate() {
            table[i * q + j] = class[g1.mul(a1, a2) as usize * n2 + g2.mul(b1, b2) as usize];
        }
    }
    let labels = reps
        .iter()
        .map(|&(a, b)| {
            let mut l = g1.label(a).to_vec();
            l.extend_from_slice(g2.label(b));
            l
        })
        .collect();
    let group = FiniteGroup::from_table(name, labels, table)?;
    let left_embed = (0..n1).map(|a| class[a * n2]).collect();
    let right_embed = (0..n2).map(|b| class[b]).collect();
    Ok(CentralProduct { group, phi: phi.clone(), k_phi, pair_to_elem: class, left_embed, right_embed, right_order: n2 })
}

/// The cyclic amalgamation z ↦ w between ⟨z⟩ ⊆ Z(G_1) and ⟨w⟩ ⊆ Z(G_2).
pub fn cyclic_iso(g1: &FiniteGroup, g2: &FiniteGroup, z: Elem, w: Elem) -> Result<Iso> {
    let map = extend_hom(g1, g2, &[z], &[w], true)
        .ok_or_else(|| NawError::InvalidInput("z ↦ w does not define an isomorphism".into()))?;
    if g1.order_of(z) != g2.order_of(w) {
        return Err(NawError::InvalidInput("amalgamated generators have different orders".into()));
    }
    Ok(Iso::from_partial_map(&map))
}

#[derive(Debug, Clone, Serialize)]
pub struct MaximalityVerdict {
    pub maximal: bool,
    /// A proper extension of φ, when one exists.
    pub witness: Option<Iso>,
}

/// φ is maximal iff no x ∈ Z(G_1) ∖ D_1 and y ∈ Z(G_2) ∖ D_2 make
/// φ ∪ {x ↦ y} extend to an injective homomorphism on ⟨D_1, x⟩. Any proper
/// extension restricts to such a one, so this search is exhaustive.
pub fn is_maximal_central_iso(g1: &FiniteGroup, g2: &FiniteGroup, phi: &Iso) -> Result<MaximalityVerdict> {
    check_central_iso(g1, g2, phi)?;
    let (z1, z2) = (g1.center(), g2.center());
    let caps = Caps::from_env();
    caps.check("maximality search |Z(G_1)|·|Z(G_2)|", z1.order() * z2.order(), caps.poset)?;
    let d1 = phi.domain(g1.order());
    let d2 = phi.image(g2.order());
    let base_gens = g1.generators_of(&d1);
    let base_imgs: Vec<Elem> = base_gens.iter().map(|&x| phi.apply(x).unwrap()).collect();
    let mut xs: Vec<(usize, Elem)> = z1
        .members()
        .iter()
        .filter(|&&x| !d1.contains(x))
        .map(|&x| {
            let mut gens = base_gens.clone();
            gens.push(x);
            (g1.subgroup_generated(&gens).order(), x)
        })
        .collect();
    xs.sort_unstable();
    for (_, x) in xs {
        for &y in z2.members() {
            if d2.contains(y) || g1.order_of(x) != g2.order_of(y) {
                continue;
            }
            let mut gens = base_gens.clone();
            gens.push(x);
            let mut imgs = base_imgs.clone();
            imgs.push(y);
            if let Some(map) = extend_hom(g1, g2, &gens, &imgs, true) {
                return Ok(MaximalityVerdict { maximal: false, witness: Some(Iso::from_partial_map(&map)) });
            }
        }
    }
    Ok(MaximalityVerdict { maximal: true, witness: None })
}

/// The largest-order isomorphism between central subgroups, first in the
/// canonical order (subgroups by decreasing order, then members). Being of
/// largest order it admits no proper extension, so it is maximal central.
pub fn auto_maximal_amalgamation(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Iso> {
    let (z1, z2) = (g1.center(), g2.center());
    let caps = Caps::from_env();
    caps.check("amalgamation search |Z(G_1)|·|Z(G_2)|", z1.order() * z2.order(), caps.poset)?;
    let mut subs1 = g1.abelian_subgroups(&z1);
    let subs2 = g2.abelian_subgroups(&z2);
    subs1.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.members().cmp(b.members())));
    for s1 in &subs1 {
        let gens = g1.generators_of(s1);
        for s2 in subs2.iter().filter(|s| s.order() == s1.order()) {
            let cands: Vec<Vec<Elem>> = gens
                .iter()
                .map(|&x| s2.members().iter().copied().filter(|&y| g2.order_of(y) == g1.order_of(x)).collect())
                .collect();
            let mut found = None;
            search_injective_homs(g1, g2, &gens, &cands, &mut |map| {
                let iso = Iso::from_partial_map(map);
                if iso.len() == s1.order() && iso.image(g2.order()) == *s2 {
                    found = Some(iso);
                    false
                } else {
                    true
                }
            });
            if let Some(iso) = found {
                return Ok(iso);
            }
        }
    }
    Ok(Iso::trivial())
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionReport {
    pub left: usize,
    pub right: usize,
    pub order: usize,
    pub members: Vec<Elem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InternalVerdict {
    pub pass: bool,
    pub commute: bool,
    /// (part i, part j, x, y) with xy ≠ yx.
    pub witness: Option<(usize, usize, Elem, Elem)>,
    pub product_is_whole: bool,
    pub product_size: usize,
    pub intersections: Vec<IntersectionReport>,
}

/// Internal central-product recognition: pairwise elementwise commutation,
/// setwise product equal to G, and the pairwise intersections.
pub fn internal_central_product_check(g: &FiniteGroup, parts: &[Subgroup]) -> InternalVerdict {
    let mut witness = None;
    'outer: for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for &x in parts[i].members() {
                for &y in parts[j].members() {
                    if g.mul(x, y) != g.mul(y, x) {
                        witness = Some((i, j, x, y));
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut set = vec![false; g.order()];
    set[0] = true;
    for p in parts {
        let mut next = vec![false; g.order()];
        for x in g.elements().filter(|&x| set[x as usize]) {
            for &y in p.members() {
                next[g.mul(x, y) as usize] = true;
            }
        }
        set = next;
    }
    let product_size = set.iter().filter(|&&b| b).count();
    let mut intersections = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let s = g.intersection(&parts[i], &parts[j]);
            intersections.push(IntersectionReport {
                left: i,
                right: j,
                order: s.order(),
                members: s.members().to_vec(),
            });
        }
    }
    let commute = witness.is_none();
    let product_is_whole = product_size == g.order();
    InternalVerdict {
        pass: commute && product_is_whole,
        commute,
        witness,
        product_is_whole,
        product_size,
        intersections,
    }
}

/// Evaluates a group expression; `CP` uses [`auto_maximal_amalgamation`].
pub fn eval_expr(e: &GroupExpr) -> Result<FiniteGroup> {
    match e {
        GroupExpr::E(d, j) => e_group(*d, *j),
        GroupExpr::H(n, d) => heisenberg_group(*n, *d),
        GroupExpr::A(ns) => abelian_group(ns),
        GroupExpr::DP(xs) => {
            let mut acc = eval_expr(&xs[0])?;
            for x in &xs[1..] {
                acc = direct_product(&acc, &eval_expr(x)?)?;
            }
            Ok(acc)
        }
        GroupExpr::CP(a, b) => {
            let (g1, g2) = (eval_expr(a)?, eval_expr(b)?);
            let phi = auto_maximal_amalgamation(&g1, &g2)?;
            Ok(central_product(&g1, &g2, &phi)?.group)
        }
    }
}
