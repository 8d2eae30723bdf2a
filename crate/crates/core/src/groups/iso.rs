use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{Elem, FiniteGroup, Subgroup, IDENTITY};
use crate::caps::Caps;
use crate::error::Result;

const UNSET: Elem = Elem::MAX;

/// A bijective homomorphism between two subgroups, stored as sorted pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Iso {
    pub pairs: Vec<(Elem, Elem)>,
}

impl Iso {
    pub fn from_pairs(mut pairs: Vec<(Elem, Elem)>) -> Iso {
        pairs.sort_unstable();
        pairs.dedup();
        Iso { pairs }
    }

    /// The identity map on the trivial subgroup.
    pub fn trivial() -> Iso {
        Iso { pairs: vec![(IDENTITY, IDENTITY)] }
    }

    /// Collects the defined entries of a partial element map.
    pub fn from_partial_map(map: &[Elem]) -> Iso {
        Iso::from_pairs(map.iter().enumerate().filter(|(_, &y)| y != UNSET).map(|(x, &y)| (x as Elem, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.pairs.binary_search_by_key(&x, |p| p.0).ok().map(|i| self.pairs[i].1)
    }

    pub fn domain(&self, parent_order: usize) -> Subgroup {
        Subgroup::from_sorted(parent_order, self.pairs.iter().map(|p| p.0).collect())
    }

    pub fn image(&self, parent_order: usize) -> Subgroup {
        let mut v: Vec<Elem> = self.pairs.iter().map(|p| p.1).collect();
        v.sort_unstable();
        Subgroup::from_sorted(parent_order, v)
    }

    pub fn inverse(&self) -> Iso {
        Iso::from_pairs(self.pairs.iter().map(|&(a, b)| (b, a)).collect())
    }

    /// True if `self` agrees with `other` on the domain of `other`.
    pub fn extends(&self, other: &Iso) -> bool {
        other.pairs.iter().all(|&(x, y)| self.apply(x) == Some(y))
    }

    /// Checks the homomorphism and bijectivity properties on all pairs.
    pub fn verify(&self, g: &FiniteGroup, h: &FiniteGroup) -> bool {
        let mut seen = BTreeMap::new();
        for &(_, y) in &self.pairs {
            if seen.insert(y, ()).is_some() {
                return false;
            }
        }
        self.pairs
            .iter()
            .all(|&(a, fa)| self.pairs.iter().all(|&(b, fb)| self.apply(g.mul(a, b)) == Some(h.mul(fa, fb))))
    }
}

/// Extends `gens[i] ↦ imgs[i]` to a homomorphism on ⟨gens⟩ by walking the
/// Cayley graph; every edge is checked, so a returned map is a genuine
/// homomorphism. With `injective`, collisions in the image also fail.
/// Entries outside ⟨gens⟩ are `Elem::MAX`.
pub fn extend_hom(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    imgs: &[Elem],
    injective: bool,
) -> Option<Vec<Elem>> {
    let mut map = vec![UNSET; g.order()];
    let mut used = vec![false; if injective { h.order() } else { 0 }];
    map[0] = IDENTITY;
    if injective {
        used[0] = true;
    }
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x as usize];
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, t);
            match map[y as usize] {
                UNSET => {
                    if injective {
                        if used[fy as usize] {
                            return None;
                        }
                        used[fy as usize] = true;
                    }
                    map[y as usize] = fy;
                    queue.push_back(y);
                }
                v if v != fy => return None,
                _ => {}
            }
        }
    }
    Some(map)
}

/// Backtracking over generator images: `gens[i]` may map to any element of
/// `cands[i]`. `visit` receives every injective homomorphism on ⟨gens⟩ and
/// returns `false` to stop. Returns `false` if stopped early.
pub fn search_injective_homs(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    cands: &[Vec<Elem>],
    visit: &mut dyn FnMut(&[Elem]) -> bool,
) -> bool {
    fn rec(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[Elem],
        cands: &[Vec<Elem>],
        imgs: &mut Vec<Elem>,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        let depth = imgs.len();
        if depth == gens.len() {
            return match extend_hom(g, h, gens, imgs, true) {
                Some(map) => visit(&map),
                None => true,
            };
        }
        for &c in &cands[depth] {
            imgs.push(c);
            let ok = depth + 1 == gens.len() || extend_hom(g, h, &gens[..=depth], imgs, true).is_some();
            let keep_going = !ok || rec(g, h, gens, cands, imgs, visit);
            imgs.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    rec(g, h, gens, cands, &mut Vec::with_capacity(gens.len()), visit)
}

/// Per-element isomorphism invariants: order, centralizer size, and the
/// numbers of square and cube roots.
fn signatures(g: &FiniteGroup) -> Vec<(u64, usize, usize, usize)> {
    let n = g.order();
    let mut sq = vec![0usize; n];
    let mut cu = vec![0usize; n];
    for x in g.elements() {
        sq[g.pow(x, 2) as usize] += 1;
        cu[g.pow(x, 3) as usize] += 1;
    }
    g.elements()
        .map(|x| {
            let cent = g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
            (g.order_of(x), cent, sq[x as usize], cu[x as usize])
        })
        .collect()
}

pub fn iso_search(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Iso>> {
    iso_search_with(g, h, &[])
}

/// Isomorphism search with some images forced (`forced[i].0 ↦ forced[i].1`).
pub fn iso_search_with(g: &FiniteGroup, h: &FiniteGroup, forced: &[(Elem, Elem)]) -> Result<Option<Iso>> {
    let caps = Caps::from_env();
    caps.check("iso_search", g.order().max(h.order()), caps.iso_order)?;
    if g.order() != h.order() {
        return Ok(None);
    }
    let (sg, sh) = (signatures(g), signatures(h));
    let (mut a, mut b) = (sg.clone(), sh.clone());
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(None);
    }
    let mut gens: Vec<Elem> = Vec::new();
    let mut cands: Vec<Vec<Elem>> = Vec::new();
    for &(x, y) in forced {
        if sg[x as usize] != sh[y as usize] {
            return Ok(None);
        }
        gens.push(x);
        cands.push(vec![y]);
    }
    let mut cur = g.subgroup_generated(&gens);
    for x in g.generators() {
        if !cur.contains(x) {
            gens.push(x);
            cur = g.subgroup_generated(&gens);
        }
    }
    for &x in &gens[forced.len()..] {
        cands.push(h.elements().filter(|&y| sh[y as usize] == sg[x as usize]).collect());
    }
    let mut found = None;
    search_injective_homs(g, h, &gens, &cands, &mut |map| {
        if map.iter().all(|&y| y != UNSET) {
            found = Some(map.to_vec());
            false
        } else {
            true
        }
    });
    Ok(found.and_then(|map| {
        let iso = Iso::from_pairs(map.iter().enumerate().map(|(x, &y)| (x as Elem, y)).collect());
        g.is_hom(h, &map).then_some(iso)
    }))
}
