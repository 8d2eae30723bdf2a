//! Finite groups stored as full multiplication tables over canonical labels.
//!
//! Elements are indices `0..order`; index 0 is always the identity and the
//! labels are sorted lexicographically, so the smallest index in any set is
//! also its lexicographically smallest label.

mod abelian;
pub mod expr;
mod families;
mod iso;

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{NawError, Result};

pub use abelian::{abelian_invariants, elementary_divisors, lift_generator, min_generators, prime_factors};
pub use families::{
    abelian_group, dihedral_group, direct_product, e_group, heisenberg_group, quaternion_group, symbol_group,
};
pub use iso::{extend_hom, iso_search, iso_search_with, search_injective_homs, Iso};

pub type Elem = u32;

pub const IDENTITY: Elem = 0;

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<Vec<u32>>,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    gens: OnceLock<Vec<Elem>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

/// A subset of a group closed under multiplication and inversion.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

fn pack(radices: &[u32], label: &[u32]) -> usize {
    label.iter().zip(radices).fold(0usize, |acc, (&x, &r)| acc * r as usize + x as usize)
}

impl FiniteGroup {
    /// Tabulates a group whose elements are all tuples below `radices`
    /// (first coordinate most significant). The all-zero tuple must be the
    /// identity of `mul`.
    pub fn from_radices(
        name: impl Into<String>,
        radices: &[u32],
        mul: impl Fn(&[u32], &[u32], &mut [u32]),
    ) -> Result<FiniteGroup> {
        let name = name.into();
        let order = radices.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r as usize)).ok_or(NawError::Overflow)?;
        Caps::from_env().check_order(&name, order)?;
        let width = radices.len();
        let mut labels = Vec::with_capacity(order);
        let mut cur = vec![0u32; width];
        for _ in 0..order {
            labels.push(cur.clone());
            for i in (0..width).rev() {
                cur[i] += 1;
                if cur[i] < radices[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        let mut table = vec![0; order * order];
        let mut out = vec![0u32; width];
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                mul(a, b, &mut out);
                table[i * order + j] = pack(radices, &out) as Elem;
            }
        }
        FiniteGroup::from_table(name, labels, table)
    }

    /// Builds a group from a ready table; validates identity and inverses.
    pub fn from_table(name: impl Into<String>, labels: Vec<Vec<u32>>, table: Vec<Elem>) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 || table.len() != n * n {
            return Err(NawError::InvalidInput("table shape does not match labels".into()));
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(NawError::InvalidInput("element 0 is not an identity".into()));
            }
        }
        let mut inverses = vec![Elem::MAX; n];
        for x in 0..n {
            if let Some(y) = (0..n).find(|&y| table[x * n + y] == IDENTITY) {
                inverses[x] = y as Elem;
            } else {
                return Err(NawError::InvalidInput("element without inverse".into()));
            }
        }
        Ok(FiniteGroup { name: name.into(), labels, table, inverses, gens: OnceLock::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FiniteGroup {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order() as Elem
    }

    pub fn label(&self, x: Elem) -> &[u32] {
        &self.labels[x as usize]
    }

    pub fn find(&self, label: &[u32]) -> Option<Elem> {
        self.labels.binary_search_by(|l| l.as_slice().cmp(label)).ok().map(|i| i as Elem)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let (mut acc, mut sq) = (IDENTITY, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn conjugate(&self, x: Elem, by: Elem) -> Elem {
        self.mul(self.mul(self.inv(by), x), by)
    }

    pub fn order_of(&self, a: Elem) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<u64> {
        self.elements().map(|x| self.order_of(x)).collect()
    }

    pub fn exponent(&self) -> u64 {
        self.elements().map(|x| self.order_of(x)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Light's associativity test: (ab)c = a(bc) for all a, b and c in a
    /// generating set implies associativity. O(n²·|gens|).
    pub fn is_associative(&self) -> bool {
        let gens = self.generators();
        self.elements().all(|a| {
            self.elements().all(|b| gens.iter().all(|&c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    /// Deterministic generating set: repeatedly add an element of largest
    /// order (smallest index on ties) outside the current subgroup.
    pub fn generators(&self) -> Vec<Elem> {
        self.gens.get_or_init(|| self.generators_of(&self.whole())).clone()
    }

    /// Generating set of a subgroup, chosen as in [`FiniteGroup::generators`].
    pub fn generators_of(&self, s: &Subgroup) -> Vec<Elem> {
        let mut by_order: Vec<(u64, Elem)> = s.members.iter().map(|&x| (self.order_of(x), x)).collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for (_, x) in by_order {
            if cur.order() == s.order() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.order(), self.elements().collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(self.order(), vec![IDENTITY])
    }

    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    /// The subgroup generated by the union of two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = self.generators_of(a);
        gens.extend(self.generators_of(b));
        self.subgroup_generated(&gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(self.order(), a.members.iter().copied().filter(|&x| b.contains(x)).collect())
    }

    pub fn centralizer_of(&self, xs: &[Elem]) -> Subgroup {
        let members = self.elements().filter(|&g| xs.iter().all(|&x| self.mul(g, x) == self.mul(x, g))).collect();
        Subgroup::from_sorted(self.order(), members)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of(&self.generators())
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut mask = vec![false; self.order()];
        let gens = self.generators();
        // [G,G] is the normal closure of the commutators of a generating set.
        let mut seeds = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let c = self.commutator(a, b);
                if !mask[c as usize] {
                    mask[c as usize] = true;
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    pub fn normal_closure(&self, xs: &[Elem]) -> Subgroup {
        let gens = self.generators();
        let mut sub = self.subgroup_generated(xs);
        loop {
            let mut extra: Vec<Elem> = Vec::new();
            for &x in sub.members() {
                for &g in &gens {
                    let c = self.conjugate(x, g);
                    if !sub.contains(c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return sub;
            }
            let mut all = self.generators_of(&sub);
            all.extend(extra);
            sub = self.subgroup_generated(&all);
        }
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order() as u64;
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    /// Φ(S) = [S,S]·S^p, valid for p-groups.
    pub fn frattini_p(&self, p: u64) -> Result<Subgroup> {
        if !self.is_p_group(p) {
            return Err(NawError::NotPGroup { order: self.order(), p });
        }
        let mut gens = self.generators_of(&self.commutator_subgroup());
        let mut seen = vec![false; self.order()];
        for x in self.elements() {
            let y = self.pow(x, p as i64);
            if !seen[y as usize] {
                seen[y as usize] = true;
                gens.push(y);
            }
        }
        Ok(self.subgroup_generated(&gens))
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let gens = self.generators();
        let sgens = self.generators_of(s);
        sgens.iter().all(|&x| gens.iter().all(|&g| s.contains(self.conjugate(x, g))))
    }

    pub fn is_central(&self, s: &Subgroup) -> bool {
        let z = self.center();
        s.members.iter().all(|&x| z.contains(x))
    }

    /// All subgroups of an abelian group, sorted by (order, members).
    pub fn abelian_subgroups(&self, within: &Subgroup) -> Vec<Subgroup> {
        let mut found: Vec<Subgroup> = vec![self.trivial()];
        let mut frontier = vec![self.trivial()];
        while let Some(s) = frontier.pop() {
            for &x in within.members() {
                if s.contains(x) {
                    continue;
                }
                let mut gens = self.generators_of(&s);
                gens.push(x);
                let t = self.subgroup_generated(&gens);
                if !found.contains(&t) {
                    found.push(t.clone());
                    frontier.push(t);
                }
            }
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        found
    }

    /// Quotient by a normal subgroup; coset representatives are minimal
    /// indices. Returns the group and the projection `G → G/N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>)> {
        if !self.is_normal(n) {
            return Err(NawError::NotNormal);
        }
        let mut class = vec![Elem::MAX; self.order()];
        let mut reps = Vec::new();
        for x in self.elements() {
            if class[x as usize] != Elem::MAX {
                continue;
            }
            let id = reps.len() as Elem;
            reps.push(x);
            for &m in n.members() {
                class[self.mul(x, m) as usize] = id;
            }
        }
        let q = reps.len();
        let mut table = vec![0; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = class[self.mul(a, b) as usize];
            }
        }
        let labels = reps.iter().map(|&r| self.labels[r as usize].clone()).collect();
        let group = FiniteGroup::from_table(format!("{}/N{}", self.name, n.order()), labels, table)?;
        Ok((group, class))
    }

    /// A subgroup as a standalone group, with its embedding into `self`.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let members = s.members.clone();
        let k = members.len();
        let mut pos = vec![Elem::MAX; self.order()];
        for (i, &x) in members.iter().enumerate() {
            pos[x as usize] = i as Elem;
        }
        let mut table = vec![0; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * k + j] = pos[self.mul(a, b) as usize];
            }
        }
        let labels = members.iter().map(|&x| self.labels[x as usize].clone()).collect();
        let group = FiniteGroup::from_table(format!("sub({}, {})", self.name, k), labels, table)
            .expect("subgroup table is a group table");
        (group, members)
    }

    /// Checks that an element map given on all of `self` is a homomorphism.
    pub fn is_hom(&self, target: &FiniteGroup, map: &[Elem]) -> bool {
        map.len() == self.order()
            && self.elements().all(|a| {
                self.elements().all(|b| map[self.mul(a, b) as usize] == target.mul(map[a as usize], map[b as usize]))
            })
    }
}

impl Subgroup {
    pub fn from_mask(mask: Vec<bool>) -> Subgroup {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as Elem).collect();
        Subgroup { members, mask }
    }

    /// `members` must be sorted and closed; not re-verified here.
    pub fn from_sorted(parent_order: usize, members: Vec<Elem>) -> Subgroup {
        let mut mask = vec![false; parent_order];
        for &x in &members {
            mask[x as usize] = true;
        }
        Subgroup { members, mask }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x as usize).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Image under an element map (not re-closed).
    pub fn map(&self, f: &[Elem], target_order: usize) -> Subgroup {
        let mut members: Vec<Elem> = self.members.iter().map(|&x| f[x as usize]).collect();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_sorted(target_order, members)
    }
}

/// Verdict of [`is_special_p_group`] with the three witness subgroups.
#[derive(Debug, Clone, Serialize)]
pub struct SpecialVerdict {
    pub special: bool,
    pub elementary_abelian: bool,
    pub frattini_order: usize,
    pub center_order: usize,
    pub commutator_order: usize,
    #[serde(skip)]
    pub frattini: Subgroup,
    #[serde(skip)]
    pub center: Subgroup,
    #[serde(skip)]
    pub commutator: Subgroup,
}

pub fn is_special_p_group(s: &FiniteGroup, p: u64) -> Result<SpecialVerdict> {
    let frattini = s.frattini_p(p)?;
    let center = s.center();
    let commutator = s.commutator_subgroup();
    let elementary_abelian = s.is_abelian() && (s.exponent() == 1 || s.exponent() == p);
    let phi_elementary = frattini.members().iter().all(|&x| s.pow(x, p as i64) == IDENTITY)
        && frattini.members().iter().all(|&x| frattini.members().iter().all(|&y| s.mul(x, y) == s.mul(y, x)));
    let special = elementary_abelian || (frattini == center && center == commutator && phi_elementary);
    Ok(SpecialVerdict {
        special,
        elementary_abelian,
        frattini_order: frattini.order(),
        center_order: center.order(),
        commutator_order: commutator.order(),
        frattini,
        center,
        commutator,
    })
}
