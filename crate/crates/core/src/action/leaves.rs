use std::sync::Arc;

use num_integer::Integer;

use super::datum::{ActionDatum, PointAction};
use crate::error::{NawError, Result};
use crate::exact::Torsion;
use crate::groups::{
    abelian_group, e_group, extend_hom, lift_generator, prime_factors, symbol_group, Elem, FiniteGroup, IDENTITY,
};

fn inverse_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    (1..m).find(|&x| (a * x) % m == 1).expect("unit modulo m")
}

/// Faithful action of E(d,j) on ξ_d with z ∈ D(ϱ) and λ(z) = 1/r, where r
/// is the order of the central element z.
///
/// The action is realized in the symbol group of level d: with γ̄ the
/// generator of Z(E) satisfying γ̄^{d/r} = z and γ̄^k = γ,
/// α ↦ (k/d, 0; jk/d²), β ↦ (0, 1/d; jk/d²), γ ↦ (0, 0; k/d).
pub fn leaf_e_action(d: u32, j: u32, z: Elem) -> Result<ActionDatum> {
    let e = e_group(d, j)?;
    let sym = symbol_group(d, 1)?;
    let gamma = e.find(&[0, 0, 1 % d]).expect("γ");
    let alpha = e.find(&[1 % d, 0, 0]).expect("α");
    let beta = e.find(&[0, 1 % d, 0]).expect("β");
    if (z as usize) >= e.order() || !e.is_central(&e.subgroup_generated(&[z])) {
        return Err(NawError::NotCentral(format!("z is not central in {}", e.name())));
    }
    let c = e.label(z)[2] as u64;
    if e.label(z)[..2] != [0, 0] {
        return Err(NawError::NotCentral("z is not in ⟨γ⟩".into()));
    }
    let (d64, j64) = (d as u64, j as u64);
    let g = if c == 0 { 1 % d64 } else { lift_generator(d64, c)? };
    let k = if d == 1 { 1 } else { inverse_mod(g, d64) };
    let dd = d64 * d64;
    let img = |lab: [u64; 3]| sym.find(&lab.map(|x| x as u32)).expect("symbol label");
    let a_img = img([k % d64, 0, (j64 * k) % dd]);
    let b_img = img([0, 1 % d64, (j64 * k) % dd]);
    let c_img = img([0, 0, (d64 * k) % dd]);
    let relations = sym.pow(a_img, d as i64) == sym.pow(c_img, j as i64)
        && sym.pow(b_img, d as i64) == sym.pow(c_img, j as i64)
        && sym.commutator(a_img, b_img) == c_img
        && sym.pow(c_img, d as i64) == IDENTITY;
    let map = extend_hom(&e, &sym, &[alpha, beta, gamma], &[a_img, b_img, c_img], false)
        .filter(|_| relations)
        .ok_or_else(|| NawError::Mismatch(format!("leaf images violate the relations of {}", e.name())))?;
    let points = map
        .iter()
        .map(|&s| {
            let lab = sym.label(s);
            PointAction {
                base: vec![Torsion::new(lab[0] as i64, d64), Torsion::new(lab[1] as i64, d64)],
                fibre: vec![Torsion::new(lab[2] as i64, dd)],
            }
        })
        .collect();
    Ok(ActionDatum::from_realization(Arc::new(e), vec![d64], points))
}

/// Coordinates of every element in the basis `gens` of orders `orders`;
/// fails if the basis does not give a direct decomposition.
fn coordinates(a: &FiniteGroup, gens: &[Elem], orders: &[u64]) -> Result<Vec<Vec<u64>>> {
    let total: u64 = orders.iter().product();
    if total as usize != a.order() {
        return Err(NawError::Mismatch("basis orders do not multiply to |A|".into()));
    }
    let mut coords: Vec<Option<Vec<u64>>> = vec![None; a.order()];
    for idx in 0..total {
        let mut rest = idx;
        let mut tuple = Vec::with_capacity(orders.len());
        let mut x = IDENTITY;
        for (&g, &q) in gens.iter().zip(orders) {
            let c = rest % q;
            rest /= q;
            tuple.push(c);
            x = a.mul(x, a.pow(g, c as i64));
        }
        if coords[x as usize].replace(tuple).is_some() {
            return Err(NawError::Mismatch("basis is not independent".into()));
        }
    }
    Ok(coords.into_iter().map(Option::unwrap).collect())
}

/// The decomposition A = ⊕ ⟨e_i⟩ used by the diagonal leaf actions.
#[derive(Debug, Clone)]
pub struct AbelianBasis {
    pub basis: Vec<Elem>,
    /// n_i = order of e_i.
    pub orders: Vec<u64>,
    /// d_i = order of the i-th component of z; d_i | d_j for i ≤ j.
    pub z_orders: Vec<u64>,
}

/// Rearranges the primary decomposition of A (via CRT) into cyclic factors
/// along which the component orders of z form a divisibility chain, then
/// replaces each generator by the lift g_i with (n_i/d_i)·g_i = z_i.
pub fn abelian_basis(a: &FiniteGroup, ns: &[u32], z: Elem) -> Result<AbelianBasis> {
    let mut primary: Vec<(u64, u64, Elem)> = Vec::new();
    for (pos, &nk) in ns.iter().enumerate() {
        let nk = nk as u64;
        for p in prime_factors(nk) {
            let mut q = 1;
            while nk.is_multiple_of(q * p) {
                q *= p;
            }
            let mut lab = vec![0u32; ns.len()];
            lab[pos] = (nk / q) as u32;
            primary.push((p, q, a.find(&lab).expect("primary generator")));
        }
    }
    let orders: Vec<u64> = primary.iter().map(|f| f.1).collect();
    let gens: Vec<Elem> = primary.iter().map(|f| f.2).collect();
    let zc = &coordinates(a, &gens, &orders)?[z as usize];
    let mut by_prime: std::collections::BTreeMap<u64, Vec<(u64, u64, Elem)>> = Default::default();
    for (f, &c) in primary.iter().zip(zc) {
        by_prime.entry(f.0).or_default().push((f.1 / c.gcd(&f.1), f.1, f.2));
    }
    let m = by_prime.values().map(Vec::len).max().unwrap_or(0).max(1);
    let mut cyc_gens = vec![IDENTITY; m];
    let mut cyc_orders = vec![1u64; m];
    for fs in by_prime.values_mut() {
        fs.sort_unstable();
        let offset = m - fs.len();
        for (i, &(_, q, g)) in fs.iter().enumerate() {
            cyc_gens[offset + i] = a.mul(cyc_gens[offset + i], g);
            cyc_orders[offset + i] *= q;
        }
    }
    let zc = coordinates(a, &cyc_gens, &cyc_orders)?[z as usize].clone();
    let mut basis = Vec::with_capacity(m);
    let mut z_orders = Vec::with_capacity(m);
    for i in 0..m {
        let (n, c) = (cyc_orders[i], zc[i]);
        let u = if c == 0 { 1 } else { lift_generator(n, c)? };
        basis.push(a.pow(cyc_gens[i], u as i64));
        z_orders.push(n / c.gcd(&n));
    }
    debug_assert!(z_orders.windows(2).all(|w| w[1] % w[0] == 0));
    Ok(AbelianBasis { basis, orders: cyc_orders, z_orders })
}

/// The diagonal actions of A: a faithful one on θ^{⊕m} and one on θ that
/// keeps only the last coordinate. Both act trivially on the (one point)
/// base and send z to the scalar 1/r, r the order of z.
///
/// With n_i, d_i from [`abelian_basis`], e_i acts on coordinate i by μ_{n_i},
/// and e_m additionally on every coordinate j < m by μ_{n_m}^{1 − d_m/d_j}.
pub fn leaf_abelian_actions(ns: &[u32], z: &[u32]) -> Result<(ActionDatum, ActionDatum)> {
    let a = abelian_group(ns)?;
    let zel = a.find(z).ok_or_else(|| NawError::InvalidInput(format!("{z:?} is not an element of A")))?;
    if zel == IDENTITY && a.order() > 1 {
        return Err(NawError::InvalidInput("z must be nonzero".into()));
    }
    let basis = abelian_basis(&a, ns, zel)?;
    let coords = coordinates(&a, &basis.basis, &basis.orders)?;
    let m = basis.basis.len();
    let (nm, dm) = (basis.orders[m - 1], basis.z_orders[m - 1]);
    let mut faithful = Vec::with_capacity(a.order());
    let mut line = Vec::with_capacity(a.order());
    for c in &coords {
        let am = c[m - 1] as i64;
        let fibre = (0..m)
            .map(|j| {
                let own = Torsion::new(c[j] as i64, basis.orders[j]);
                if j + 1 == m {
                    own
                } else {
                    own + Torsion::new(am * (1 - (dm / basis.z_orders[j]) as i64), nm)
                }
            })
            .collect();
        faithful.push(PointAction { base: vec![], fibre });
        line.push(PointAction { base: vec![], fibre: vec![Torsion::new(am, nm)] });
    }
    let a = Arc::new(a);
    Ok((ActionDatum::from_realization(a.clone(), vec![], faithful), ActionDatum::from_realization(a, vec![], line)))
}
