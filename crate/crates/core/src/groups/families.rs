use super::{Elem, FiniteGroup};
use crate::caps::Caps;
use crate::error::{NawError, Result};

/// E(d,j) on normal forms α^a β^b γ^c with
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c' − a'b + j(⌊(a+a')/d⌋ + ⌊(b+b')/d⌋)).
pub fn e_group(d: u32, j: u32) -> Result<FiniteGroup> {
    if d == 0 || j >= d {
        return Err(NawError::InvalidInput(format!("E(d,j) needs d ≥ 1 and 0 ≤ j < d, got d={d}, j={j}")));
    }
    let dd = d as i64;
    FiniteGroup::from_radices(format!("E({d},{j})"), &[d, d, d], move |x, y, out| {
        let (a, b, c) = (x[0] as i64, x[1] as i64, x[2] as i64);
        let (a2, b2, c2) = (y[0] as i64, y[1] as i64, y[2] as i64);
        let carry = (a + a2) / dd + (b + b2) / dd;
        out[0] = ((a + a2) % dd) as u32;
        out[1] = ((b + b2) % dd) as u32;
        out[2] = (c + c2 - a2 * b + j as i64 * carry).rem_euclid(dd) as u32;
    })
}

/// Upper unitriangular matrices over Z/d, labelled (a_1..a_n, b_1..b_n, c)
/// with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a·b').
pub fn heisenberg_group(n: u32, d: u32) -> Result<FiniteGroup> {
    if n == 0 || d == 0 {
        return Err(NawError::InvalidInput("H(n,d) needs n, d ≥ 1".into()));
    }
    let n = n as usize;
    let radices = vec![d; 2 * n + 1];
    let dd = d as u64;
    FiniteGroup::from_radices(format!("H({n},{d})"), &radices, move |x, y, out| {
        let mut dot = 0u64;
        for k in 0..n {
            out[k] = ((x[k] as u64 + y[k] as u64) % dd) as u32;
            out[n + k] = ((x[n + k] as u64 + y[n + k] as u64) % dd) as u32;
            dot += x[k] as u64 * y[n + k] as u64;
        }
        out[2 * n] = ((x[2 * n] as u64 + y[2 * n] as u64 + dot) % dd) as u32;
    })
}

pub fn abelian_group(ns: &[u32]) -> Result<FiniteGroup> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(NawError::InvalidInput("A(n_1,...,n_m) needs m ≥ 1 and every n_i ≥ 1".into()));
    }
    let list: Vec<String> = ns.iter().map(u32::to_string).collect();
    let ns_owned = ns.to_vec();
    FiniteGroup::from_radices(format!("A({})", list.join(",")), ns, move |x, y, out| {
        for i in 0..ns_owned.len() {
            out[i] = ((x[i] as u64 + y[i] as u64) % ns_owned[i] as u64) as u32;
        }
    })
}

/// Exact model of the line-bundle automorphisms [φ(l)]·[r_2(t)] with
/// l ∈ ((1/d)Λ/Λ)^n and t ∈ (1/d²)Z/Z.
///
/// Labels are (re_1, im_1, ..., re_n, im_n, t) with re, im in units of 1/d
/// and t in units of 1/d². The product adds l and t and subtracts
/// d·Σ im_k·re'_k from t. The lattice wraparound term d·Im(l'')·Re(λ) is an
/// integer, so it vanishes in (1/d²)Z/Z and does not appear.
pub fn symbol_group(d: u32, n: u32) -> Result<FiniteGroup> {
    if n == 0 || d == 0 {
        return Err(NawError::InvalidInput("symbol group needs d, n ≥ 1".into()));
    }
    let n = n as usize;
    let mut radices = vec![d; 2 * n];
    radices.push(d * d);
    let (dd, q) = (d as i64, (d * d) as i64);
    FiniteGroup::from_radices(format!("Sym({d},{n})"), &radices, move |x, y, out| {
        let mut t = x[2 * n] as i64 + y[2 * n] as i64;
        for k in 0..n {
            let (re, im) = (x[2 * k] as i64, x[2 * k + 1] as i64);
            let (re2, im2) = (y[2 * k] as i64, y[2 * k + 1] as i64);
            out[2 * k] = ((re + re2) % dd) as u32;
            out[2 * k + 1] = ((im + im2) % dd) as u32;
            t -= dd * im * re2;
        }
        out[2 * n] = t.rem_euclid(q) as u32;
    })
}

/// Dihedral group of order 2n, labels (rotation, flip).
pub fn dihedral_group(n: u32) -> Result<FiniteGroup> {
    let nn = n as i64;
    FiniteGroup::from_radices(format!("D{}", 2 * n), &[n, 2], move |x, y, out| {
        let r2 = if x[1] == 1 { -(y[0] as i64) } else { y[0] as i64 };
        out[0] = (x[0] as i64 + r2).rem_euclid(nn) as u32;
        out[1] = (x[1] + y[1]) % 2;
    })
}

/// Quaternion group Q_8 as i^k j^s with j i = i⁻¹ j and j² = i².
pub fn quaternion_group() -> Result<FiniteGroup> {
    FiniteGroup::from_radices("Q8", &[4, 2], |x, y, out| {
        let k2 = if x[1] == 1 { -(y[0] as i64) } else { y[0] as i64 };
        let extra = if x[1] == 1 && y[1] == 1 { 2 } else { 0 };
        out[0] = (x[0] as i64 + k2 + extra).rem_euclid(4) as u32;
        out[1] = (x[1] + y[1]) % 2;
    })
}

/// G × H with element index g·|H| + h and concatenated labels.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (m, n) = (g.order(), h.order());
    let order = m.checked_mul(n).ok_or(NawError::Overflow)?;
    let name = format!("DP({},{})", g.name(), h.name());
    Caps::from_env().check_order(&name, order)?;
    let mut labels = Vec::with_capacity(order);
    for a in g.elements() {
        for b in h.elements() {
            let mut l = g.label(a).to_vec();
            l.extend_from_slice(h.label(b));
            labels.push(l);
        }
    }
    let mut table = vec![0 as Elem; order * order];
    for a1 in 0..m {
        for b1 in 0..n {
            let row = (a1 * n + b1) * order;
            for a2 in 0..m {
                let ga = g.mul(a1 as Elem, a2 as Elem) as usize * n;
                for b2 in 0..n {
                    table[row + a2 * n + b2] = (ga + h.mul(b1 as Elem, b2 as Elem) as usize) as Elem;
                }
            }
        }
    }
    FiniteGroup::from_table(name, labels, table)
}
