use serde::Serialize;

use super::GhysMatrices;
use crate::error::{NawError, Result};
use crate::exact::LaurentMat2;

/// One row of the table: arg(θ) ∈ [lower·π, upper·π) with bounds given as
/// (numerator, denominator).
#[derive(Debug, Clone, Serialize)]
pub struct Region {
    pub interval: String,
    pub lower: (u64, u64),
    pub upper: (u64, u64),
    pub a_formula: String,
    pub b_formula: String,
    pub c_formula: String,
    pub a: LaurentMat2,
    pub b: LaurentMat2,
    pub c: LaurentMat2,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionTable {
    pub d: u32,
    pub j: u32,
    pub regions: Vec<Region>,
    pub partition_ok: bool,
}

impl RegionTable {
    pub fn bounds(&self) -> Vec<String> {
        self.regions.iter().map(|r| r.interval.clone()).collect()
    }

    /// Index of the region containing arg(θ) = `k`·π/d for real `k`.
    pub fn region_of(&self, k: f64) -> usize {
        if k < 1.0 {
            0
        } else if k < 2.0 {
            1
        } else if k < 3.0 {
            2
        } else {
            3
        }
    }
}

fn frac_lt(a: (u64, u64), b: (u64, u64)) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

fn frac_eq(a: (u64, u64), b: (u64, u64)) -> bool {
    (a.0 as u128) * (b.1 as u128) == (b.0 as u128) * (a.1 as u128)
}

/// The four regions [0, π/d), [π/d, 2π/d), [2π/d, 3π/d), [3π/d, 2π) and
/// the matrices A, B, C on each, as printed.
pub fn emit_region_table(g: &GhysMatrices) -> Result<RegionTable> {
    let d = g.d as i64;
    let inv = |m: &LaurentMat2| m.inverse().ok_or_else(|| NawError::InvalidInput("matrix is not invertible".into()));
    let q_inv = inv(&g.q)?;
    let t_inv = inv(&g.t)?;
    let mj = g.m.pow(g.j as i64).unwrap();
    let md = g.m.pow(d).unwrap();
    let t_dm1 = g.t.pow(d - 1).unwrap();
    let conj = |x: &LaurentMat2| g.q.mul(x).mul(&q_inv);
    let du = g.d as u64;
    let rows = [
        (
            "[0, π/d)",
            (0, 1),
            (1, du),
            ("M^j", mj.clone()),
            ("Q T^-1 M", g.q.mul(&t_inv).mul(&g.m)),
            ("M^d", md.clone()),
        ),
        ("[π/d, 2π/d)", (1, du), (2, du), ("M^j", mj.clone()), ("T^(d-1) M", t_dm1.mul(&g.m)), ("M^d", md.clone())),
        (
            "[2π/d, 3π/d)",
            (2, du),
            (3, du),
            ("Q M^j Q^-1", conj(&mj)),
            ("T^(d-1) M Q^-1", t_dm1.mul(&g.m).mul(&q_inv)),
            ("Q M^d Q^-1", conj(&md)),
        ),
        ("[3π/d, 2π)", (3, du), (2, 1), ("M^j", mj), ("T^-1 M", t_inv.mul(&g.m)), ("M^d", md)),
    ];
    let regions: Vec<Region> = rows
        .into_iter()
        .map(|(interval, lower, upper, a, b, c)| Region {
            interval: interval.to_string(),
            lower,
            upper,
            a_formula: a.0.to_string(),
            b_formula: b.0.to_string(),
            c_formula: c.0.to_string(),
            a: a.1,
            b: b.1,
            c: c.1,
        })
        .collect();
    let contiguous = regions.windows(2).all(|w| frac_eq(w[0].upper, w[1].lower));
    let nonempty = regions.iter().all(|r| frac_lt(r.lower, r.upper));
    let covers = frac_eq(regions[0].lower, (0, 1)) && frac_eq(regions[3].upper, (2, 1));
    Ok(RegionTable { d: g.d, j: g.j, regions, partition_ok: contiguous && nonempty && covers })
}
