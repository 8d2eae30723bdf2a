use serde::Serialize;

use super::rank_r;
use crate::error::{NawError, Result};

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub n: usize,
    pub m: usize,
    /// T^{2n} × U(R(n, m)).
    pub torus_dim: u128,
    pub unitary_rank: u64,
    pub dim: u128,
    /// T^{2n} × SU(R + 1), which has the same embedding property.
    pub su_alternative_dim: u128,
}

/// R(n, 1) against the closed form 5ⁿ·n!.
#[derive(Debug, Clone, Serialize)]
pub struct HeadlineCheck {
    pub n: usize,
    pub rank: u64,
    pub bound: u128,
    pub pass: bool,
}

/// T^{r²+r} × U(5^r·⌊r/2⌋!)^r, the target for special groups of rank r.
#[derive(Debug, Clone, Serialize)]
pub struct SpecialFamily {
    pub r: usize,
    pub torus_dim: u128,
    pub unitary_rank: u128,
    pub copies: usize,
    pub dim: u128,
    /// Every (n, m) with 2n + m ≤ r has R(n, m) ≤ 5^r·⌊r/2⌋!.
    pub ranks_fit: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifoldReport {
    pub pairs: Vec<(usize, usize)>,
    pub r: usize,
    pub factors: Vec<FactorReport>,
    /// dim X_I = Σ (2n + R(n, m)²).
    pub dim: u128,
    /// dim X_I^r.
    pub power_dim: u128,
    pub description: String,
    pub headline: Vec<HeadlineCheck>,
    pub special_family: SpecialFamily,
    pub pass: bool,
}

fn factorial(n: usize) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |a, k| a.checked_mul(k)).ok_or(NawError::Overflow)
}

fn pow5(n: usize) -> Result<u128> {
    5u128.checked_pow(n as u32).ok_or(NawError::Overflow)
}

fn square(x: u128) -> Result<u128> {
    x.checked_mul(x).ok_or(NawError::Overflow)
}

/// Dimensions of X_I = ∏_{(n,m)∈I} T^{2n} × U(R(n, m)) and of X_I^r, with
/// the closed-form comparisons for Heisenberg and special groups.
pub fn manifold_report(pairs: &[(usize, usize)], r: usize) -> Result<ManifoldReport> {
    if pairs.is_empty() {
        return Err(NawError::InvalidInput("I must be nonempty".into()));
    }
    if r == 0 {
        return Err(NawError::InvalidInput("r must be positive".into()));
    }
    if pairs.iter().any(|&(n, m)| n == 0 || m == 0) {
        return Err(NawError::InvalidInput("pairs (n, m) need n, m ≥ 1".into()));
    }
    let mut factors = Vec::new();
    let mut dim = 0u128;
    for &(n, m) in pairs {
        let rank = rank_r(n, m)?;
        let torus_dim = 2 * n as u128;
        let fdim = torus_dim.checked_add(square(rank as u128)?).ok_or(NawError::Overflow)?;
        let su = torus_dim.checked_add(square(rank as u128 + 1)? - 1).ok_or(NawError::Overflow)?;
        dim = dim.checked_add(fdim).ok_or(NawError::Overflow)?;
        factors.push(FactorReport { n, m, torus_dim, unitary_rank: rank, dim: fdim, su_alternative_dim: su });
    }
    let power_dim = dim.checked_mul(r as u128).ok_or(NawError::Overflow)?;
    let description =
        factors.iter().map(|f| format!("T^{}×U({})", f.torus_dim, f.unitary_rank)).collect::<Vec<_>>().join(" × ");

    let mut ns: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    ns.sort_unstable();
    ns.dedup();
    let mut headline = Vec::new();
    for n in ns {
        let rank = rank_r(n, 1)?;
        let bound = pow5(n)?.checked_mul(factorial(n)?).ok_or(NawError::Overflow)?;
        headline.push(HeadlineCheck { n, rank, bound, pass: rank as u128 <= bound });
    }

    let unitary_rank = pow5(r)?.checked_mul(factorial(r / 2)?).ok_or(NawError::Overflow)?;
    let torus_dim = (r * r + r) as u128;
    let sdim = square(unitary_rank)?
        .checked_mul(r as u128)
        .and_then(|x| x.checked_add(torus_dim))
        .ok_or(NawError::Overflow)?;
    let mut ranks_fit = true;
    for n in 1..=r / 2 {
        for m in 1..=r - 2 * n {
            ranks_fit &= rank_r(n, m)? as u128 <= unitary_rank;
        }
    }
    let special_family = SpecialFamily { r, torus_dim, unitary_rank, copies: r, dim: sdim, ranks_fit };
    let pass = headline.iter().all(|h| h.pass) && special_family.ranks_fit;
    Ok(ManifoldReport {
        pairs: pairs.to_vec(),
        r,
        factors,
        dim,
        power_dim,
        description,
        headline,
        special_family,
        pass,
    })
}
