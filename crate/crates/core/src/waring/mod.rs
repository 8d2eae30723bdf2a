//! Modular sums of k-th powers, product multisets with prescribed power-sum
//! divisibility, and the rank bookkeeping N(n, m), R(n, m).

mod manifold;
mod search;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{NawError, Result};

pub use manifold::{manifold_report, FactorReport, HeadlineCheck, ManifoldReport, SpecialFamily};
pub use search::{hl_bound_check, min_powers_for_neg1, BoundVerdict, PowerRepresentation};

/// Uniform cap on the number of k-th powers representing −1.
pub fn power_cap(k: u32) -> usize {
    4 * k as usize
}

/// N(n, m) = (m + 1) ∏_{k=2}^n (4k + 1).
pub fn capped_n(n: usize, m: usize) -> Result<u64> {
    (2..=n as u64).try_fold(m as u64 + 1, |acc, k| acc.checked_mul(4 * k + 1)).ok_or(NawError::Overflow)
}

/// R(n, m) = N(n, m) + n.
pub fn rank_r(n: usize, m: usize) -> Result<u64> {
    capped_n(n, m)?.checked_add(n as u64).ok_or(NawError::Overflow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum DeltaMode {
    /// δ_k = d^{2k} k!.
    #[value(alias = "paper")]
    Factorial,
    /// δ_k = d^k.
    #[value(alias = "remark53")]
    Linear,
}

/// (δ_1, ..., δ_n) for the chosen mode.
pub fn delta_schedule(n: usize, d: u64, mode: DeltaMode) -> Result<Vec<u64>> {
    if d == 0 {
        return Err(NawError::InvalidInput("d must be positive".into()));
    }
    let mut out = Vec::with_capacity(n);
    let mut fact: u64 = 1;
    for k in 1..=n as u32 {
        fact = fact.checked_mul(k as u64).ok_or(NawError::Overflow)?;
        let delta = match mode {
            DeltaMode::Factorial => d.checked_pow(2 * k).and_then(|x| x.checked_mul(fact)),
            DeltaMode::Linear => d.checked_pow(k),
        };
        out.push(delta.ok_or(NawError::Overflow)?);
    }
    Ok(out)
}

/// p_k(A) = Σ_{a∈A} a^k.
pub fn power_sum(a: &[i64], k: u32) -> BigInt {
    a.iter().map(|&x| BigInt::from(x).pow(k)).sum()
}

/// {a·b : a ∈ A, b ∈ B} with multiplicities.
pub fn product_multiset(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x.checked_mul(y).ok_or(NawError::Overflow)?);
        }
    }
    Ok(out)
}

fn as_pairs<S: Serializer>(entries: &[i64], s: S) -> std::result::Result<S::Ok, S::Error> {
    counts(entries).into_iter().collect::<Vec<_>>().serialize(s)
}

fn counts(entries: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for &x in entries {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

fn as_strings<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
}

/// A = A_1 · ... · A_n with |A| = N(n, m), 1 of multiplicity ≥ m and
/// δ_k | p_k(A) for 1 ≤ k ≤ n.
#[derive(Debug, Clone, Serialize)]
pub struct WaringMultiset {
    pub n: usize,
    pub m: usize,
    pub deltas: Vec<u64>,
    /// Sorted entries, serialized as (value, multiplicity) pairs.
    #[serde(serialize_with = "as_pairs")]
    pub entries: Vec<i64>,
    /// A_1, ..., A_n.
    pub factors: Vec<FactorMultiset>,
    #[serde(serialize_with = "as_strings")]
    pub power_sums: Vec<BigInt>,
    /// p_k(A) / δ_k.
    #[serde(serialize_with = "as_strings")]
    pub quotients: Vec<BigInt>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorMultiset {
    pub k: u32,
    #[serde(serialize_with = "as_pairs")]
    pub entries: Vec<i64>,
    /// Representation of −1 mod δ_k used for k ≥ 2.
    pub witness: Option<PowerRepresentation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultisetVerdict {
    pub pass: bool,
    pub cardinality: usize,
    pub expected_cardinality: u64,
    pub multiplicity_of_one: usize,
    /// δ_k | p_k(A), by literal summation.
    pub divisible: Vec<bool>,
    pub power_sums_match_cache: bool,
}

impl WaringMultiset {
    pub fn cardinality(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, x: i64) -> usize {
        self.entries.iter().filter(|&&e| e == x).count()
    }

    pub fn pairs(&self) -> Vec<(i64, usize)> {
        counts(&self.entries).into_iter().collect()
    }

    /// Re-derives every invariant from the entries alone.
    pub fn verify(&self) -> Result<MultisetVerdict> {
        let expected_cardinality = capped_n(self.n, self.m)?;
        let sums: Vec<BigInt> = (1..=self.n as u32).map(|k| power_sum(&self.entries, k)).collect();
        let divisible: Vec<bool> =
            sums.iter().zip(&self.deltas).map(|(p, &d)| d != 0 && p.is_multiple_of(&BigInt::from(d))).collect();
        let multiplicity_of_one = self.multiplicity(1);
        let power_sums_match_cache = sums == self.power_sums;
        let pass = self.entries.len() as u64 == expected_cardinality
            && multiplicity_of_one >= self.m
            && divisible.len() == self.n
            && divisible.iter().all(|&b| b)
            && power_sums_match_cache;
        Ok(MultisetVerdict {
            pass,
            cardinality: self.entries.len(),
            expected_cardinality,
            multiplicity_of_one,
            divisible,
            power_sums_match_cache,
        })
    }
}

/// A_1 = {1^(m), −m}; for k ≥ 2, A_k = {1} + B_k with B_k a representation
/// of −1 mod δ_k by k-th powers, zero-padded to 4k entries.
pub fn build_multiset(n: usize, m: usize, deltas: &[u64]) -> Result<WaringMultiset> {
    if n == 0 || m == 0 {
        return Err(NawError::InvalidInput("n and m must be positive".into()));
    }
    if deltas.len() != n {
        return Err(NawError::InvalidInput(format!("expected {n} deltas, got {}", deltas.len())));
    }
    if let Some(k) = deltas.iter().position(|&d| d == 0) {
        return Err(NawError::InvalidInput(format!("δ_{} is zero", k + 1)));
    }
    let mut a1 = vec![1i64; m];
    a1.push(-(m as i64));
    let mut factors = vec![FactorMultiset { k: 1, entries: a1.clone(), witness: None }];
    let mut entries = a1;
    for k in 2..=n as u32 {
        let q = deltas[k as usize - 1];
        let mut ak = vec![1i64];
        let witness = if q == 1 {
            None
        } else {
            let rep = min_powers_for_neg1(k, q)?;
            if rep.m > power_cap(k) {
                return Err(NawError::Certificate(format!(
                    "−1 mod {q} needs {} {k}-th powers, more than {}",
                    rep.m,
                    power_cap(k)
                )));
            }
            ak.extend(rep.witness.iter().map(|&x| x as i64));
            Some(rep)
        };
        ak.resize(power_cap(k) + 1, 0);
        entries = product_multiset(&entries, &ak)?;
        factors.push(FactorMultiset { k, entries: ak, witness });
    }
    entries.sort_unstable();
    let power_sums: Vec<BigInt> = (1..=n as u32).map(|k| power_sum(&entries, k)).collect();
    let quotients = power_sums.iter().zip(deltas).map(|(p, &d)| p / BigInt::from(d)).collect();
    let out = WaringMultiset { n, m, deltas: deltas.to_vec(), entries, factors, power_sums, quotients };
    let v = out.verify()?;
    if !v.pass {
        return Err(NawError::Divisibility(format!("multiset fails its invariants: {v:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
