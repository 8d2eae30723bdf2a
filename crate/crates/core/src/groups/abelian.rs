use num_integer::Integer;

use super::{FiniteGroup, IDENTITY};
use crate::error::{NawError, Result};

/// Distinct primes dividing `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Elementary divisors (prime powers, ascending) of an abelian group, read
/// off from the counts |A[p^k]|: the number of cyclic p-factors of order at
/// least p^k is log_p(|A[p^k]| / |A[p^{k-1}]|).
pub fn elementary_divisors(a: &FiniteGroup) -> Result<Vec<u64>> {
    if !a.is_abelian() {
        return Err(NawError::NotAbelian);
    }
    let mut out = Vec::new();
    for p in prime_factors(a.order() as u64) {
        let mut counts = vec![1usize];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let c = a.elements().filter(|&x| a.pow(x, pk as i64) == IDENTITY).count();
            if c == *counts.last().unwrap() {
                break;
            }
            counts.push(c);
        }
        // at_least[k-1] = number of factors of order ≥ p^k
        let at_least: Vec<u32> = counts.windows(2).map(|w| ilog(p, (w[1] / w[0]) as u64)).collect();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[k] - next) {
                out.push(p.pow(k as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn ilog(p: u64, mut v: u64) -> u32 {
    let mut k = 0;
    while v > 1 {
        v /= p;
        k += 1;
    }
    k
}

/// Invariant factors n_1 | n_2 | ... | n_m (ascending); empty for the trivial group.
pub fn abelian_invariants(a: &FiniteGroup) -> Result<Vec<u64>> {
    let ed = elementary_divisors(a)?;
    let primes = prime_factors(a.order() as u64);
    let per_prime: Vec<Vec<u64>> = primes
        .iter()
        .map(|&p| {
            let mut v: Vec<u64> = ed.iter().copied().filter(|&q| q % p == 0).collect();
            v.sort_unstable_by(|x, y| y.cmp(x));
            v
        })
        .collect();
    let m = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv: Vec<u64> =
        (0..m).map(|i| per_prime.iter().map(|v| v.get(i).copied().unwrap_or(1)).product()).collect();
    inv.reverse();
    Ok(inv)
}

/// Minimal number of generators; the trivial group counts as cyclic (1).
pub fn min_generators(a: &FiniteGroup) -> Result<usize> {
    Ok(abelian_invariants(a)?.len().max(1))
}

/// Smallest generator g of Z_m with (m/r)·g ≡ z (mod m), where r is the order of z.
pub fn lift_generator(m: u64, z: u64) -> Result<u64> {
    if m == 0 {
        return Err(NawError::InvalidInput("modulus must be positive".into()));
    }
    let z = z % m;
    if m > 1 && z == 0 {
        return Err(NawError::InvalidInput("z must be nonzero".into()));
    }
    let r = m / z.gcd(&m);
    let step = m / r;
    (0..m)
        .find(|&g| g.gcd(&m) == 1 && (step * g) % m == z)
        .ok_or_else(|| NawError::InvalidInput(format!("no generator of Z_{m} lifts {z}")))
}
