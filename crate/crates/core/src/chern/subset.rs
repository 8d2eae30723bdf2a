use std::fmt::Debug;

use num_bigint::BigInt;
use serde::Serialize;

use super::graded::{subset_indices, Subset};
use crate::error::{NawError, Result};

/// A commutative ring with unit, given as a context object.
#[allow(clippy::wrong_self_convention)]
pub trait CommRing {
    type Elem: Clone + PartialEq + Debug;
    fn from_int(&self, k: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn zero(&self) -> Self::Elem {
        self.from_int(0)
    }

    fn one(&self) -> Self::Elem {
        self.from_int(1)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Integers;

impl CommRing for Integers {
    type Elem = BigInt;
    fn from_int(&self, k: i64) -> BigInt {
        BigInt::from(k)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
}

/// Z/q for q ≥ 1, elements stored in [0, q).
#[derive(Debug, Clone, Copy)]
pub struct IntegersMod(pub u64);

impl CommRing for IntegersMod {
    type Elem = u64;
    fn from_int(&self, k: i64) -> u64 {
        k.rem_euclid(self.0 as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
}

/// A family g_J : J → R for every nonempty J ⊆ {1..n}; `g[J]` lists the
/// values on the elements of J in increasing order (`g[0]` is empty).
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetFamily<T> {
    pub n: usize,
    pub g: Vec<Vec<T>>,
}

fn top(s: Subset) -> u32 {
    31 - s.leading_zeros()
}

/// Solves ∑_J ∏_{j∈J} (1 + g_J(j) x_j) = 2ⁿ − 1 + ∑_I f(I) ∏_{i∈I} x_i.
///
/// `f` is indexed by subset mask and has length 2ⁿ (`f[0]` is ignored).
/// g_J(j) = 1 below max J, and g_J(max J) = 1 − 2^{n−max J} + ∑ (−1)^{|K∖J|} f(K)
/// over K ⊇ J with max K = max J.
pub fn solve_subset_coefficients<R: CommRing>(ring: &R, n: usize, f: &[R::Elem]) -> Result<SubsetFamily<R::Elem>> {
    if n == 0 || n > 30 || f.len() != 1 << n {
        return Err(NawError::InvalidInput(format!("expected 2^n coefficients for 1 ≤ n ≤ 30, got {}", f.len())));
    }
    let full: Subset = (1 << n) - 1;
    let mut g = vec![Vec::new(); 1 << n];
    for j in 1..=full {
        let t = top(j);
        let mut h = ring.add(&ring.one(), &ring.from_int(-(1i64 << (n as u32 - 1 - t))));
        // K ranges over J ∪ S with S ⊆ {1..max J} ∖ J.
        let free = ((1u32 << t) - 1) & !j;
        let mut s = free;
        loop {
            let term = &f[(j | s) as usize];
            h = ring.add(&h, &if s.count_ones().is_multiple_of(2) { term.clone() } else { ring.neg(term) });
            if s == 0 {
                break;
            }
            s = (s - 1) & free;
        }
        let mut vals = vec![ring.one(); j.count_ones() as usize];
        *vals.last_mut().unwrap() = h;
        g[j as usize] = vals;
    }
    Ok(SubsetFamily { n, g })
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsetVerdict {
    pub pass: bool,
    /// Offending subset with left and right coefficients.
    pub mismatch: Option<(Vec<usize>, String, String)>,
}

/// Expands the left side of the identity in the square-free polynomial ring
/// and compares every coefficient with the right side.
pub fn verify_subset_identity<R: CommRing>(
    ring: &R,
    n: usize,
    f: &[R::Elem],
    fam: &SubsetFamily<R::Elem>,
) -> SubsetVerdict {
    let size = 1usize << n;
    let mut lhs = vec![ring.zero(); size];
    for j in 1..size {
        let vals = &fam.g[j];
        let idx = subset_indices(j as Subset);
        if vals.len() != idx.len() {
            return SubsetVerdict { pass: false, mismatch: Some((idx, "wrong arity".into(), String::new())) };
        }
        let mut poly = vec![ring.zero(); size];
        poly[0] = ring.one();
        for (&i, a) in idx.iter().zip(vals) {
            let bit = 1usize << (i - 1);
            let mut next = poly.clone();
            for m in 0..size {
                if m & bit == 0 {
                    next[m | bit] = ring.add(&next[m | bit], &ring.mul(a, &poly[m]));
                }
            }
            poly = next;
        }
        for m in 0..size {
            lhs[m] = ring.add(&lhs[m], &poly[m]);
        }
    }
    for (m, l) in lhs.iter().enumerate() {
        let r = if m == 0 { ring.from_int((1i64 << n) - 1) } else { f[m].clone() };
        if *l != r {
            return SubsetVerdict {
                pass: false,
                mismatch: Some((subset_indices(m as Subset), format!("{l:?}"), format!("{r:?}"))),
            };
        }
    }
    SubsetVerdict { pass: true, mismatch: None }
}
