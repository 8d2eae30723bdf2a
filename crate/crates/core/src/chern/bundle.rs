use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::graded::{subset_indices, GradedClass, Subset};
use super::subset::{solve_subset_coefficients, verify_subset_identity, Integers, SubsetVerdict};
use crate::error::{NawError, Result};

/// Expression tree of bundles over the n-torus, built from line bundles
/// given by their first Chern class.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum BundleExpr {
    Line { name: String, c1: GradedClass },
    Trivial,
    Pullback { d: u64, inner: Box<Bundle> },
    Sum { parts: Vec<Bundle> },
    Tensor { parts: Vec<Bundle> },
}

/// A bundle expression with its cached rank and Chern character.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bundle {
    pub expr: BundleExpr,
    pub rank: usize,
    pub ch: GradedClass,
}

impl Bundle {
    /// Line bundle with first Chern class `c1`; ch = exp(c1).
    pub fn line(name: impl Into<String>, c1: GradedClass) -> Result<Bundle> {
        let ch = c1.exp_class()?;
        Ok(Bundle { expr: BundleExpr::Line { name: name.into(), c1 }, rank: 1, ch })
    }

    pub fn trivial(n: usize) -> Bundle {
        Bundle { expr: BundleExpr::Trivial, rank: 1, ch: GradedClass::one(n) }
    }

    pub fn n(&self) -> usize {
        self.ch.n()
    }

    pub fn sum(parts: Vec<Bundle>) -> Result<Bundle> {
        let n = parts.first().ok_or_else(|| NawError::InvalidInput("empty sum".into()))?.n();
        let mut ch = GradedClass::zero(n);
        for p in &parts {
            ch = ch.try_add(&p.ch)?;
        }
        let rank = parts.iter().map(|p| p.rank).sum();
        Ok(Bundle { expr: BundleExpr::Sum { parts }, rank, ch })
    }

    pub fn tensor(parts: Vec<Bundle>) -> Result<Bundle> {
        let n = parts.first().ok_or_else(|| NawError::InvalidInput("empty tensor product".into()))?.n();
        let mut ch = GradedClass::one(n);
        for p in &parts {
            ch = ch.try_mul(&p.ch)?;
        }
        let rank = parts.iter().map(|p| p.rank).product();
        Ok(Bundle { expr: BundleExpr::Tensor { parts }, rank, ch })
    }

    /// ε_d^* of a bundle: same rank, Chern character pulled back.
    pub fn pullback(d: u64, inner: Bundle) -> Bundle {
        let ch = inner.ch.pullback_eps(d);
        Bundle { rank: inner.rank, expr: BundleExpr::Pullback { d, inner: Box::new(inner) }, ch }
    }

    /// Recomputes rank and ch from the leaves, ignoring the caches.
    pub fn recompute(&self) -> Result<(usize, GradedClass)> {
        match &self.expr {
            BundleExpr::Line { c1, .. } => Ok((1, c1.exp_class()?)),
            BundleExpr::Trivial => Ok((1, GradedClass::one(self.n()))),
            BundleExpr::Pullback { d, inner } => {
                let (r, ch) = inner.recompute()?;
                Ok((r, ch.pullback_eps(*d)))
            }
            BundleExpr::Sum { parts } => {
                let mut acc = (0, GradedClass::zero(self.n()));
                for p in parts {
                    let (r, ch) = p.recompute()?;
                    acc = (acc.0 + r, acc.1.try_add(&ch)?);
                }
                Ok(acc)
            }
            BundleExpr::Tensor { parts } => {
                let mut acc = (1, GradedClass::one(self.n()));
                for p in parts {
                    let (r, ch) = p.recompute()?;
                    acc = (acc.0 * r, acc.1.try_mul(&ch)?);
                }
                Ok(acc)
            }
        }
    }

    /// Number of line and trivial leaves.
    pub fn leaf_count(&self) -> usize {
        match &self.expr {
            BundleExpr::Line { .. } | BundleExpr::Trivial => 1,
            BundleExpr::Pullback { inner, .. } => inner.leaf_count(),
            BundleExpr::Sum { parts } | BundleExpr::Tensor { parts } => parts.iter().map(Bundle::leaf_count).sum(),
        }
    }
}

impl GradedClass {
    pub fn try_add(&self, o: &GradedClass) -> Result<GradedClass> {
        if self.n() != o.n() {
            return Err(NawError::Mismatch(format!("number of generators {} vs {}", self.n(), o.n())));
        }
        Ok(self.add(o))
    }
}

/// π_γ with ch(π_γ) − γ in degree zero.
#[derive(Debug, Clone, Serialize)]
pub struct RealizedClass {
    pub bundle: Bundle,
    /// f(I) read off γ, by subset.
    pub f: Vec<(Vec<usize>, String)>,
    /// γ_0 = constant term of γ minus 2ⁿ − 1.
    pub gamma0: String,
    pub identity: SubsetVerdict,
    /// ch(π_γ) − γ lies in degree zero.
    pub pass: bool,
    /// Rank claimed after stable reduction (n); recorded, not constructed.
    pub reduced_rank: usize,
}

/// Builds ⊕_J ⊗_{j∈J} ψ_j^{⊗g_J(j)} with c_1(ψ_j) = ω_j from the solution of
/// the subset identity for the coefficients of γ.
pub fn realize_class(n: usize, gamma: &GradedClass) -> Result<RealizedClass> {
    if gamma.n() != n || n == 0 {
        return Err(NawError::Mismatch(format!("class over {} generators, expected {n}", gamma.n())));
    }
    let higher = gamma.higher_part();
    if !higher.is_integral() {
        return Err(NawError::InvalidInput("γ must have integral coefficients in positive degree".into()));
    }
    let size = 1usize << n;
    let f: Vec<BigInt> =
        (0..size as Subset).map(|s| if s == 0 { BigInt::zero() } else { gamma.coeff(s).to_integer() }).collect();
    let fam = solve_subset_coefficients(&Integers, n, &f)?;
    let identity = verify_subset_identity(&Integers, n, &f, &fam);
    let mut summands = Vec::with_capacity(size - 1);
    for j in 1..size {
        let idx = subset_indices(j as Subset);
        let factors = idx
            .iter()
            .zip(&fam.g[j])
            .map(|(&k, a)| {
                let c1 = GradedClass::omega(n, k).scale(&BigRational::from_integer(a.clone()));
                Bundle::line(format!("psi_{k}^{a}"), c1)
            })
            .collect::<Result<Vec<_>>>()?;
        summands.push(Bundle::tensor(factors)?);
    }
    let bundle = Bundle::sum(summands)?;
    let gamma0 = gamma.constant_term() - BigRational::from_integer(BigInt::from((1i64 << n) - 1));
    let pass = identity.pass && bundle.ch.sub(gamma).is_degree_zero();
    Ok(RealizedClass {
        bundle,
        f: (1..size as Subset)
            .map(|s| (subset_indices(s), &f[s as usize]))
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.to_string()))
            .collect(),
        gamma0: super::graded::rational_string(&gamma0),
        identity,
        pass,
        reduced_rank: n,
    })
}

/// c_1(π_1) = δ·Σ ω_k.
pub fn line_class(n: usize, delta: i64) -> GradedClass {
    GradedClass::omega_sum(n).scale(&BigRational::from_integer(delta.into()))
}

/// χ = −Σ_{a∈A} exp(a·c_1(π_1)), checked to lie in ⊕_k d^{2k} Γ_n^k.
pub fn chi_of_multiset(n: usize, d: u64, a: &[i64], delta: i64) -> Result<GradedClass> {
    let c = line_class(n, delta);
    let mut chi = GradedClass::zero(n);
    for &x in a {
        chi = chi.sub(&c.scale(&BigRational::from_integer(x.into())).exp_class()?);
    }
    chi.divide_eps(d)?;
    if !chi.is_integral() {
        return Err(NawError::Divisibility("χ is not integral".into()));
    }
    Ok(chi)
}

#[derive(Debug, Clone, Serialize)]
pub struct PiG {
    pub n: usize,
    pub m: usize,
    pub d: u64,
    pub delta: i64,
    pub chi: GradedClass,
    /// γ with ε_d^*(γ) = χ.
    pub gamma: GradedClass,
    pub pi_chi: RealizedClass,
    pub bundle: Bundle,
    /// Rank of the expression: 2ⁿ − 1 + |A|.
    pub expression_rank: usize,
    /// Rank after reducing π_χ to rank n: n + |A| = R(n, m).
    pub reduced_rank: usize,
    /// |A| when χ has no higher part and π_χ can be dropped.
    pub optimized_rank: Option<usize>,
    pub ch_degree_zero: bool,
    pub recomputed_ch_matches: bool,
}

/// π_G = ε_d^*(π_γ) ⊕ ⊕_{a∈A} π_1^{⊗a}, with ch(π_G) checked to be a constant.
pub fn assemble_pi_g(n: usize, m: usize, d: u64, a: &[i64], delta: i64) -> Result<PiG> {
    let ones = a.iter().filter(|&&x| x == 1).count();
    if ones < m {
        return Err(NawError::InvalidInput(format!("multiset has {ones} ones, need at least {m}")));
    }
    let chi = chi_of_multiset(n, d, a, delta)?;
    let gamma = chi.divide_eps(d)?;
    let pi_chi = realize_class(n, &gamma)?;
    if !pi_chi.pass {
        return Err(NawError::Mismatch("realized class misses γ in positive degree".into()));
    }
    let c = line_class(n, delta);
    let mut parts = vec![Bundle::pullback(d, pi_chi.bundle.clone())];
    for &x in a {
        parts.push(Bundle::line(format!("pi_1^{x}"), c.scale(&BigRational::from_integer(x.into())))?);
    }
    let bundle = Bundle::sum(parts)?;
    let ch_degree_zero = bundle.ch.is_degree_zero();
    let recomputed_ch_matches = bundle.recompute()? == (bundle.rank, bundle.ch.clone());
    let expression_rank = bundle.rank;
    let optimized_rank = chi.higher_part().is_zero().then_some(a.len());
    Ok(PiG {
        n,
        m,
        d,
        delta,
        chi,
        gamma,
        pi_chi,
        bundle,
        expression_rank,
        reduced_rank: n + a.len(),
        optimized_rank,
        ch_degree_zero,
        recomputed_ch_matches,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivialityVerdict {
    pub rank: usize,
    pub rank_ok: bool,
    pub ch_degree_zero: bool,
    /// Rank of the torsion-free group K⁰(T^{2n}) = 2^{2n−1}.
    pub k0_rank: String,
    pub pass: bool,
}

/// Arithmetic preconditions for turning a bundle over T^{2n} into an action
/// on T^{2n} × U(r): r ≥ n and ch concentrated in degree zero.
pub fn triviality_preconditions(n: usize, r: usize, ch: &GradedClass) -> TrivialityVerdict {
    let rank_ok = r >= n;
    let ch_degree_zero = ch.is_degree_zero();
    let k0 = if n == 0 { BigInt::one() } else { BigInt::one() << (2 * n - 1) };
    TrivialityVerdict { rank: r, rank_ok, ch_degree_zero, k0_rank: k0.to_string(), pass: rank_ok && ch_degree_zero }
}

/// Integer value of a rational known to be integral, for reporting.
pub fn as_i128(q: &BigRational) -> Option<i128> {
    q.is_integer().then(|| q.numer().to_i128()).flatten()
}
