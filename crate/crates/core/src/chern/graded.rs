use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{NawError, Result};

/// Subset of {1..n} as a bit mask (bit i-1 for index i).
pub type Subset = u32;

pub fn subset_indices(s: Subset) -> Vec<usize> {
    (0..32).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Element of Γ_n ⊗ Q: rational combination of square-free monomials
/// ∏_{i∈I} ω_i, keyed by I. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedClass {
    n: usize,
    coeffs: BTreeMap<Subset, BigRational>,
}

impl GradedClass {
    pub fn zero(n: usize) -> GradedClass {
        assert!(n < 32, "at most 31 generators");
        GradedClass { n, coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: BigRational) -> GradedClass {
        GradedClass::monomial(n, 0, c)
    }

    pub fn from_int(n: usize, c: i64) -> GradedClass {
        GradedClass::constant(n, BigRational::from_integer(c.into()))
    }

    pub fn one(n: usize) -> GradedClass {
        GradedClass::from_int(n, 1)
    }

    pub fn monomial(n: usize, s: Subset, c: BigRational) -> GradedClass {
        let mut x = GradedClass::zero(n);
        assert!(s >> n == 0, "subset outside 1..n");
        if !c.is_zero() {
            x.coeffs.insert(s, c);
        }
        x
    }

    /// ω_k, 1-indexed.
    pub fn omega(n: usize, k: usize) -> GradedClass {
        assert!((1..=n).contains(&k));
        GradedClass::monomial(n, 1 << (k - 1), BigRational::one())
    }

    /// ω_1 + ... + ω_n.
    pub fn omega_sum(n: usize) -> GradedClass {
        (1..=n).fold(GradedClass::zero(n), |acc, k| acc.add(&GradedClass::omega(n, k)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, s: Subset) -> BigRational {
        self.coeffs.get(&s).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &BigRational)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert_add(&mut self, s: Subset, c: BigRational) {
        let e = self.coeffs.entry(s).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn add(&self, o: &GradedClass) -> GradedClass {
        assert_eq!(self.n, o.n, "mismatched number of generators");
        let mut out = self.clone();
        for (&s, c) in &o.coeffs {
            out.insert_add(s, c.clone());
        }
        out
    }

    pub fn neg(&self) -> GradedClass {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, o: &GradedClass) -> GradedClass {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> GradedClass {
        let mut out = GradedClass::zero(self.n);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(&s, x)| (s, x * c)).collect();
        }
        out
    }

    /// Cup product; monomials sharing a generator vanish since ω_i² = 0.
    pub fn try_mul(&self, o: &GradedClass) -> Result<GradedClass> {
        if self.n != o.n {
            return Err(NawError::Mismatch(format!("number of generators {} vs {}", self.n, o.n)));
        }
        let mut out = GradedClass::zero(self.n);
        for (&s, a) in &self.coeffs {
            for (&t, b) in &o.coeffs {
                if s & t == 0 {
                    out.insert_add(s | t, a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &GradedClass) -> GradedClass {
        self.try_mul(o).expect("mismatched number of generators")
    }

    pub fn pow(&self, k: u32) -> GradedClass {
        (0..k).fold(GradedClass::one(self.n), |acc, _| acc.mul(self))
    }

    /// The part supported on |I| = k.
    pub fn degree_part(&self, k: u32) -> GradedClass {
        let mut out = GradedClass::zero(self.n);
        out.coeffs = self.coeffs.iter().filter(|(s, _)| s.count_ones() == k).map(|(&s, c)| (s, c.clone())).collect();
        out
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    /// Everything in degree ≥ 1.
    pub fn higher_part(&self) -> GradedClass {
        let mut out = self.clone();
        out.coeffs.remove(&0);
        out
    }

    pub fn is_degree_zero(&self) -> bool {
        self.coeffs.keys().all(|&s| s == 0)
    }

    pub fn is_pure_degree_one(&self) -> bool {
        self.coeffs.keys().all(|&s| s.count_ones() == 1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Truncated exponential of a degree-one class Σ a_k ω_k, which equals
    /// Σ_I ∏_{i∈I} a_i.
    pub fn exp_class(&self) -> Result<GradedClass> {
        if !self.is_pure_degree_one() {
            return Err(NawError::InvalidInput("exp_class needs a class of pure degree one".into()));
        }
        let mut out = GradedClass::one(self.n);
        for (&s, a) in &self.coeffs {
            let factor = GradedClass::one(self.n).add(&GradedClass::monomial(self.n, s, a.clone()));
            out = out.mul(&factor);
        }
        Ok(out)
    }

    /// ε_d^*: multiplies the degree-k part by d^{2k}.
    pub fn pullback_eps(&self, d: u64) -> GradedClass {
        let mut out = GradedClass::zero(self.n);
        for (&s, c) in &self.coeffs {
            let f = BigInt::from(d).pow(2 * s.count_ones());
            out.insert_add(s, c * BigRational::from_integer(f));
        }
        out
    }

    /// Inverse of [`GradedClass::pullback_eps`]; fails unless every degree-k
    /// coefficient is an integer divisible by d^{2k}.
    pub fn divide_eps(&self, d: u64) -> Result<GradedClass> {
        let mut out = GradedClass::zero(self.n);
        for (&s, c) in &self.coeffs {
            let f = BigInt::from(d).pow(2 * s.count_ones());
            if s != 0 && !(c.is_integer() && (c.numer() % &f).is_zero()) {
                return Err(NawError::Divisibility(format!(
                    "coefficient {} of {:?} is not in {}Z",
                    rational_string(c),
                    subset_indices(s),
                    f
                )));
            }
            out.insert_add(s, c / BigRational::from_integer(f));
        }
        Ok(out)
    }

    /// Largest absolute numerator, for reporting.
    pub fn height(&self) -> BigInt {
        self.coeffs.values().map(|c| c.numer().abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<Subset> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&s| (s.count_ones(), subset_indices(s)));
        for (i, s) in keys.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", rational_string(&self.coeffs[&s]))?;
            for k in subset_indices(s) {
                write!(f, "·ω{k}")?;
            }
        }
        Ok(())
    }
}

/// Serialized as a map from sorted index lists such as `"[1,2]"` to the
/// coefficient as a reduced fraction string, ordered by degree.
impl Serialize for GradedClass {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut keys: Vec<Subset> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&s| (s.count_ones(), subset_indices(s)));
        let mut map = ser.serialize_map(Some(keys.len()))?;
        for s in keys {
            let idx: Vec<String> = subset_indices(s).iter().map(|i| i.to_string()).collect();
            map.serialize_entry(&format!("[{}]", idx.join(",")), &rational_string(&self.coeffs[&s]))?;
        }
        map.end()
    }
}
