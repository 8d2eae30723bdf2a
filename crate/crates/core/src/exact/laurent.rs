use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use crate::error::{NawError, Result};

/// Exponent pair `(e_τ, e_θ)`.
pub type Exponent = (i64, i64);

/// Laurent polynomial in two variables τ, θ with coefficients in a fixed
/// cyclotomic field. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<Exponent, Cyclotomic>,
}

fn add_exp(a: Exponent, b: Exponent) -> Result<Exponent> {
    Ok((a.0.checked_add(b.0).ok_or(NawError::Overflow)?, a.1.checked_add(b.1).ok_or(NawError::Overflow)?))
}

impl LaurentPoly {
    pub fn zero(field: &Arc<CyclotomicField>) -> LaurentPoly {
        LaurentPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Cyclotomic) -> LaurentPoly {
        LaurentPoly::monomial(c, (0, 0))
    }

    pub fn from_int(field: &Arc<CyclotomicField>, v: i64) -> LaurentPoly {
        LaurentPoly::constant(Cyclotomic::from_int(field, v))
    }

    pub fn one(field: &Arc<CyclotomicField>) -> LaurentPoly {
        LaurentPoly::from_int(field, 1)
    }

    pub fn monomial(c: Cyclotomic, e: Exponent) -> LaurentPoly {
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { field, terms }
    }

    /// `τ^a θ^b` with coefficient one.
    pub fn var(field: &Arc<CyclotomicField>, a: i64, b: i64) -> LaurentPoly {
        LaurentPoly::monomial(Cyclotomic::one(field), (a, b))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(Cyclotomic::is_one)
    }

    fn insert_add(terms: &mut BTreeMap<Exponent, Cyclotomic>, e: Exponent, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match terms.remove(&e) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    terms.insert(e, s);
                }
            }
            None => {
                terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, *e, c.clone());
        }
        LaurentPoly { field: self.field.clone(), terms }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { field: self.field.clone(), terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                Self::insert_add(&mut terms, add_exp(*e1, *e2)?, c1.mul(c2));
            }
        }
        Ok(LaurentPoly { field: self.field.clone(), terms })
    }

    /// Multiplication; panics only on exponent overflow, which needs exponents
    /// beyond `i64` and cannot arise from the matrices handled here.
    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.try_mul(other).expect("Laurent exponent overflow")
    }

    pub fn scale(&self, c: &Cyclotomic) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        for (e, x) in &self.terms {
            Self::insert_add(&mut terms, *e, x.mul(c));
        }
        LaurentPoly { field: self.field.clone(), terms }
    }

    pub fn scale_rational(&self, r: &BigRational) -> LaurentPoly {
        self.scale(&Cyclotomic::from_rational(&self.field, r.clone()))
    }

    /// `c·τ^a θ^b` with `c ≠ 0`, if the polynomial is a single term.
    pub fn as_unit_monomial(&self) -> Option<(Exponent, &Cyclotomic)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn inverse(&self) -> Option<LaurentPoly> {
        let ((a, b), c) = self.as_unit_monomial()?;
        Some(LaurentPoly::monomial(c.inverse()?, (-a, -b)))
    }

    pub fn pow(&self, e: i64) -> Result<LaurentPoly> {
        let base = if e < 0 { self.inverse().ok_or(NawError::NonUnitSubstitution)? } else { self.clone() };
        let mut acc = LaurentPoly::one(&self.field);
        for _ in 0..e.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    /// Ring homomorphism `τ ↦ sub_tau`, `θ ↦ sub_theta`.
    pub fn substitute(&self, sub_tau: &LaurentPoly, sub_theta: &LaurentPoly) -> Result<LaurentPoly> {
        let mut tau_pows: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        let mut theta_pows: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero(&self.field);
        for ((a, b), c) in &self.terms {
            if !tau_pows.contains_key(a) {
                tau_pows.insert(*a, sub_tau.pow(*a)?);
            }
            if !theta_pows.contains_key(b) {
                theta_pows.insert(*b, sub_theta.pow(*b)?);
            }
            let term = tau_pows[a].try_mul(&theta_pows[b])?.scale(c);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Formal conjugation on the unit torus: τ ↦ τ⁻¹, θ ↦ θ⁻¹, μ ↦ μ⁻¹.
    pub fn star(&self) -> LaurentPoly {
        LaurentPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|((a, b), c)| ((-a, -b), c.conj())).collect(),
        }
    }

    pub fn eval(&self, tau: Complex64, theta: Complex64) -> Complex64 {
        self.terms.iter().map(|((a, b), c)| c.to_complex() * tau.powi(*a as i32) * theta.powi(*b as i32)).sum()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("({c})·τ^{a}·θ^{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Substitution entry point matching the kernel's operation list.
pub fn laurent_substitute(p: &LaurentPoly, sub_tau: &LaurentPoly, sub_theta: &LaurentPoly) -> Result<LaurentPoly> {
    p.substitute(sub_tau, sub_theta)
}

/// 2×2 matrix over [`LaurentPoly`].
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMat2 {
    pub entries: [[LaurentPoly; 2]; 2],
}

impl LaurentMat2 {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> LaurentMat2 {
        LaurentMat2 { entries: [[a, b], [c, d]] }
    }

    pub fn diag(a: LaurentPoly, d: LaurentPoly) -> LaurentMat2 {
        let z = LaurentPoly::zero(a.field());
        LaurentMat2::new(a, z.clone(), z, d)
    }

    pub fn identity(field: &Arc<CyclotomicField>) -> LaurentMat2 {
        LaurentMat2::diag(LaurentPoly::one(field), LaurentPoly::one(field))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.entries[0][0].field()
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> LaurentMat2 {
        let e = &self.entries;
        LaurentMat2::new(f(&e[0][0]), f(&e[0][1]), f(&e[1][0]), f(&e[1][1]))
    }

    fn try_map(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>) -> Result<LaurentMat2> {
        let e = &self.entries;
        Ok(LaurentMat2::new(f(&e[0][0])?, f(&e[0][1])?, f(&e[1][0])?, f(&e[1][1])?))
    }

    pub fn add(&self, o: &LaurentMat2) -> LaurentMat2 {
        let (a, b) = (&self.entries, &o.entries);
        LaurentMat2::new(a[0][0].add(&b[0][0]), a[0][1].add(&b[0][1]), a[1][0].add(&b[1][0]), a[1][1].add(&b[1][1]))
    }

    pub fn sub(&self, o: &LaurentMat2) -> LaurentMat2 {
        self.add(&o.map(LaurentPoly::neg))
    }

    pub fn mul(&self, o: &LaurentMat2) -> LaurentMat2 {
        let (a, b) = (&self.entries, &o.entries);
        let cell = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
        LaurentMat2::new(cell(0, 0), cell(0, 1), cell(1, 0), cell(1, 1))
    }

    pub fn scale(&self, c: &LaurentPoly) -> LaurentMat2 {
        self.map(|x| x.mul(c))
    }

    pub fn det(&self) -> LaurentPoly {
        let e = &self.entries;
        e[0][0].mul(&e[1][1]).sub(&e[0][1].mul(&e[1][0]))
    }

    pub fn transpose(&self) -> LaurentMat2 {
        let e = &self.entries;
        LaurentMat2::new(e[0][0].clone(), e[1][0].clone(), e[0][1].clone(), e[1][1].clone())
    }

    /// Conjugate transpose under the unit-torus convention.
    pub fn star(&self) -> LaurentMat2 {
        self.map(LaurentPoly::star).transpose()
    }

    /// Inverse via the adjugate; requires the determinant to be a unit monomial.
    pub fn inverse(&self) -> Option<LaurentMat2> {
        let inv_det = self.det().inverse()?;
        let e = &self.entries;
        let adj = LaurentMat2::new(e[1][1].clone(), e[0][1].neg(), e[1][0].neg(), e[0][0].clone());
        Some(adj.scale(&inv_det))
    }

    pub fn pow(&self, k: i64) -> Option<LaurentMat2> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = LaurentMat2::identity(self.field());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    pub fn substitute(&self, sub_tau: &LaurentPoly, sub_theta: &LaurentPoly) -> Result<LaurentMat2> {
        self.try_map(|p| p.substitute(sub_tau, sub_theta))
    }

    pub fn is_identity(&self) -> bool {
        let e = &self.entries;
        e[0][0].is_one() && e[1][1].is_one() && e[0][1].is_zero() && e[1][0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(LaurentPoly::is_zero)
    }

    pub fn eval(&self, tau: Complex64, theta: Complex64) -> [[Complex64; 2]; 2] {
        let e = &self.entries;
        [[e[0][0].eval(tau, theta), e[0][1].eval(tau, theta)], [e[1][0].eval(tau, theta), e[1][1].eval(tau, theta)]]
    }
}

impl fmt::Debug for LaurentMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

pub fn star(m: &LaurentMat2) -> LaurentMat2 {
    m.star()
}

pub fn mat2_det(m: &LaurentMat2) -> LaurentPoly {
    m.det()
}

/// Terms as `{"tau": a, "theta": b, "coeff": [[power of μ_q, "num/den"], ...]}`.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Term<'a>(Exponent, &'a Cyclotomic);
        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("tau", &self.0 .0)?;
                m.serialize_entry("theta", &self.0 .1)?;
                m.serialize_entry("coeff", &self.1.sparse_terms())?;
                m.end()
            }
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Term(*e, c))?;
        }
        seq.end()
    }
}

impl Serialize for LaurentMat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}
