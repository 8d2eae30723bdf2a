use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{NawError, Result};

/// Φ_q as integer coefficients, lowest degree first.
///
/// Computed by dividing `x^q - 1` by Φ_e for every proper divisor `e` of `q`.
pub fn cyclotomic_polynomial(q: u64) -> Vec<BigInt> {
    assert!(q >= 1, "cyclotomic index must be positive");
    let mut num: Vec<BigInt> = vec![BigInt::zero(); q as usize + 1];
    num[0] = BigInt::from(-1);
    num[q as usize] = BigInt::one();
    for e in (1..q).filter(|e| q.is_multiple_of(*e)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(e));
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (k, dk) in den.iter().enumerate() {
            rem[i + k] -= &c * dk;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

/// Q(μ_q) presented as Q[x]/Φ_q.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u64,
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    /// Shared handle for conductor `q`; fields are cached per conductor.
    pub fn new(q: u64) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic cache poisoned");
        guard
            .entry(q)
            .or_insert_with(|| Arc::new(CyclotomicField { conductor: q, modulus: cyclotomic_polynomial(q) }))
            .clone()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// An element of Q(μ_q) in canonical form (reduced modulo Φ_q).
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Cyclotomic {
        Cyclotomic { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: BigRational) -> Cyclotomic {
        let mut c = Cyclotomic::zero(field);
        c.coeffs[0] = r;
        c
    }

    pub fn from_int(field: &Arc<CyclotomicField>, v: i64) -> Cyclotomic {
        Cyclotomic::from_rational(field, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Cyclotomic {
        Cyclotomic::from_int(field, 1)
    }

    /// `exp(2πi num/den)`. Requires `den | q`, or `q` odd and `den | 2q`
    /// (then the root is `-exp(2πi (2num+den)/(2den))`).
    pub fn root_of_unity(field: &Arc<CyclotomicField>, num: i64, den: u64) -> Result<Cyclotomic> {
        let q = field.conductor;
        if den == 0 {
            return Err(NawError::InvalidInput("root of unity with zero denominator".into()));
        }
        if q.is_multiple_of(den) {
            let e = (num as i128 * (q / den) as i128).rem_euclid(q as i128) as usize;
            return Ok(Cyclotomic::from_poly(field, monomial(e)));
        }
        if q % 2 == 1 && (2 * q).is_multiple_of(den) {
            // Reduced, den = 2e with e odd and num odd, so
            // exp(2πi num/den) = -exp(2πi ((num + e)/2)/e) and e divides q.
            let g = (num.unsigned_abs()).gcd(&den);
            let (num, den) = (num / g as i64, den / g);
            if q.is_multiple_of(den) {
                return Cyclotomic::root_of_unity(field, num, den);
            }
            let e = (den / 2) as i64;
            let r = Cyclotomic::root_of_unity(field, (num + e).div_euclid(2), e as u64)?;
            return Ok(r.neg());
        }
        Err(NawError::InvalidInput(format!("μ_{den} does not lie in Q(μ_{q})")))
    }

    /// The generator `x = μ_q`.
    pub fn generator(field: &Arc<CyclotomicField>) -> Cyclotomic {
        Cyclotomic::from_poly(field, monomial(1))
    }

    pub fn from_poly(field: &Arc<CyclotomicField>, mut poly: Vec<BigRational>) -> Cyclotomic {
        let deg = field.degree();
        for i in (deg..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (k, mk) in field.modulus[..deg].iter().enumerate() {
                poly[i - deg + k] -= &c * BigRational::from_integer(mk.clone());
            }
        }
        poly.resize(deg, BigRational::zero());
        Cyclotomic { field: field.clone(), coeffs: poly }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &Cyclotomic) {
        assert_eq!(self.field.conductor, other.field.conductor, "mixed cyclotomic conductors");
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        self.check_field(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        self.check_field(other);
        let deg = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += a * b;
            }
        }
        Cyclotomic::from_poly(&self.field, prod)
    }

    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inverse(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<BigRational> =
            self.field.modulus.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let (g, s) = ext_gcd(trim(self.coeffs.clone()), modulus);
        // Φ_q is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        Some(Cyclotomic::from_poly(&self.field, s.into_iter().map(|c| c * &inv_g).collect()))
    }

    pub fn pow(&self, e: i64) -> Option<Cyclotomic> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Cyclotomic::one(&self.field);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            exp >>= 1;
        }
        Some(acc)
    }

    /// Complex conjugation, `μ_q ↦ μ_q^{-1}`.
    pub fn conj(&self) -> Cyclotomic {
        let q = self.field.conductor as usize;
        let mut poly = vec![BigRational::zero(); q.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(q - i) % q] += c;
            }
        }
        Cyclotomic::from_poly(&self.field, poly)
    }

    pub fn to_complex(&self) -> Complex64 {
        let q = self.field.conductor as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * i as f64 / q;
            z += Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN);
        }
        z
    }

    /// Sparse `(power, "num/den")` pairs for serialization.
    pub fn sparse_terms(&self) -> Vec<(usize, String)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, fraction_string(c))).collect()
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(&self)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sparse_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(i, c)| match i {
                0 => c,
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact `num/den` (or plain `num` for integers).
pub fn fraction_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn monomial(e: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); e + 1];
    v[e] = BigRational::one();
    v
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let lead = b.last().expect("nonempty divisor").clone();
    let mut quo = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for i in (0..quo.len()).rev() {
        let c = &rem[i + b.len() - 1] / &lead;
        if c.is_zero() {
            continue;
        }
        for (k, bk) in b.iter().enumerate() {
            rem[i + k] -= &c * bk;
        }
        quo[i] = c;
    }
    (quo, trim(rem))
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(a.len().max(q.len() + b.len()), BigRational::zero());
    for (i, qi) in q.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= qi * bj;
        }
    }
    trim(out)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)`.
fn ext_gcd(a: Vec<BigRational>, m: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (m, a);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
    }

    #[test]
    fn primitive_root_has_exact_order() {
        for q in 1..=100u64 {
            let field = CyclotomicField::new(q);
            let mu = Cyclotomic::root_of_unity(&field, 1, q).unwrap();
            // Φ_q(μ_q) = 0 by evaluating the modulus at μ_q.
            let mut acc = Cyclotomic::zero(&field);
            let mut power = Cyclotomic::one(&field);
            for c in field.modulus() {
                acc = acc.add(&power.scale(&BigRational::from_integer(c.clone())));
                power = power.mul(&mu);
            }
            assert!(acc.is_zero(), "Φ_{q}(μ_{q}) != 0");
            let mut p = Cyclotomic::one(&field);
            for j in 1..q {
                p = p.mul(&mu);
                assert!(!p.is_one(), "μ_{q}^{j} = 1");
            }
            assert!(p.mul(&mu).is_one());
        }
    }

    #[test]
    fn torsion_embeds_injectively() {
        use crate::exact::Torsion;
        for q in 1..=50u64 {
            let field = CyclotomicField::new(q);
            let img = |t: Torsion| Cyclotomic::root_of_unity(&field, t.over(q).unwrap() as i64, q).unwrap();
            let mut seen = Vec::new();
            for a in 0..q as i64 {
                let x = Torsion::new(a, q);
                let ix = img(x);
                assert!(!seen.contains(&ix));
                seen.push(ix.clone());
                for b in 0..q as i64 {
                    let y = Torsion::new(b, q);
                    assert_eq!(img(x + y), ix.mul(&img(y)));
                }
            }
        }
    }

    #[test]
    fn inverse_and_conj() {
        let field = CyclotomicField::new(9);
        let z = Cyclotomic::generator(&field);
        let x = z.add(&Cyclotomic::from_int(&field, 3)).mul(&z.mul(&z).sub(&Cyclotomic::from_int(&field, 2)));
        let inv = x.inverse().unwrap();
        assert!(x.mul(&inv).is_one());
        assert!(z.conj().mul(&z).is_one());
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn odd_conductor_holds_twice_the_roots() {
        let field = CyclotomicField::new(9);
        let mu6 = Cyclotomic::root_of_unity(&field, 1, 6).unwrap();
        assert!(mu6.pow(6).unwrap().is_one());
        assert!(!mu6.pow(3).unwrap().is_one());
        assert!(mu6.pow(3).unwrap().add(&Cyclotomic::one(&field)).is_zero());
        assert!(Cyclotomic::root_of_unity(&field, 1, 4).is_err());
    }

    #[test]
    fn complex_value() {
        let field = CyclotomicField::new(8);
        let z = Cyclotomic::root_of_unity(&field, 3, 8).unwrap().to_complex();
        let expect = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 3.0 / 8.0);
        assert!((z - expect).norm() < 1e-12);
    }
}
