use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Serialize, Serializer};

/// An element `num/den` of Q/Z, always reduced with `0 <= num < den`.
///
/// Roots of unity used as fibre scalars are stored additively: `a/q` stands
/// for `exp(2πi a/q)`, so multiplying scalars is adding torsion values.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Torsion {
    num: u64,
    den: u64,
}

impl Torsion {
    pub const ZERO: Torsion = Torsion { num: 0, den: 1 };

    /// The class of `num/den` in Q/Z. Panics when `den == 0`.
    pub fn new(num: i64, den: u64) -> Torsion {
        assert!(den > 0, "torsion denominator must be positive");
        let d = den as i128;
        let n = (num as i128).rem_euclid(d);
        let g = (n as u128).gcd(&(d as u128)) as i128;
        let (n, d) = if n == 0 { (0, 1) } else { (n / g, d / g) };
        Torsion { num: n as u64, den: d as u64 }
    }

    /// `exp(2πi/q)` in additive form.
    pub fn root(q: u64) -> Torsion {
        Torsion::new(1, q)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Additive order, which equals the reduced denominator.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn scale(&self, k: i64) -> Torsion {
        let d = self.den as i128;
        let n = (self.num as i128 * k as i128).rem_euclid(d);
        Torsion::new(n as i64, self.den)
    }

    /// The numerator over a fixed denominator `q`; `None` if `self` does not
    /// have order dividing `q`.
    pub fn over(&self, q: u64) -> Option<u64> {
        if !q.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * (q / self.den))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Add for Torsion {
    type Output = Torsion;
    fn add(self, rhs: Torsion) -> Torsion {
        let l = self.den.lcm(&rhs.den) as i128;
        let n = self.num as i128 * (l / self.den as i128) + rhs.num as i128 * (l / rhs.den as i128);
        Torsion::new((n % l) as i64, l as u64)
    }
}

impl Neg for Torsion {
    type Output = Torsion;
    fn neg(self) -> Torsion {
        Torsion::new(-(self.num as i64), self.den)
    }
}

impl Sub for Torsion {
    type Output = Torsion;
    fn sub(self, rhs: Torsion) -> Torsion {
        self + (-rhs)
    }
}

impl Ord for Torsion {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as u128) * (other.den as u128))
            .cmp(&((other.num as u128) * (self.den as u128)))
            .then(self.den.cmp(&other.den))
    }
}

impl PartialOrd for Torsion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Torsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Torsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Torsion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `torsion_add` as a free function, for symmetry with the other kernels.
pub fn torsion_add(x: Torsion, y: Torsion) -> Torsion {
    x + y
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn examples() {
        assert_eq!(Torsion::new(1, 2) + Torsion::new(1, 2), Torsion::ZERO);
        assert_eq!(Torsion::new(1, 4) + Torsion::new(1, 4), Torsion::new(1, 2));
        assert_eq!(Torsion::new(1, 3) + Torsion::new(1, 6), Torsion::new(1, 2));
    }

    #[test]
    fn reduced_storage() {
        let t = Torsion::new(6, 8);
        assert_eq!((t.num(), t.den()), (3, 4));
        assert_eq!(Torsion::new(-1, 3), Torsion::new(2, 3));
        assert_eq!(Torsion::new(5, 5), Torsion::ZERO);
        assert_eq!(Torsion::ZERO.order(), 1);
    }

    #[test]
    fn agrees_with_rational_oracle() {
        for q1 in 1..13i64 {
            for q2 in 1..13i64 {
                for a in 0..q1 {
                    for b in 0..q2 {
                        let s = Ratio::new(a, q1) + Ratio::new(b, q2);
                        let frac = s - s.floor();
                        let expect = Torsion::new(*frac.numer(), *frac.denom() as u64);
                        let got = Torsion::new(a, q1 as u64) + Torsion::new(b, q2 as u64);
                        assert_eq!(got, expect);
                        assert_eq!((q1 * q2) as u64 % got.order(), 0);
                    }
                }
            }
        }
    }
}
