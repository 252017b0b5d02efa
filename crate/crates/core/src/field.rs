//! Exact scalar arithmetic over the rationals or a prime field F_p.
//!
//! Every coefficient in the workbench is either an arbitrary-precision
//! rational or a reduced residue mod p. No floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The ground field of an algebra: Q or F_p for a prime p.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// An exact field element. `Mod` values are always reduced mod p.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Mod(u64),
}

impl FieldSpec {
    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::zero()),
            FieldSpec::Prime(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::one()),
            FieldSpec::Prime(_) => Coeff::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Coeff::Mod((n.rem_euclid(*p as i64)) as u64),
        }
    }

    /// Builds n/d. Panics if d reduces to zero in the field.
    pub fn fraction(&self, n: &BigInt, d: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => {
                assert!(!d.is_zero(), "zero denominator");
                Coeff::Rat(BigRational::new(n.clone(), d.clone()))
            }
            FieldSpec::Prime(p) => {
                let p_big = BigInt::from(*p);
                let nn = ((n % &p_big) + &p_big) % &p_big;
                let dd = ((d % &p_big) + &p_big) % &p_big;
                let nn = nn.to_u64_digits().1.first().copied().unwrap_or(0);
                let dd = dd.to_u64_digits().1.first().copied().unwrap_or(0);
                assert!(dd != 0, "denominator divisible by {p}");
                let inv = mod_inverse(dd, *p).expect("prime modulus");
                Coeff::Mod(mul_mod(nn, inv, *p))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (FieldSpec::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod((x + y) % p),
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            (FieldSpec::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod((x + p - y % p) % p)
            }
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (FieldSpec::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod(mul_mod(*x, *y, *p)),
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (FieldSpec::Prime(p), Coeff::Mod(x)) => Coeff::Mod((p - x % p) % p),
            _ => panic!("coefficient/field mismatch"),
        }
    }

    /// Multiplicative inverse; `None` on zero.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Coeff::Rat(x.recip()))
                }
            }
            (FieldSpec::Prime(p), Coeff::Mod(x)) => mod_inverse(*x, *p).map(Coeff::Mod),
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let ib = self.inv(b).expect("division by zero");
        self.mul(a, &ib)
    }

    /// A deterministic "random" nonzero-ish sample used by seeded checks.
    pub fn sample(&self, rng: &mut impl rand::Rng) -> Coeff {
        match self {
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-20i64..=20)),
            FieldSpec::Prime(p) => Coeff::Mod(rng.gen_range(0..*p)),
        }
    }
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(x) => x.is_zero(),
            Coeff::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(x) => x.is_one(),
            Coeff::Mod(x) => *x == 1,
        }
    }
}

impl fmt::Display for Coeff {
    /// Canonical form: integers as `n`, proper fractions as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else if x.denom().is_negative() {
                    write!(f, "{}/{}", -x.numer(), -x.denom())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Coeff::Mod(x) => write!(f, "{x}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // extended euclid on (a, p)
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let f = FieldSpec::Rationals;
        let a = f.fraction(&BigInt::from(3), &BigInt::from(2));
        let b = f.from_i64(-2);
        assert_eq!(f.add(&a, &b).to_string(), "-1/2");
        assert_eq!(f.mul(&a, &b).to_string(), "-3");
        assert_eq!(f.inv(&a).unwrap().to_string(), "2/3");
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::Prime(101);
        let a = f.from_i64(-1);
        assert_eq!(a, Coeff::Mod(100));
        let inv3 = f.inv(&f.from_i64(3)).unwrap();
        assert_eq!(f.mul(&inv3, &f.from_i64(3)), f.one());
        assert_eq!(f.fraction(&BigInt::from(1), &BigInt::from(2)), Coeff::Mod(51));
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(101) && !is_prime(1) && !is_prime(91));
    }
}
