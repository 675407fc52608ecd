//! Exact field arithmetic: rationals and prime fields GF(p).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The working field for linear-algebra backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

pub const DEFAULT_PRIME: u64 = 32003;

impl FieldSpec {
    pub fn is_valid(&self) -> bool {
        match self {
            FieldSpec::Rationals => true,
            FieldSpec::PrimeField(p) => is_prime(*p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let spec = match s {
            "q" | "Q" | "rationals" => FieldSpec::Rationals,
            other => {
                let p: u64 = other
                    .strip_prefix("gf:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Syntax {
                        line: 1,
                        col: 1,
                        msg: format!("invalid field spec `{other}`; expected `q` or `gf:<p>`"),
                    })?;
                FieldSpec::PrimeField(p)
            }
        };
        if !spec.is_valid() {
            return Err(Error::Syntax {
                line: 1,
                col: 1,
                msg: format!("`{s}` is not a prime field: modulus is composite"),
            });
        }
        Ok(spec)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field element operations used by the linear backend.
pub trait Scalar: Clone + PartialEq {
    fn from_i64(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Scalar for BigRational {
    fn from_i64(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        BigRational::one() / self
    }
}

/// An element of GF(p); the modulus travels with the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub value: u64,
    pub modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp {
            value: (value.rem_euclid(m)) as u64,
            modulus,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

impl Scalar for Fp {
    fn from_i64(&self, n: i64) -> Self {
        Fp::new(n, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp {
            value: (self.value + self.modulus - other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp {
            value: ((self.value as u128 * other.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        Fp {
            value: pow_mod(self.value, self.modulus - 2, self.modulus),
            modulus: self.modulus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_specs() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!(
            "gf:32003".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(32003)
        );
        assert!("gf:32004".parse::<FieldSpec>().is_err());
        assert!("nope".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let p = 7;
        let a = Fp::new(3, p);
        let b = Fp::new(5, p);
        assert_eq!(a.add(&b).value, 1);
        assert_eq!(a.sub(&b).value, 5);
        assert_eq!(a.mul(&b).value, 1);
        assert_eq!(a.mul(&a.inv()).value, 1);
        assert_eq!(Fp::new(-1, p).value, 6);
    }

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime(DEFAULT_PRIME));
    }
}
