//! Ground fields: the prime fields `F_p` and the exact rationals.
//!
//! The prime `p` is a runtime value, so scalars are carried in a small
//! enum and every arithmetic operation goes through a [`Field`] context.
//! All `F_p` values are kept reduced to `{0, ..., p-1}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// The field `F_p` for a verified prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p as u64 - b % self.p as u64) % self.p as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p as u64 - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p as u64;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; `a` must be nonzero mod p.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p as u64 != 0);
        self.pow(a, self.p as u64 - 2)
    }

    /// `a^n` for a possibly negative exponent (for unit `a`).
    pub fn pow_i64(&self, a: u64, n: i64) -> u64 {
        if n >= 0 {
            self.pow(a, n as u64)
        } else {
            self.pow(self.inv(a), (-n) as u64)
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficient field of an algebra: `F_p` or the exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Fp(PrimeField),
    Q,
}

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        Ok(Field::Fp(PrimeField::new(p)?))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Fp(f) => f.p(),
            Field::Q => 0,
        }
    }

    pub fn as_prime(&self) -> Result<PrimeField> {
        match self {
            Field::Fp(f) => Ok(*f),
            Field::Q => Err(Error::RationalsNotSupported),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Fp(_) => Scalar::Fp(0),
            Field::Q => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Fp(_) => Scalar::Fp(1),
            Field::Q => Scalar::Q(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Fp(f) => Scalar::Fp(f.reduce(n)),
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Fp(f), Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(f.add(*a, *b)),
            (Field::Q, Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Fp(f), Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(f.mul(*a, *b)),
            (Field::Q, Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Fp(f), Scalar::Fp(a)) => Scalar::Fp(f.neg(*a)),
            (Field::Q, Scalar::Q(a)) => Scalar::Q(-a),
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Fp(f), Scalar::Fp(a)) => Scalar::Fp(f.inv(*a)),
            (Field::Q, Scalar::Q(a)) => Scalar::Q(a.recip()),
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        match self {
            Field::Fp(f) => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad F_p coefficient `{s}`")))?;
                Ok(Scalar::Fp(f.reduce(n)))
            }
            Field::Q => {
                let r: BigRational = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational coefficient `{s}`")))?;
                Ok(Scalar::Q(r))
            }
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.p())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp(pf) => write!(f, "F{}", pf.p()),
            Field::Q => write!(f, "Q"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(Field::Q);
        }
        let digits = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Parse(format!("bad field `{s}`")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad field `{s}`")))?;
        Field::prime(p)
    }
}

/// A scalar in some [`Field`]; the variant must match the field in use.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Fp(u64),
    Q(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(a) => *a == 0,
            Scalar::Q(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(a) => *a == 1,
            Scalar::Q(a) => a.is_one(),
        }
    }

    /// Canonical textual form, used for serialization ("2", "-3/4").
    pub fn to_coeff_string(&self) -> String {
        match self {
            Scalar::Fp(a) => a.to_string(),
            Scalar::Q(a) => {
                if a.denom().is_one() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_coeff_string())
    }
}
