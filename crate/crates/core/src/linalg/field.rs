//! Coefficient fields and their element arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field: the rationals or a prime field GF(p) with p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Rationals,
    Prime(Prime),
}

/// A prime below 2^31, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        Prime::new(p).map(FieldSpec::Prime)
    }

    pub fn gf2() -> Self {
        FieldSpec::Prime(Prime(2))
    }

    pub fn gf3() -> Self {
        FieldSpec::Prime(Prime(3))
    }

    /// Zero for the rationals, otherwise p.
    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p.get(),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue(v.rem_euclid(p.get() as i64) as u32),
        }
    }

    /// Maps an exact rational into this field. Fails for a denominator
    /// divisible by the characteristic.
    pub fn from_rational(self, q: &BigRational) -> Option<Scalar> {
        match self {
            FieldSpec::Rationals => Some(Scalar::Rational(q.clone())),
            FieldSpec::Prime(p) => {
                let p = p.get() as u64;
                let reduce = |x: &BigInt| -> u64 {
                    let m = BigInt::from(p);
                    ((x % &m + &m) % &m).to_u64().unwrap()
                };
                let num = reduce(q.numer());
                let den = reduce(q.denom());
                (den != 0).then(|| Scalar::Residue(mul_mod(num, inv_mod(den, p), p) as u32))
            }
        }
    }

    /// Whether `s` belongs to this field.
    pub fn contains(self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::Prime(p), Scalar::Residue(r)) => *r < p.get(),
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "GF({})", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q`, `Q`, `rationals`, `gf2`, `GF(3)`, `gf7`, ...
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" || lower == "rationals" || lower == "qq" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = lower
            .strip_prefix("gf")
            .map(|rest| rest.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| Error::UnknownField(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| Error::UnknownField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> Self {
        f.to_string()
    }
}

/// Exact field element. Rationals are kept in lowest terms, residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u32),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }

    /// The value as a rational, with residues lifted to `[0, p)`.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Residue(r) => BigRational::from_integer(BigInt::from(*r)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p < 2^31 keeps every product inside u64
    let mut result = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

/// Element arithmetic used by the elimination routines.
pub(crate) trait FieldOps {
    type E: Clone + PartialEq + fmt::Debug;

    fn spec(&self) -> FieldSpec;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, e: Self::E) -> Scalar;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn is_unit_like(&self, e: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

pub(crate) struct RationalOps;

impl FieldOps for RationalOps {
    type E = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        s.to_rational()
    }
    fn lower(&self, e: BigRational) -> Scalar {
        Scalar::Rational(e)
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, e: &BigRational) -> bool {
        e.is_zero()
    }
    fn is_unit_like(&self, e: &BigRational) -> bool {
        e.abs().is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

pub(crate) struct PrimeOps {
    pub p: u64,
}

impl FieldOps for PrimeOps {
    type E = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(Prime(self.p as u32))
    }
    fn lift(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Residue(r) => *r as u64 % self.p,
            Scalar::Rational(_) => panic!("rational entry in a GF({}) matrix", self.p),
        }
    }
    fn lower(&self, e: u64) -> Scalar {
        Scalar::Residue(e as u32)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }
    fn is_unit_like(&self, e: &u64) -> bool {
        *e == 1 || *e == self.p - 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("GF(3)".parse::<FieldSpec>().unwrap(), FieldSpec::gf3());
        assert_eq!("gf2".parse::<FieldSpec>().unwrap(), FieldSpec::gf2());
        assert_eq!("gf4".parse::<FieldSpec>(), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::prime(2147483647).unwrap().characteristic(), 2147483647);
        assert!(FieldSpec::prime(1 << 31).is_err());
        assert!("real".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn residues() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.from_i64(-1), Scalar::Residue(6));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half), Some(Scalar::Residue(4)));
        assert_eq!(FieldSpec::gf2().from_rational(&half), None);
        assert_eq!(inv_mod(3, 7), 5);
    }

    #[test]
    fn serde_as_string() {
        let f: FieldSpec = "gf(5)".parse().unwrap();
        assert_eq!(String::from(f), "GF(5)");
        assert_eq!(FieldSpec::try_from("GF(5)".to_string()).unwrap(), f);
    }
}
