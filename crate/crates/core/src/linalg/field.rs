use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// The coefficient field: the rationals or a prime field `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Field with the given characteristic; `0` means the rationals.
    pub fn from_char(c: u64) -> Self {
        if c == 0 {
            FieldSpec::Rational
        } else {
            FieldSpec::Prime(c)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A single field element, used at API boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    /// The element as a signed integer when it is one (residues are lifted to `(-p/2, p/2]`).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    i64::try_from(q.numer().clone()).ok()
                } else {
                    None
                }
            }
            Scalar::Mod { value, p } => {
                let v = *value as i64;
                let p = *p as i64;
                Some(if v > p / 2 { v - p } else { v })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Element arithmetic used by the generic elimination kernels.
pub(crate) trait Arith: Sync {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn embed(&self, v: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `a - f * b`, the elimination step.
    fn sub_mul(&self, a: &Self::E, f: &Self::E, b: &Self::E) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> Scalar;
}

pub(crate) struct QArith;

impl Arith for QArith {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn embed(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        if b.is_zero() || f.is_zero() {
            return a.clone();
        }
        // common case in these complexes: ±1 factors
        if f.is_integer() && f.numer().abs().is_one() {
            return if f.is_positive() { a - b } else { a + b };
        }
        a - f * b
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
}

pub(crate) struct ModArith(pub u64);

impl ModArith {
    fn reduce(&self, v: u128) -> u64 {
        (v % self.0 as u128) as u64
    }
}

impl Arith for ModArith {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn embed(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 + *b as u128)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 * *b as u128)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let p = self.0;
        let (mut base, mut exp, mut acc) = (*a % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        let fb = self.mul(f, b);
        self.add(a, &self.neg(&fb))
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Mod { value: *a, p: self.0 }
    }
}
