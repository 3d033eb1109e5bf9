//! Exact rationals over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{CoefficientRing, PrimeField};

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        ExactRational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(v: i64) -> Self {
        ExactRational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ExactRational(self.0.recip()))
        }
    }

    /// True iff `p` does not divide the denominator, i.e. the value lies in Z_(p).
    pub fn is_p_local(&self, p: u32) -> bool {
        !self.0.denom().is_multiple_of(&BigInt::from(p))
    }

    /// Image in Z/p of a p-local rational; `None` if the denominator is divisible by p.
    pub fn reduce_mod(&self, field: PrimeField) -> Option<u32> {
        let p = BigInt::from(field.p());
        let den = self.0.denom().mod_floor(&p).to_u32()?;
        let den_inv = field.inv(den)?;
        let num = self.0.numer().mod_floor(&p).to_u32()?;
        Some(field.mul(num, den_inv))
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

/// `true` iff `p` does not divide the denominator of `q`.
pub fn p_local_check(q: &ExactRational, p: u32) -> bool {
    q.is_p_local(p)
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

/// The field Q, as a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl CoefficientRing for Rationals {
    type Elem = ExactRational;

    fn zero(&self) -> ExactRational {
        ExactRational::zero()
    }
    fn one(&self) -> ExactRational {
        ExactRational::one()
    }
    fn from_i64(&self, v: i64) -> ExactRational {
        ExactRational::from_integer(v)
    }
    fn add(&self, a: &ExactRational, b: &ExactRational) -> ExactRational {
        a + b
    }
    fn mul(&self, a: &ExactRational, b: &ExactRational) -> ExactRational {
        a * b
    }
    fn neg(&self, a: &ExactRational) -> ExactRational {
        -a.clone()
    }
    fn is_zero(&self, a: &ExactRational) -> bool {
        a.is_zero()
    }
}
