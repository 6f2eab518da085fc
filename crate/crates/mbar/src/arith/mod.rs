//! Exact arithmetic tower: big rationals, monogenic number rings
//! `Z[x]/(mu)`, their fraction fields, univariate polynomials, and
//! second-order jets.

mod jet;
mod nf;
mod poly;
mod ring;

pub use jet::{Expr, Jet2};
pub use nf::NfElem;
pub use poly::Poly;
pub use ring::{NumberRing, ReductionMap, RingElem};

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("minimal polynomial must be monic of degree >= 1")]
    BadMinPoly,
    #[error("element has {got} coefficients, ring has degree {want}")]
    BadCoeffLen { got: usize, want: usize },
    #[error("ring mismatch between operands")]
    RingMismatch,
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("mu({root}) is not 0 mod {p}")]
    BadReductionRoot { p: u64, root: i64 },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("division by zero in `{0}`")]
    DivisionByZero(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

/// Element of a field with enough structure for the generic polynomial,
/// matrix and jet code: exact, with context-carrying zero/one.
pub trait FieldElem:
    Clone
    + PartialEq
    + std::fmt::Debug
    + std::fmt::Display
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, ArithError>;
    fn from_rat_like(&self, q: &Rat) -> Self;

    fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.clone() * other.inv()?)
    }
}

impl FieldElem for Rat {
    fn zero_like(&self) -> Self {
        Rat::from_integer(BigInt::from(0))
    }
    fn one_like(&self) -> Self {
        Rat::from_integer(BigInt::from(1))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if FieldElem::is_zero(self) {
            return Err(ArithError::NotInvertible("0".into()));
        }
        Ok(self.recip())
    }
    fn from_rat_like(&self, q: &Rat) -> Self {
        q.clone()
    }
}
