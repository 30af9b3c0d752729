//! Exact scalar arithmetic: rationals and cyclotomic fields.

mod cyclotomic;
mod rational;

pub use cyclotomic::{
    cyclotomic_polynomial, cyclotomic_polynomial_with_limit, euler_phi, Cyclotomic, CyclotomicField,
    DEFAULT_CONDUCTOR_LIMIT,
};
pub use rational::Rational;

/// A field with exact arithmetic, as required by the linear algebra layer.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Rough storage size; elimination prefers the smallest pivot.
    fn bit_size(&self) -> u64;
    fn from_i64(n: i64) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Rational::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::mul(self, other)
    }
    fn neg(&self) -> Self {
        Rational::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        Rational::inv(self)
    }
    fn bit_size(&self) -> u64 {
        Rational::bit_size(self)
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Field for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Cyclotomic::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Cyclotomic::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Cyclotomic::mul(self, other)
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        Cyclotomic::inv(self)
    }
    fn bit_size(&self) -> u64 {
        Cyclotomic::bit_size(self)
    }
    fn from_i64(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
}
