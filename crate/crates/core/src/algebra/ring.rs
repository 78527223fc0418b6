use super::field::FiniteField;
use super::modular::{gcd, mul_mod};

/// A finite commutative ring whose elements are the integers `0..size`.
///
/// Used as the coordinate ring of the Heisenberg-twisted product `V^3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoordinateRing {
    /// `Z_m`.
    Integers(u64),
    /// `F_q` with its canonical modulus.
    Field(FiniteField),
}

impl CoordinateRing {
    pub fn size(&self) -> u64 {
        match self {
            CoordinateRing::Integers(m) => *m,
            CoordinateRing::Field(f) => f.order(),
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            CoordinateRing::Integers(m) => ((a as u128 + b as u128) % *m as u128) as u64,
            CoordinateRing::Field(f) => f.add(a, b),
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match self {
            CoordinateRing::Integers(m) => (m - a % m) % m,
            CoordinateRing::Field(f) => f.neg(a),
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            CoordinateRing::Integers(m) => mul_mod(a, b, *m),
            CoordinateRing::Field(f) => f.mul(a, b),
        }
    }

    pub fn is_unit(&self, a: u64) -> bool {
        match self {
            CoordinateRing::Integers(m) => gcd(a % m, *m) == 1,
            CoordinateRing::Field(f) => a != 0 && a < f.order(),
        }
    }
}
