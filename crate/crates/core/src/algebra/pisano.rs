use super::matrix::Matrix2;
use super::modular::is_prime;
use crate::{Error, Result};

const MAX_PISANO_MODULUS: u64 = 1_000_000_000;
const MAX_PISANO_PRIME: u64 = 10_000;

/// Period of the Fibonacci sequence modulo `n`, by iterating the pair
/// recurrence until `(F_t, F_{t+1}) = (0, 1)` recurs.
pub fn pisano_period(n: u64) -> Result<u64> {
    if !(2..=MAX_PISANO_MODULUS).contains(&n) {
        return Err(Error::InvalidParameter("Pisano modulus must lie in 2..=10^9"));
    }
    let (mut a, mut b) = (0u64, 1u64);
    let mut t = 0u64;
    loop {
        (a, b) = (b, (a + b) % n);
        t += 1;
        if a == 0 && b == 1 {
            return Ok(t);
        }
    }
}

/// The Fibonacci-matrix data behind the Pisano families over `Z_{p^2} x Z_{p^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PisanoData {
    pub p: u64,
    /// `pi(p)`
    pub pi_p: u64,
    /// `pi(p^2)`
    pub pi_p2: u64,
    /// Generator of the order-`pi(p)` subgroup of `<F>` modulo `p^2`.
    pub phi: Matrix2,
}

/// Computes `pi(p)` and `pi(p^2)` and the generator `phi`.
///
/// `pi(p^2)` is computed as the exact order of `F` modulo `p^2`: it is a
/// multiple of `pi(p)`, so it equals `pi(p) * s` with `s` the order of
/// `F^{pi(p)}` modulo `p^2`, found by iteration. Nothing assumes
/// `pi(p^2) = p * pi(p)`.
pub fn pisano_data(p: u64) -> Result<PisanoData> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 5 {
        return Err(Error::FiveExcluded);
    }
    if p > MAX_PISANO_PRIME {
        return Err(Error::InvalidParameter("Pisano prime must not exceed 10^4"));
    }
    let pi_p = pisano_period(p)?;
    let m = p * p;
    let f = Matrix2::fibonacci(m);
    let g = f.pow(pi_p);
    let mut s = 1u64;
    let mut acc = g;
    while !acc.is_identity() {
        acc = acc.mul(&g);
        s += 1;
    }
    let pi_p2 = pi_p * s;
    let phi = if pi_p2 == pi_p { f } else { f.pow(p) };
    Ok(PisanoData { p, pi_p, pi_p2, phi })
}
