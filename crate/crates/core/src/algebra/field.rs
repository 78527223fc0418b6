use alloc::vec;
use alloc::vec::Vec;

use super::modular::{inv_mod, is_prime, mul_mod, order_dividing, pow_mod, prime_power};
use crate::{Error, Result};

/// The finite field `F_{p^e}`.
///
/// Elements are the integers `0..p^e`: the element `a_0 + a_1 p + ... +
/// a_{e-1} p^{e-1}` stands for the polynomial `a_0 + a_1 x + ... +
/// a_{e-1} x^{e-1}` reduced modulo a monic irreducible polynomial. For
/// `e = 1` this is plain arithmetic modulo `p`. Integer order on elements
/// coincides with lexicographic order on the coordinate vector
/// `[a_{e-1}, ..., a_0]`, so the additive group is `Z_p^e` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    degree: u32,
    order: u64,
    /// Low-to-high coefficients of the monic modulus, length `degree + 1`.
    modulus: Vec<u64>,
}

const MAX_ORDER: u64 = 1 << 32;

impl FiniteField {
    /// `F_q` with the first irreducible modulus in canonical scan order.
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::InvalidParameter("field order above 2^32"));
        }
        if e == 1 {
            return Ok(Self::prime_unchecked(p));
        }
        let e_us = e as usize;
        for tail in 0..q {
            let mut coeffs = digits(tail, p, e_us);
            coeffs.push(1);
            if is_irreducible(&coeffs, p) {
                return Ok(FiniteField { p, degree: e, order: q, modulus: coeffs });
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_ORDER {
            return Err(Error::InvalidParameter("field order above 2^32"));
        }
        Ok(Self::prime_unchecked(p))
    }

    fn prime_unchecked(p: u64) -> Self {
        FiniteField { p, degree: 1, order: p, modulus: vec![0, 1] }
    }

    /// `F_p[x] / (modulus)` for a caller-chosen monic modulus given low-to-high.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let Some((&1, _)) = modulus.split_last() else {
            return Err(Error::InvalidParameter("modulus must be monic"));
        };
        let e = modulus.len() as u32 - 1;
        if e == 0 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter("modulus coefficients out of range"));
        }
        let order = p.checked_pow(e).filter(|&q| q <= MAX_ORDER);
        let order = order.ok_or(Error::InvalidParameter("field order above 2^32"))?;
        if !is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus);
        }
        Ok(FiniteField { p, degree: e, order, modulus: modulus.to_vec() })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.order
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            return (a + b) % self.p;
        }
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.degree == 1 {
            return (self.p - a % self.p) % self.p;
        }
        self.digitwise(a, 0, |x, _| (self.p - x) % self.p)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            return mul_mod(a, b, self.p);
        }
        let e = self.degree as usize;
        let (x, y) = (digits(a, self.p, e), digits(b, self.p, e));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        poly_rem(&mut prod, &self.modulus, self.p);
        undigits(&prod[..e], self.p)
    }

    pub fn pow(&self, a: u64, mut exp: u64) -> u64 {
        if self.degree == 1 {
            return pow_mod(a, exp, self.p);
        }
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        match (a, self.degree) {
            (0, _) => None,
            (_, 1) => inv_mod(a, self.p),
            _ => Some(self.pow(a, self.order - 2)),
        }
    }

    /// Coordinates of `a` in the additive group `Z_p^e`, most significant first.
    pub fn coordinates(&self, a: u64) -> Vec<u64> {
        let mut d = digits(a, self.p, self.degree as usize);
        d.reverse();
        d
    }

    pub fn from_coordinates(&self, coords: &[u64]) -> u64 {
        coords.iter().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Multiplicative order, `None` for zero.
    pub fn multiplicative_order(&self, a: u64) -> Option<u64> {
        if a == 0 || a >= self.order {
            return None;
        }
        Some(order_dividing(self.order - 1, |t| self.pow(a, t) == 1))
    }

    /// Least non-zero element of multiplicative order exactly `k`.
    pub fn element_of_order(&self, k: u64) -> Option<u64> {
        if k == 0 || !(self.order - 1).is_multiple_of(k) {
            return None;
        }
        (1..self.order).find(|&a| self.multiplicative_order(a) == Some(k))
    }

    /// The subgroup of order `k` of the multiplicative group, sorted.
    pub fn kth_roots_of_unity(&self, k: u64) -> Result<Vec<u64>> {
        if k == 0 || !(self.order - 1).is_multiple_of(k) {
            return Err(Error::DoesNotDivide { divisor: k, value: self.order - 1 });
        }
        let g = self.element_of_order(k).expect("cyclic group has elements of every order dividing it");
        let mut roots = Vec::with_capacity(k as usize);
        let mut x = 1;
        for _ in 0..k {
            roots.push(x);
            x = self.mul(x, g);
        }
        roots.sort_unstable();
        Ok(roots)
    }

    fn digitwise(&self, a: u64, b: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.degree {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }
}

/// Base-`p` digits of `n`, least significant first, padded to `len`.
fn digits(mut n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Reduce `a` (low-to-high) modulo the monic `m` in place.
fn poly_rem(a: &mut [u64], m: &[u64], p: u64) {
    let dm = m.len() - 1;
    for top in (dm..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - dm + i;
            a[idx] = (a[idx] + (p - c) * mi % p) % p;
        }
    }
}

/// No monic factor of degree `1..=deg/2`, checked by trial division.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for tail in 0..p.pow(d as u32) {
            let mut g = digits(tail, p, d);
            g.push(1);
            let mut r = f.to_vec();
            poly_rem(&mut r, &g, p);
            if r[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
