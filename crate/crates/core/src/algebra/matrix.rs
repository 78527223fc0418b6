use core::fmt;

use super::modular::{gcd, mul_mod};

/// A 2x2 matrix over `Z_m`, acting on `Z_m x Z_m` by `(x, y) -> (ax + by, cx + dy)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    entries: [u64; 4],
    modulus: u64,
}

impl Matrix2 {
    /// Entries are reduced modulo `m`.
    pub fn new(a: u64, b: u64, c: u64, d: u64, m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        Matrix2 { entries: [a % m, b % m, c % m, d % m], modulus: m }
    }

    pub fn identity(m: u64) -> Self {
        Self::new(1, 0, 0, 1, m)
    }

    /// The Fibonacci matrix `[[1, 1], [1, 0]]`.
    pub fn fibonacci(m: u64) -> Self {
        Self::new(1, 1, 1, 0, m)
    }

    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    pub fn rows(&self) -> [[u64; 2]; 2] {
        let [a, b, c, d] = self.entries;
        [[a, b], [c, d]]
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let m = self.modulus;
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = rhs.entries;
        let dot = |x: u64, y: u64, z: u64, w: u64| (mul_mod(x, y, m) + mul_mod(z, w, m)) % m;
        Matrix2 { entries: [dot(a, e, b, g), dot(a, f, b, h), dot(c, e, d, g), dot(c, f, d, h)], modulus: m }
    }

    /// `self^t` by square-and-multiply.
    pub fn pow(&self, mut t: u64) -> Matrix2 {
        let mut base = *self;
        let mut acc = Matrix2::identity(self.modulus);
        while t > 0 {
            if t & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            t >>= 1;
        }
        acc
    }

    pub fn determinant(&self) -> u64 {
        let m = self.modulus;
        let [a, b, c, d] = self.entries;
        (mul_mod(a, d, m) + m - mul_mod(b, c, m)) % m
    }

    pub fn is_invertible(&self) -> bool {
        gcd(self.determinant(), self.modulus) == 1
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix2::identity(self.modulus)
    }

    pub fn apply(&self, x: u64, y: u64) -> (u64, u64) {
        let m = self.modulus;
        let [a, b, c, d] = self.entries;
        (
            (mul_mod(a, x, m) + mul_mod(b, y, m)) % m,
            (mul_mod(c, x, m) + mul_mod(d, y, m)) % m,
        )
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]] mod {}", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_powers_mod_9() {
        let f = Matrix2::fibonacci(9);
        assert_eq!(f.pow(3).rows(), [[3, 2], [2, 1]]);
        assert_eq!(f.pow(12).rows(), [[8, 0], [0, 8]]);
        assert!(f.pow(0).is_identity());
        assert!(Matrix2::new(7, 3, 2, 5, 11).pow(0).is_identity());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let m = Matrix2::new(4, 7, 1, 9, 25);
        let mut acc = Matrix2::identity(25);
        for t in 0..60 {
            assert_eq!(m.pow(t), acc);
            acc = acc.mul(&m);
        }
    }
}
