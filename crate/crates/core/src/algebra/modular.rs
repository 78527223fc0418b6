//! Integer and modular arithmetic on `u64` values.

use alloc::vec::Vec;

use crate::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Maximal prime-power factors of `n`, e.g. `45 -> [9, 5]`.
pub fn prime_power_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, e)| p.pow(e)).collect()
}

/// `Some((p, e))` when `n = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Multiplicative order of `u` modulo `q`.
pub fn unit_order(q: u64, u: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::InvalidParameter("modulus must be at least 2"));
    }
    let u = u % q;
    if gcd(u, q) != 1 {
        return Err(Error::NotAUnit { value: u, modulus: q });
    }
    Ok(order_dividing(euler_phi(q), |e| pow_mod(u, e, q) == 1))
}

/// Least `t` with `is_one(t)`, given that `is_one(n)` holds: strip prime
/// factors from `n` while the predicate keeps holding.
pub(crate) fn order_dividing(n: u64, is_one: impl Fn(u64) -> bool) -> u64 {
    let mut t = n;
    for (p, _) in factorize(n) {
        while t.is_multiple_of(p) && is_one(t / p) {
            t /= p;
        }
    }
    t
}

/// Least residue of `Z_q` with multiplicative order exactly `k`.
pub fn element_of_multiplicative_order(q: u64, k: u64) -> Option<u64> {
    if q < 2 || k == 0 || !euler_phi(q).is_multiple_of(k) {
        return None;
    }
    (1..q).find(|&u| gcd(u, q) == 1 && unit_order(q, u) == Ok(k))
}
