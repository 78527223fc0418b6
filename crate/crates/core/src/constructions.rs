//! Named `(v, k, k-1)`-DDF constructions.
//!
//! Every function returns a family that has already passed the brute-force
//! census, disjointness and partition checks. Where a construction needs a
//! "primitive root" or "unit of order k", the least admissible candidate in
//! canonical order is taken, so outputs are reproducible.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::modular::{factorize, gcd, is_prime, pow_mod, prime_power, unit_order};
use crate::algebra::{pisano_data, CoordinateRing, FiniteField, Matrix2};
use crate::family::DiffFamily;
use crate::ferrero::{Automorphism, FerreroPair};
use crate::group::{Element, Group};
use crate::verify;
use crate::{Error, Result};

/// `(F_q, +)` laid out as `Z_p^e`, coordinates most significant first.
pub fn field_additive_group(field: &FiniteField) -> Group {
    Group::abelian(vec![field.characteristic(); field.degree() as usize]).expect("field order fits in 64 bits")
}

fn require_k(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter("block size k must be at least 2"));
    }
    Ok(())
}

fn empty_family(k: u64) -> Result<DiffFamily> {
    DiffFamily::new(Group::abelian(Vec::new())?, Vec::new(), k as usize, k - 1)
}

/// The multiplicative cosets of the `k`-th roots of unity in `F_q`.
pub fn roots_of_unity_ddf(field: &FiniteField, k: u64) -> Result<DiffFamily> {
    require_k(k)?;
    let roots = field.kth_roots_of_unity(k)?;
    let group = field_additive_group(field);
    let q = field.order();
    let mut seen = vec![false; q as usize];
    let mut blocks = Vec::new();
    for a in 1..q {
        if seen[a as usize] {
            continue;
        }
        let coset: Vec<Element> = roots
            .iter()
            .map(|&r| {
                let x = field.mul(a, r);
                seen[x as usize] = true;
                Element::new(field.coordinates(x))
            })
            .collect();
        blocks.push(coset);
    }
    DiffFamily::new(group, blocks, k as usize, k - 1)?.certify(true)
}

/// Ferrero DDF in `F_{q_1} x ... x F_{q_n}` from componentwise primitive
/// `k`-th roots of unity. Needs every `q_i = 1 (mod k)`.
pub fn ea_product_ddf(prime_powers: &[u64], k: u64) -> Result<DiffFamily> {
    require_k(k)?;
    if prime_powers.is_empty() {
        return empty_family(k);
    }
    let mut factors = Vec::with_capacity(prime_powers.len());
    let mut layout = Vec::new();
    for &q in prime_powers {
        let field = FiniteField::new(q)?;
        if q % k != 1 {
            return Err(Error::CongruenceViolation { modulus: q, k });
        }
        let u = field.element_of_order(k).expect("k divides q - 1");
        layout.extend(core::iter::repeat_n(field.characteristic(), field.degree() as usize));
        factors.push((field, u));
    }
    let group = Group::abelian(layout)?;
    FerreroPair::cyclic(group, &Automorphism::FieldMul(factors))?.ddf()
}

/// Least unit `u` of `Z_m` of order `k` with every `u^j - 1` (`0 < j < k`) a
/// unit.
fn semiregular_unit(m: u64, k: u64) -> Option<u64> {
    (2..m).find(|&u| {
        gcd(u, m) == 1
            && unit_order(m, u) == Ok(k)
            && (1..k).all(|j| gcd((pow_mod(u, j, m) + m - 1) % m, m) == 1)
    })
}

/// Ferrero DDF in `Z_{m_1} x ... x Z_{m_n}`; needs every prime factor of every
/// modulus to be `1 (mod k)`.
pub fn cyclic_abelian_ddf(moduli: &[u64], k: u64) -> Result<DiffFamily> {
    require_k(k)?;
    if moduli.is_empty() {
        return empty_family(k);
    }
    let group = Group::abelian(moduli.to_vec())?;
    let mut units = Vec::with_capacity(moduli.len());
    for &m in moduli {
        for (p, _) in factorize(m) {
            if p % k != 1 {
                return Err(Error::CongruenceViolation { modulus: p, k });
            }
        }
        units.push(semiregular_unit(m, k).expect("every prime factor is 1 mod k"));
    }
    FerreroPair::cyclic(group, &Automorphism::UnitMul(units))?.ddf()
}

/// Pisano `(p^4, k, k-1)`-DDF in `Z_{p^2} x Z_{p^2}` for a prime `p != 5` and
/// a divisor `k` of `pi(p)`.
///
/// For `p = 2` and `p = +-3 (mod 10)` the orbits of `<phi^{pi(p)/k}>` are
/// used. For `p = +-1 (mod 10)`, `pi(p)` divides `p - 1` and the family is the
/// unit-multiplication one from [`cyclic_abelian_ddf`]; powers of `phi` need
/// not be fixed-point-free there (for `p = 11`, `phi^5` has eigenvalue 1).
pub fn pisano_ddf(p: u64, k: u64) -> Result<DiffFamily> {
    let data = pisano_data(p)?;
    require_k(k)?;
    if data.pi_p % k != 0 {
        return Err(Error::DoesNotDivide { divisor: k, value: data.pi_p });
    }
    if p % 10 == 1 || p % 10 == 9 {
        return cyclic_abelian_ddf(&[p * p, p * p], k);
    }
    let group = Group::abelian(vec![p * p, p * p])?;
    let generator = Automorphism::Matrix(data.phi.pow(data.pi_p / k));
    FerreroPair::cyclic(group, &generator)?.ddf()
}

/// `(q^4, 3, 2)`-DDF in `Z_{q^2} x Z_{q^2}` from `(x, y) -> (y - x, -x)`.
pub fn q4_order3_ddf(q: u64) -> Result<DiffFamily> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q.is_multiple_of(3) {
        return Err(Error::DivisibleByThree);
    }
    let m = q.checked_mul(q).ok_or(Error::InvalidParameter("q^2 overflows"))?;
    let group = Group::abelian(vec![m, m])?;
    let alpha = Automorphism::Matrix(Matrix2::new(m - 1, 1, m - 1, 0, m));
    FerreroPair::cyclic(group, &alpha)?.ddf()
}

/// The coordinate ring `F_q` used for Heisenberg families: `Z_q` when `q` is
/// prime, the canonical `F_q` otherwise.
pub fn heisenberg_ring(q: u64) -> Result<CoordinateRing> {
    if is_prime(q) {
        return Ok(CoordinateRing::Integers(q));
    }
    Ok(CoordinateRing::Field(FiniteField::new(q)?))
}

/// Non-abelian Ferrero `(q^3, |U|, |U|-1)`-DDF in the Heisenberg-twisted
/// product over `F_q`, from `U` acting by `(x, y, z) -> (ux, uy, u^2 z)`.
///
/// `U` must be a multiplicative subgroup with `u^2 - 1` a unit for every
/// `u != 1`; that forces `|U|` odd.
pub fn heisenberg_ddf(q: u64, units: &[u64]) -> Result<DiffFamily> {
    let ring = heisenberg_ring(q)?;
    let mut u: Vec<u64> = units.to_vec();
    u.sort_unstable();
    u.dedup();
    if u.first() != Some(&1) && !u.contains(&1) {
        return Err(Error::InvalidParameter("U must contain 1"));
    }
    for &a in &u {
        if a >= q || !ring.is_unit(a) {
            return Err(Error::NotAUnit { value: a, modulus: q });
        }
        for &b in &u {
            if u.binary_search(&ring.mul(a, b)).is_err() {
                return Err(Error::InvalidParameter("U is not closed under multiplication"));
            }
        }
    }
    if u.len().is_multiple_of(2) {
        return Err(Error::EvenOrderU);
    }
    for &a in u.iter().filter(|&&a| a != 1) {
        if !ring.is_unit(ring.sub(ring.mul(a, a), 1)) {
            return Err(Error::NotUnitCondition(a));
        }
    }
    let group = Group::heisenberg_over(ring)?;
    let auts = u.into_iter().map(Automorphism::HeisenbergUnit).collect();
    FerreroPair::new(group, auts)?.ddf()
}

/// [`heisenberg_ddf`] with `U` the `k`-th roots of unity of `F_q`.
pub fn heisenberg_ddf_for_k(q: u64, k: u64) -> Result<DiffFamily> {
    require_k(k)?;
    if k.is_multiple_of(2) {
        return Err(Error::EvenOrderU);
    }
    let field = FiniteField::new(q)?;
    heisenberg_ddf(q, &field.kth_roots_of_unity(k)?)
}

/// The `(v, 2, 1)`-DDF of all pairs `{g, -g}` in an abelian group of odd order.
pub fn patterned_starter(group: &Group) -> Result<DiffFamily> {
    if !group.is_abelian() {
        return Err(Error::RequiresAbelian);
    }
    if group.order().is_multiple_of(2) {
        return Err(Error::EvenOrder);
    }
    let blocks: Vec<Vec<Element>> = group
        .enumerate()?
        .into_iter()
        .skip(1)
        .filter_map(|x| {
            let y = group.neg_unchecked(&x);
            (x < y).then(|| vec![x, y])
        })
        .collect();
    DiffFamily::new(group.clone(), blocks, 2, 1)?.certify(true)
}

/// A DDF together with the singleton `{0}`, so that the blocks partition `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletedPdf {
    pub family: DiffFamily,
    pub zero_block: Vec<Element>,
}

impl CompletedPdf {
    /// The family's blocks followed by `{0}`.
    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let mut out = self.family.blocks().to_vec();
        out.push(self.zero_block.clone());
        out
    }
}

pub fn complete_to_pdf(ddf: &DiffFamily) -> Result<CompletedPdf> {
    if !verify::is_partition_of_nonzero(ddf.group(), ddf.blocks()) {
        return Err(Error::NotSpanning);
    }
    Ok(CompletedPdf { family: ddf.clone(), zero_block: vec![ddf.group().zero()] })
}
