//! Finite groups in the concrete representations the constructions need.
//!
//! All groups are written additively, even when non-abelian. The difference
//! of an ordered pair `(x, y)` is always `x + (-y)`.
//!
//! Elements are coordinate vectors. Comparing them lexicographically is the
//! canonical order used everywhere, and it coincides with the mixed-radix
//! index returned by [`Group::index_of`], so zero is always index 0.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::algebra::{CoordinateRing, FiniteField};
use crate::{Error, Result};

pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

static ENUMERATION_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_ENUMERATION_BOUND);

/// Largest group order any brute-force routine will enumerate.
pub fn enumeration_bound() -> u64 {
    ENUMERATION_BOUND.load(Ordering::Relaxed)
}

pub fn set_enumeration_bound(bound: u64) {
    ENUMERATION_BOUND.store(bound, Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(Vec<u64>);

impl Element {
    pub fn new(coords: Vec<u64>) -> Self {
        Element(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }
}

impl From<Vec<u64>> for Element {
    fn from(v: Vec<u64>) -> Self {
        Element(v)
    }
}

impl<const N: usize> From<[u64; N]> for Element {
    fn from(v: [u64; N]) -> Self {
        Element(v.to_vec())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [x] = self.0.as_slice() {
            return write!(f, "{x}");
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `Z_{m_1} x ... x Z_{m_n}`; the empty product is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianProduct {
    moduli: Vec<u64>,
    order: u64,
}

impl AbelianProduct {
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }
}

/// `V^3` under `(x1,y1,z1) + (x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisenbergGroup {
    ring: CoordinateRing,
    order: u64,
}

impl HeisenbergGroup {
    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }
}

/// A group given by its full operation table, identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl CayleyGroup {
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn table_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Group {
    Abelian(AbelianProduct),
    Heisenberg(HeisenbergGroup),
    Cayley(CayleyGroup),
}

impl Group {
    pub fn abelian(moduli: Vec<u64>) -> Result<Self> {
        if moduli.iter().any(|&m| m < 2) {
            return Err(Error::InvalidGroup("moduli must be at least 2"));
        }
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or(Error::InvalidGroup("group order overflows 64 bits"))?;
        Ok(Group::Abelian(AbelianProduct { moduli, order }))
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::abelian(vec![n])
    }

    /// Heisenberg-twisted product over `Z_m`.
    pub fn heisenberg(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidGroup("ring modulus must be at least 2"));
        }
        Self::heisenberg_over(CoordinateRing::Integers(m))
    }

    /// Heisenberg-twisted product over `F_q`.
    pub fn heisenberg_over_field(field: FiniteField) -> Result<Self> {
        Self::heisenberg_over(CoordinateRing::Field(field))
    }

    pub fn heisenberg_over(ring: CoordinateRing) -> Result<Self> {
        let m = ring.size();
        let order = m
            .checked_mul(m)
            .and_then(|x| x.checked_mul(m))
            .ok_or(Error::InvalidGroup("group order overflows 64 bits"))?;
        Ok(Group::Heisenberg(HeisenbergGroup { ring, order }))
    }

    /// Validates that `table` is a group table with two-sided identity 0:
    /// every row and column a permutation, and full associativity (cubic in
    /// the order).
    pub fn cayley(table: Vec<Vec<u32>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > u32::MAX as usize {
            return Err(Error::InvalidGroup("table must be non-empty"));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup("table must be square"));
        }
        let mut seen = vec![false; n];
        for row in &table {
            seen.iter_mut().for_each(|s| *s = false);
            for &x in row {
                let x = x as usize;
                if x >= n || seen[x] {
                    return Err(Error::InvalidGroup("row is not a permutation"));
                }
                seen[x] = true;
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for row in &table {
                let x = row[c] as usize;
                if seen[x] {
                    return Err(Error::InvalidGroup("column is not a permutation"));
                }
                seen[x] = true;
            }
        }
        for i in 0..n {
            if table[0][i] as usize != i || table[i][0] as usize != i {
                return Err(Error::InvalidGroup("index 0 is not a two-sided identity"));
            }
        }
        let flat: Vec<u32> = table.into_iter().flatten().collect();
        let op = |a: usize, b: usize| flat[a * n + b] as usize;
        for a in 0..n {
            for b in 0..n {
                let ab = op(a, b);
                for c in 0..n {
                    if op(ab, c) != op(a, op(b, c)) {
                        return Err(Error::InvalidGroup("operation is not associative"));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| op(a, b) == 0).expect("rows are permutations") as u32)
            .collect();
        Ok(Group::Cayley(CayleyGroup { n, table: flat, inverses }))
    }

    pub fn order(&self) -> u64 {
        match self {
            Group::Abelian(g) => g.order,
            Group::Heisenberg(g) => g.order,
            Group::Cayley(g) => g.n as u64,
        }
    }

    /// Exclusive upper bound of each coordinate.
    pub fn coordinate_bounds(&self) -> Vec<u64> {
        match self {
            Group::Abelian(g) => g.moduli.clone(),
            Group::Heisenberg(g) => vec![g.ring.size(); 3],
            Group::Cayley(g) => vec![g.n as u64],
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Group::Abelian(g) => g.moduli.len(),
            Group::Heisenberg(_) => 3,
            Group::Cayley(_) => 1,
        }
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.arity()])
    }

    pub fn contains(&self, a: &Element) -> bool {
        let bounds = self.coordinate_bounds();
        a.0.len() == bounds.len() && a.0.iter().zip(&bounds).all(|(x, m)| x < m)
    }

    pub fn check(&self, a: &Element) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::InvalidElement)
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    /// `a - b`, meaning `a + (-b)`.
    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &Element, b: &Element) -> Element {
        match self {
            Group::Abelian(g) => Element(
                g.moduli
                    .iter()
                    .zip(a.0.iter().zip(&b.0))
                    .map(|(&m, (&x, &y))| ((x as u128 + y as u128) % m as u128) as u64)
                    .collect(),
            ),
            Group::Heisenberg(g) => {
                let r = &g.ring;
                let (a, b) = (&a.0, &b.0);
                Element(vec![
                    r.add(a[0], b[0]),
                    r.add(a[1], b[1]),
                    r.add(r.add(a[2], b[2]), r.mul(a[0], b[1])),
                ])
            }
            Group::Cayley(g) => Element(vec![g.op(a.0[0] as usize, b.0[0] as usize) as u64]),
        }
    }

    pub(crate) fn neg_unchecked(&self, a: &Element) -> Element {
        match self {
            Group::Abelian(g) => {
                Element(g.moduli.iter().zip(&a.0).map(|(&m, &x)| (m - x) % m).collect())
            }
            Group::Heisenberg(g) => {
                let r = &g.ring;
                let [x, y, z] = [a.0[0], a.0[1], a.0[2]];
                Element(vec![r.neg(x), r.neg(y), r.add(r.neg(z), r.mul(x, y))])
            }
            Group::Cayley(g) => Element(vec![g.inverses[a.0[0] as usize] as u64]),
        }
    }

    pub(crate) fn sub_unchecked(&self, a: &Element, b: &Element) -> Element {
        self.add_unchecked(a, &self.neg_unchecked(b))
    }

    /// `t * a`, i.e. `a` added to itself `t` times (zero for `t = 0`).
    pub fn multiple(&self, a: &Element, t: u64) -> Result<Element> {
        self.check(a)?;
        Ok(self.multiple_unchecked(a, t))
    }

    pub(crate) fn multiple_unchecked(&self, a: &Element, mut t: u64) -> Element {
        // powers of a single element commute, so doubling is exact
        let mut acc = self.zero();
        let mut base = a.clone();
        while t > 0 {
            if t & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            t >>= 1;
        }
        acc
    }

    /// Least `t >= 1` with `t * a = 0`.
    pub fn element_order(&self, a: &Element) -> Result<u64> {
        self.check(a)?;
        let zero = self.zero();
        let mut x = a.clone();
        let mut t = 1;
        while x != zero {
            x = self.add_unchecked(&x, a);
            t += 1;
        }
        Ok(t)
    }

    /// Mixed-radix index of a valid element; agrees with the canonical order.
    pub fn index_of(&self, a: &Element) -> usize {
        let bounds = self.coordinate_bounds();
        a.0.iter().zip(&bounds).fold(0u64, |acc, (&x, &m)| acc * m + x) as usize
    }

    pub fn element_at(&self, mut index: usize) -> Element {
        let bounds = self.coordinate_bounds();
        let mut coords = vec![0; bounds.len()];
        for (c, &m) in coords.iter_mut().zip(&bounds).rev() {
            *c = index as u64 % m;
            index /= m as usize;
        }
        Element(coords)
    }

    /// Order as `usize`, or `TooLarge` past the enumeration bound.
    pub fn enumerable_order(&self) -> Result<usize> {
        let bound = enumeration_bound();
        if self.order() > bound {
            return Err(Error::TooLarge { order: self.order(), bound });
        }
        Ok(self.order() as usize)
    }

    /// All elements in canonical order, zero first.
    pub fn enumerate(&self) -> Result<Vec<Element>> {
        let n = self.enumerable_order()?;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    /// Greedy generating set: scan in canonical order, keep each element not
    /// yet generated by the earlier ones.
    pub fn generating_set(&self) -> Result<Vec<Element>> {
        let all = self.enumerate()?;
        self.greedy_generators(&all)
    }

    pub(crate) fn greedy_generators(&self, elements: &[Element]) -> Result<Vec<Element>> {
        let n = self.enumerable_order()?;
        let mut gens: Vec<Element> = Vec::new();
        let mut member = vec![false; n];
        member[0] = true;
        for x in elements {
            if member[self.index_of(x)] {
                continue;
            }
            gens.push(x.clone());
            member = self.closure_mask(&gens);
        }
        Ok(gens)
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub(crate) fn closure_mask(&self, gens: &[Element]) -> Vec<bool> {
        let n = self.order() as usize;
        let mut member = vec![false; n];
        member[0] = true;
        let mut queue = VecDeque::from([self.zero()]);
        while let Some(x) = queue.pop_front() {
            for s in gens {
                let y = self.add_unchecked(&x, s);
                let i = self.index_of(&y);
                if !member[i] {
                    member[i] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            Group::Abelian(_) => true,
            Group::Heisenberg(_) => false,
            Group::Cayley(g) => (0..g.n).all(|a| (0..a).all(|b| g.op(a, b) == g.op(b, a))),
        }
    }

    /// Two generators that do not commute, if the group is non-abelian.
    pub fn non_commuting_pair(&self) -> Result<Option<(Element, Element)>> {
        let gens = self.generating_set()?;
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[..i] {
                if self.add_unchecked(a, b) != self.add_unchecked(b, a) {
                    return Ok(Some((b.clone(), a.clone())));
                }
            }
        }
        Ok(None)
    }

    /// `g + n - g` lies in `N` for every `g` and `n in N`. Conjugation by a
    /// generating set of `G` is enough.
    pub fn is_normal_subgroup(&self, sub: &Subgroup) -> Result<bool> {
        let gens = self.generating_set()?;
        Ok(self.normalized_by(sub, &gens))
    }

    pub(crate) fn normalized_by(&self, sub: &Subgroup, conjugators: &[Element]) -> bool {
        conjugators.iter().all(|g| {
            let minus_g = self.neg_unchecked(g);
            sub.elements.iter().all(|n| {
                let c = self.add_unchecked(&self.add_unchecked(g, n), &minus_g);
                sub.contains(&c)
            })
        })
    }
}

/// A subgroup, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<Element>,
}

impl Subgroup {
    /// Checks closure and membership, then stores `elements` sorted.
    pub fn new(group: &Group, mut elements: Vec<Element>) -> Result<Self> {
        for e in &elements {
            group.check(e)?;
        }
        elements.sort_unstable();
        elements.dedup();
        let gens = group.greedy_generators(&elements)?;
        let mask = group.closure_mask(&gens);
        let generated = mask.iter().filter(|&&m| m).count();
        if generated != elements.len() || elements.iter().any(|e| !mask[group.index_of(e)]) {
            return Err(Error::NotSubgroup);
        }
        Ok(Subgroup { elements })
    }

    pub fn generated_by(group: &Group, gens: &[Element]) -> Result<Self> {
        for e in gens {
            group.check(e)?;
        }
        group.enumerable_order()?;
        let mask = group.closure_mask(gens);
        let elements = mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| group.element_at(i))
            .collect();
        Ok(Subgroup { elements })
    }

    pub fn trivial(group: &Group) -> Self {
        Subgroup { elements: vec![group.zero()] }
    }

    pub fn whole(group: &Group) -> Result<Self> {
        Ok(Subgroup { elements: group.enumerate()? })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, a: &Element) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }
}
