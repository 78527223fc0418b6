//! Ferrero pairs `(G, A)`: a group together with a fixed-point-free group of
//! automorphisms. The `A`-orbits on `G \ {0}` form a `(v, k, k-1)`-DDF with
//! `v = |G|` and `k = |A|`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::modular::{gcd, mul_mod, prime_power_factors};
use crate::algebra::{FiniteField, Matrix2};
use crate::family::DiffFamily;
use crate::group::{Element, Group};
use crate::verify;
use crate::{Error, Result};

/// Cyclic automorphism groups are generated up to this order.
pub const MAX_AUTOMORPHISM_ORDER: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Automorphism {
    /// `(x_1, ..., x_n) -> (u_1 x_1, ..., u_n x_n)` on `Z_{m_1} x ... x Z_{m_n}`.
    UnitMul(Vec<u64>),
    /// Multiplication by `u_i` on each factor of `F_{q_1} x ... x F_{q_n}`,
    /// whose additive group is laid out as consecutive `Z_p^e` coordinate runs.
    FieldMul(Vec<(FiniteField, u64)>),
    /// `(x, y) -> (ax + by, cx + dy)` on `Z_m x Z_m`.
    Matrix(Matrix2),
    /// `(x, y, z) -> (ux, uy, u^2 z)` on a Heisenberg-twisted product.
    HeisenbergUnit(u64),
    /// Image of each element, by canonical index.
    Explicit(Vec<u32>),
}

impl Automorphism {
    /// Checks that the map is a well-formed automorphism of `group`.
    ///
    /// The structured variants are homomorphisms by construction, so only
    /// bijectivity is checked. An explicit table is checked to be a
    /// permutation with `a(x + s) = a(x) + a(s)` for every element `x` and
    /// every `s` of a generating set, which is equivalent to the full
    /// homomorphism property.
    pub fn validate(&self, group: &Group) -> Result<()> {
        match (self, group) {
            (Automorphism::UnitMul(units), Group::Abelian(g)) => {
                if units.len() != g.moduli().len() {
                    return Err(Error::NotAutomorphism("one unit per factor is required"));
                }
                for (&u, &m) in units.iter().zip(g.moduli()) {
                    if u >= m || gcd(u, m) != 1 {
                        return Err(Error::NotAutomorphism("multiplier is not a unit"));
                    }
                }
                Ok(())
            }
            (Automorphism::FieldMul(factors), Group::Abelian(g)) => {
                let layout: Vec<u64> = factors
                    .iter()
                    .flat_map(|(f, _)| core::iter::repeat_n(f.characteristic(), f.degree() as usize))
                    .collect();
                if layout != g.moduli() {
                    return Err(Error::NotAutomorphism("group is not the additive group of these fields"));
                }
                if factors.iter().any(|(f, u)| *u == 0 || !f.contains(*u)) {
                    return Err(Error::NotAutomorphism("multiplier is not a unit"));
                }
                Ok(())
            }
            (Automorphism::Matrix(m), Group::Abelian(g)) => {
                if g.moduli() != [m.modulus(), m.modulus()] {
                    return Err(Error::NotAutomorphism("matrix needs Z_m x Z_m"));
                }
                if !m.is_invertible() {
                    return Err(Error::NotAutomorphism("matrix is not invertible"));
                }
                Ok(())
            }
            (Automorphism::HeisenbergUnit(u), Group::Heisenberg(h)) => {
                if *u >= h.ring().size() || !h.ring().is_unit(*u) {
                    return Err(Error::NotAutomorphism("multiplier is not a unit"));
                }
                Ok(())
            }
            (Automorphism::Explicit(images), _) => {
                let n = group.enumerable_order()?;
                if images.len() != n {
                    return Err(Error::NotAutomorphism("one image per element is required"));
                }
                let mut seen = vec![false; n];
                for &i in images {
                    let i = i as usize;
                    if i >= n || core::mem::replace(&mut seen[i], true) {
                        return Err(Error::NotAutomorphism("table is not a permutation"));
                    }
                }
                let gens = group.generating_set()?;
                for x in group.enumerate()? {
                    let ax = self.apply(group, &x);
                    for s in &gens {
                        let lhs = self.apply(group, &group.add_unchecked(&x, s));
                        if lhs != group.add_unchecked(&ax, &self.apply(group, s)) {
                            return Err(Error::NotAutomorphism("map is not a homomorphism"));
                        }
                    }
                }
                Ok(())
            }
            _ => Err(Error::NotAutomorphism("automorphism kind does not fit the group")),
        }
    }

    /// Image of `a`. Expects a map that passed [`Automorphism::validate`].
    pub fn apply(&self, group: &Group, a: &Element) -> Element {
        let c = a.coords();
        match (self, group) {
            (Automorphism::UnitMul(units), Group::Abelian(g)) => Element::new(
                c.iter()
                    .zip(units)
                    .zip(g.moduli())
                    .map(|((&x, &u), &m)| mul_mod(x, u, m))
                    .collect(),
            ),
            (Automorphism::FieldMul(factors), _) => {
                let mut out = Vec::with_capacity(c.len());
                let mut at = 0;
                for (f, u) in factors {
                    let e = f.degree() as usize;
                    let x = f.from_coordinates(&c[at..at + e]);
                    out.extend(f.coordinates(f.mul(*u, x)));
                    at += e;
                }
                Element::new(out)
            }
            (Automorphism::Matrix(m), _) => {
                let (x, y) = m.apply(c[0], c[1]);
                Element::new(vec![x, y])
            }
            (Automorphism::HeisenbergUnit(u), Group::Heisenberg(h)) => {
                let r = h.ring();
                let u2 = r.mul(*u, *u);
                Element::new(vec![r.mul(*u, c[0]), r.mul(*u, c[1]), r.mul(u2, c[2])])
            }
            (Automorphism::Explicit(images), _) => group.element_at(images[group.index_of(a)] as usize),
            _ => panic!("automorphism applied to a group of the wrong kind"),
        }
    }

    /// The identity map, in the same representation as `self`.
    pub fn identity_like(&self, group: &Group) -> Automorphism {
        match self {
            Automorphism::UnitMul(u) => Automorphism::UnitMul(vec![1; u.len()]),
            Automorphism::FieldMul(f) => Automorphism::FieldMul(f.iter().map(|(f, _)| (f.clone(), 1)).collect()),
            Automorphism::Matrix(m) => Automorphism::Matrix(Matrix2::identity(m.modulus())),
            Automorphism::HeisenbergUnit(_) => Automorphism::HeisenbergUnit(1),
            Automorphism::Explicit(_) => Automorphism::Explicit((0..group.order() as u32).collect()),
        }
    }

    pub fn is_identity(&self, group: &Group) -> bool {
        match self {
            Automorphism::UnitMul(u) => u.iter().all(|&x| x == 1),
            Automorphism::FieldMul(f) => f.iter().all(|(_, u)| *u == 1),
            Automorphism::Matrix(m) => m.is_identity(),
            Automorphism::HeisenbergUnit(u) => *u == 1 || group.order() == 1,
            Automorphism::Explicit(images) => images.iter().enumerate().all(|(i, &x)| i == x as usize),
        }
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &Automorphism, group: &Group) -> Result<Automorphism> {
        Ok(match (self, other, group) {
            (Automorphism::UnitMul(a), Automorphism::UnitMul(b), Group::Abelian(g)) => Automorphism::UnitMul(
                a.iter().zip(b).zip(g.moduli()).map(|((&x, &y), &m)| mul_mod(x, y, m)).collect(),
            ),
            (Automorphism::FieldMul(a), Automorphism::FieldMul(b), _) if a.len() == b.len() => {
                Automorphism::FieldMul(a.iter().zip(b).map(|((f, x), (_, y))| (f.clone(), f.mul(*x, *y))).collect())
            }
            (Automorphism::Matrix(a), Automorphism::Matrix(b), _) => Automorphism::Matrix(a.mul(b)),
            (Automorphism::HeisenbergUnit(a), Automorphism::HeisenbergUnit(b), Group::Heisenberg(h)) => {
                Automorphism::HeisenbergUnit(h.ring().mul(*a, *b))
            }
            _ => {
                let p = self.to_permutation(group)?;
                let q = other.to_permutation(group)?;
                Automorphism::Explicit(q.iter().map(|&i| p[i as usize]).collect())
            }
        })
    }

    /// Image table by canonical index.
    pub fn to_permutation(&self, group: &Group) -> Result<Vec<u32>> {
        if let Automorphism::Explicit(images) = self {
            return Ok(images.clone());
        }
        let n = group.enumerable_order()?;
        Ok((0..n)
            .map(|i| group.index_of(&self.apply(group, &group.element_at(i))) as u32)
            .collect())
    }
}

/// `[id, a, a^2, ...]` up to the order of `a`.
pub fn generate_cyclic_group(alpha: &Automorphism, group: &Group) -> Result<Vec<Automorphism>> {
    alpha.validate(group)?;
    let mut out = vec![alpha.identity_like(group)];
    let mut power = alpha.clone();
    while !power.is_identity(group) {
        if out.len() as u64 >= MAX_AUTOMORPHISM_ORDER {
            return Err(Error::OrderOverflow { bound: MAX_AUTOMORPHISM_ORDER });
        }
        let next = power.compose(alpha, group)?;
        out.push(power);
        power = next;
    }
    Ok(out)
}

/// No non-identity member of `auts` fixes a non-zero element.
pub fn is_fixed_point_free(group: &Group, auts: &[Automorphism]) -> Result<bool> {
    let n = group.enumerable_order()?;
    for a in auts.iter().filter(|a| !a.is_identity(group)) {
        for i in 1..n {
            let x = group.element_at(i);
            if a.apply(group, &x) == x {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The `A`-orbits on `G \ {0}`. Each orbit is sorted and orbits are listed by
/// their least element, which is also the representative.
pub fn orbits(group: &Group, auts: &[Automorphism]) -> Result<Vec<Vec<Element>>> {
    let n = group.enumerable_order()?;
    let mut visited = vec![false; n];
    let mut out = Vec::new();
    for i in 1..n {
        if visited[i] {
            continue;
        }
        let x = group.element_at(i);
        let mut orbit: Vec<Element> = auts.iter().map(|a| a.apply(group, &x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        if orbit.len() < auts.len() {
            return Err(Error::NotSemiregular);
        }
        for y in &orbit {
            if core::mem::replace(&mut visited[group.index_of(y)], true) {
                return Err(Error::NotClosed);
            }
        }
        out.push(orbit);
    }
    Ok(out)
}

fn cycles_have_length(perm: &[u32], len: usize) -> bool {
    let mut seen = vec![false; perm.len()];
    for start in 1..perm.len() {
        if seen[start] {
            continue;
        }
        let (mut x, mut n) = (start, 0);
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            n += 1;
        }
        if n != len || x != start {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FerreroPair {
    group: Group,
    automorphisms: Vec<Automorphism>,
}

impl FerreroPair {
    /// Validates every map, that the list is a group with the identity
    /// first, and that it acts semiregularly on `G \ {0}`.
    pub fn new(group: Group, automorphisms: Vec<Automorphism>) -> Result<Self> {
        let Some(first) = automorphisms.first() else {
            return Err(Error::TrivialAutomorphismGroup);
        };
        for a in &automorphisms {
            a.validate(&group)?;
        }
        if !first.is_identity(&group) {
            return Err(Error::InvalidParameter("the identity must come first"));
        }
        if automorphisms.len() < 2 {
            return Err(Error::TrivialAutomorphismGroup);
        }
        let perms = automorphisms
            .iter()
            .map(|a| a.to_permutation(&group))
            .collect::<Result<Vec<_>>>()?;
        let members: BTreeSet<&Vec<u32>> = perms.iter().collect();
        if members.len() != perms.len() {
            return Err(Error::InvalidParameter("repeated automorphism"));
        }
        if !is_closed(&perms) {
            return Err(Error::NotClosed);
        }
        if perms.iter().skip(1).any(|p| p.iter().enumerate().skip(1).any(|(i, &x)| x as usize == i)) {
            return Err(Error::NotSemiregular);
        }
        Ok(FerreroPair { group, automorphisms })
    }

    /// `(G, <generator>)`.
    pub fn cyclic(group: Group, generator: &Automorphism) -> Result<Self> {
        let automorphisms = generate_cyclic_group(generator, &group)?;
        if automorphisms.len() < 2 {
            return Err(Error::TrivialAutomorphismGroup);
        }
        // <a> is semiregular iff every cycle of a off zero has full length
        let perm = generator.to_permutation(&group)?;
        if !cycles_have_length(&perm, automorphisms.len()) {
            return Err(Error::NotSemiregular);
        }
        Ok(FerreroPair { group, automorphisms })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.automorphisms
    }

    pub fn k(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn v(&self) -> u64 {
        self.group.order()
    }

    pub fn orbits(&self) -> Result<Vec<Vec<Element>>> {
        orbits(&self.group, &self.automorphisms)
    }

    pub fn ddf(&self) -> Result<DiffFamily> {
        ferrero_ddf(self)
    }

    /// The orbit DDF split into two halves of index `(k-1)/2`.
    pub fn split(&self) -> Result<(DiffFamily, DiffFamily)> {
        split_ddf(&ferrero_ddf(self)?)
    }
}

/// A finite set of permutations containing the identity is a group iff it is
/// closed under left composition by a generating set of the group it
/// generates. Generators are picked greedily and the generated closure is
/// abandoned as soon as it outgrows the set.
fn is_closed(perms: &[Vec<u32>]) -> bool {
    let members: BTreeMap<&Vec<u32>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { b.iter().map(|&i| a[i as usize]).collect() };
    let mut gens: Vec<&Vec<u32>> = Vec::new();
    let mut generated: BTreeSet<Vec<u32>> = BTreeSet::new();
    generated.insert(perms[0].clone());
    for p in perms {
        if generated.contains(p) {
            continue;
        }
        gens.push(p);
        let mut queue: VecDeque<Vec<u32>> = generated.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = compose(g, &x);
                if !members.contains_key(&y) {
                    return false;
                }
                if generated.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    generated.len() == perms.len()
}

/// The orbit family of a Ferrero pair, re-verified by brute force.
pub fn ferrero_ddf(pair: &FerreroPair) -> Result<DiffFamily> {
    let k = pair.k();
    if k < 2 {
        return Err(Error::TrivialAutomorphismGroup);
    }
    let blocks = pair.orbits()?;
    DiffFamily::new(pair.group.clone(), blocks, k, k as u64 - 1)?.certify(true)
}

/// Splits an abelian Ferrero `(v,k,k-1)`-DDF with `vk` odd into two
/// `(v,k,(k-1)/2)`-DDFs: the blocks pair up as `{O, -O}` and the first family
/// takes the block with the smaller least element from each pair.
pub fn split_ddf(ddf: &DiffFamily) -> Result<(DiffFamily, DiffFamily)> {
    let group = ddf.group();
    let k = ddf.k();
    if !group.is_abelian() || group.order().is_multiple_of(2) || k.is_multiple_of(2) {
        return Err(Error::RequiresAbelianOddOrder);
    }
    if ddf.lambda() + 1 != k as u64 || !verify::is_partition_of_nonzero(group, ddf.blocks()) {
        return Err(Error::InputNotDDF);
    }
    let blocks = ddf.blocks();
    let mut owner = vec![usize::MAX; group.enumerable_order()?];
    for (bi, b) in blocks.iter().enumerate() {
        for x in b {
            owner[group.index_of(x)] = bi;
        }
    }
    let mut paired = vec![false; blocks.len()];
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for (bi, b) in blocks.iter().enumerate() {
        if paired[bi] {
            continue;
        }
        let mut neg: Vec<Element> = b.iter().map(|x| group.neg_unchecked(x)).collect();
        neg.sort_unstable();
        let partner = owner[group.index_of(&neg[0])];
        if partner == bi {
            return Err(Error::PairingFailure);
        }
        if blocks[partner] != neg {
            return Err(Error::InvalidParameter("negated block is not a block"));
        }
        paired[bi] = true;
        paired[partner] = true;
        first.push(b.clone());
        second.push(neg);
    }
    let half = (k as u64 - 1) / 2;
    let o1 = DiffFamily::new(group.clone(), first, k, half)?.certify(true)?;
    let o2 = DiffFamily::new(group.clone(), second, k, half)?.certify(true)?;
    Ok((o1, o2))
}

/// Every maximal prime-power factor `q` of `v` satisfies `q = 1 (mod k)`.
pub fn feasible_parameters(v: u64, k: u64) -> bool {
    if v == 0 || k == 0 {
        return false;
    }
    prime_power_factors(v).into_iter().all(|q| q % k == 1 % k)
}
