//! Lifting DDFs through normal subgroups of prime index.
//!
//! Given `N` normal of prime index `p` in `H`, a `(p, k, lambda)`-DF of `H/N`
//! written with coset representatives `g_1, ..., g_k`, and a
//! `(|N|, k, lambda)`-DF inside `N`, the blocks
//! `B(n) = {g_i + i*n : 1 <= i <= k}` for `n` in `N`, together with the blocks
//! of the `N` family, form a `(|H|, k, lambda)`-DF of `H`.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::modular::{factorize, is_prime};
use crate::algebra::{CoordinateRing, FiniteField};
use crate::constructions::roots_of_unity_ddf;
use crate::family::{canonicalize, DiffFamily};
use crate::ferrero::split_ddf;
use crate::group::{Element, Group, Subgroup};
use crate::verify;
use crate::{Error, Result};

const OUTSIDE: u32 = u32::MAX;

/// A normal subgroup `inner` of prime index in `outer`, with the least
/// element of every coset (zero coset first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionData {
    outer: Subgroup,
    inner: Subgroup,
    index: u64,
    coset_reps: Vec<Element>,
    coset_of: Vec<u32>,
}

impl ExtensionData {
    /// `inner` as a subgroup of the whole group.
    pub fn new(group: &Group, inner: Subgroup) -> Result<Self> {
        Self::within(group, Subgroup::whole(group)?, inner)
    }

    pub fn within(group: &Group, outer: Subgroup, inner: Subgroup) -> Result<Self> {
        if !inner.is_subgroup_of(&outer) {
            return Err(Error::NotSubgroup);
        }
        let conjugators = group.greedy_generators(outer.elements())?;
        if !group.normalized_by(&inner, &conjugators) {
            return Err(Error::NotNormal);
        }
        let index = outer.order() / inner.order();
        if !is_prime(index) {
            return Err(Error::IndexNotPrime(index));
        }
        let mut coset_of = vec![OUTSIDE; group.enumerable_order()?];
        let mut coset_reps = Vec::with_capacity(index as usize);
        for x in outer.elements() {
            if coset_of[group.index_of(x)] != OUTSIDE {
                continue;
            }
            let c = coset_reps.len() as u32;
            for n in inner.elements() {
                coset_of[group.index_of(&group.add_unchecked(x, n))] = c;
            }
            coset_reps.push(x.clone());
        }
        Ok(ExtensionData { outer, inner, index, coset_reps, coset_of })
    }

    pub fn outer(&self) -> &Subgroup {
        &self.outer
    }

    pub fn inner(&self) -> &Subgroup {
        &self.inner
    }

    /// The prime `[outer : inner]`.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn coset_reps(&self) -> &[Element] {
        &self.coset_reps
    }

    /// Position of the coset of `x` in [`Self::coset_reps`], if `x` lies in
    /// the outer subgroup.
    pub fn coset_of(&self, group: &Group, x: &Element) -> Option<usize> {
        if !group.contains(x) {
            return None;
        }
        match self.coset_of[group.index_of(x)] {
            OUTSIDE => None,
            c => Some(c as usize),
        }
    }

    fn mask(&self, group: &Group, sub: &Subgroup) -> Vec<bool> {
        let mut m = vec![false; self.coset_of.len()];
        for x in sub.elements() {
            m[group.index_of(x)] = true;
        }
        m
    }
}

/// Composition inside `ext.outer()`. `f1` holds ordered blocks of
/// representatives of a DF of the quotient; `f2` holds blocks inside
/// `ext.inner()`. Returns the canonicalized composed blocks after checking
/// them against the outer subgroup.
pub fn compose_blocks(
    group: &Group,
    ext: &ExtensionData,
    f1: &[Vec<Element>],
    f2: &[Vec<Element>],
    k: usize,
    lambda: u64,
) -> Result<Vec<Vec<Element>>> {
    if k < 2 {
        return Err(Error::InvalidParameter("block size k must be at least 2"));
    }
    if let Some(&(prime, _)) = factorize(ext.outer.order()).iter().find(|&&(q, _)| q <= k as u64) {
        return Err(Error::SmallPrimeFactor { prime, k: k as u64 });
    }

    // quotient family, counted on cosets
    let p = ext.index as usize;
    let mut labels = Vec::new();
    let mut counts = vec![0u64; p];
    for b in f1 {
        if b.len() != k {
            return Err(Error::InputNotDF("quotient block size differs from k"));
        }
        let cs = b
            .iter()
            .map(|x| ext.coset_of(group, x).ok_or(Error::InputNotDF("quotient block leaves the subgroup")))
            .collect::<Result<Vec<_>>>()?;
        for (i, &a) in cs.iter().enumerate() {
            for (j, &c) in cs.iter().enumerate() {
                if i != j {
                    let d = group.sub_unchecked(&ext.coset_reps[a], &ext.coset_reps[c]);
                    counts[ext.coset_of[group.index_of(&d)] as usize] += 1;
                }
            }
        }
        labels.extend(cs);
    }
    if counts[0] != 0 || counts[1..].iter().any(|&c| c != lambda) {
        return Err(Error::InputNotDF("quotient family"));
    }
    labels.sort_unstable();
    let f1_disjoint = labels.windows(2).all(|w| w[0] != w[1]);

    // family inside N
    let inner_mask = ext.mask(group, &ext.inner);
    if f2.iter().any(|b| b.len() != k || b.iter().any(|x| !ext.inner.contains(x))) {
        return Err(Error::InputNotDF("subgroup block is malformed or leaves N"));
    }
    let census = verify::difference_multiset(group, f2)?;
    if !verify::report_on(group, census.counts(), lambda, |i| inner_mask[i]).pass {
        return Err(Error::InputNotDF("subgroup family"));
    }
    let disjoint = f1_disjoint && verify::is_disjoint(f2);

    let mut out = Vec::with_capacity(f1.len() * ext.inner.order() as usize + f2.len());
    for b in f1 {
        for n in ext.inner.elements() {
            let lifted: Vec<Element> = b
                .iter()
                .enumerate()
                .map(|(i, g)| group.add_unchecked(g, &group.multiple_unchecked(n, i as u64 + 1)))
                .collect();
            if lifted.iter().any(|x| inner_mask[group.index_of(x)]) {
                return Err(Error::VerificationFailed("lifted block meets N"));
            }
            out.push(lifted);
        }
    }
    out.extend(f2.iter().cloned());
    canonicalize(&mut out);

    if disjoint && out.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::VerificationFailed("repeated lifted block"));
    }
    let v = ext.outer.order();
    let expected = lambda * (v - 1) / (k as u64 * (k as u64 - 1));
    if out.len() as u64 != expected {
        return Err(Error::VerificationFailed("block count"));
    }
    let outer_mask = ext.mask(group, &ext.outer);
    let census = verify::difference_multiset(group, &out)?;
    if !verify::report_on(group, census.counts(), lambda, |i| outer_mask[i]).pass {
        return Err(Error::VerificationFailed("composed census"));
    }
    if disjoint && !verify::is_disjoint(&out) {
        return Err(Error::VerificationFailed("composed blocks are not disjoint"));
    }
    Ok(out)
}

/// [`compose_blocks`] for an extension of the whole group, returned as a
/// certified family (disjoint whenever both inputs are).
pub fn compose_ddf(
    group: &Group,
    ext: &ExtensionData,
    f1: &[Vec<Element>],
    f2: &[Vec<Element>],
    k: usize,
    lambda: u64,
) -> Result<DiffFamily> {
    if ext.outer.order() != group.order() {
        return Err(Error::InvalidParameter("extension must be of the whole group"));
    }
    let blocks = compose_blocks(group, ext, f1, f2, k, lambda)?;
    let disjoint = verify::is_disjoint(&blocks);
    DiffFamily::new(group.clone(), blocks, k, lambda)?.certify(disjoint)
}

/// A `(v, k, k-1)`-DDF of `group` from a chain of subgroups, each normal of
/// prime index in the previous one. The whole group and the trivial
/// subgroup may be omitted from the ends of `chain`.
pub fn ddf_for_group(group: &Group, chain: &[Subgroup], k: u64) -> Result<DiffFamily> {
    build(group, chain, k, false)
}

/// As [`ddf_for_group`] but with index `(k-1)/2`, from half of the
/// roots-of-unity families of the prime quotients. Needs `k` odd.
pub fn ddf_for_group_half(group: &Group, chain: &[Subgroup], k: u64) -> Result<DiffFamily> {
    if k.is_multiple_of(2) {
        return Err(Error::InvalidParameter("half-index composition needs odd k"));
    }
    build(group, chain, k, true)
}

fn build(group: &Group, chain: &[Subgroup], k: u64, half: bool) -> Result<DiffFamily> {
    if k < 2 {
        return Err(Error::InvalidParameter("block size k must be at least 2"));
    }
    let v = group.order();
    for (p, _) in factorize(v) {
        if p % k != 1 {
            return Err(Error::CongruenceViolation { modulus: p, k });
        }
    }
    let lambda = if half { (k - 1) / 2 } else { k - 1 };

    let mut subs: Vec<Subgroup> = Vec::with_capacity(chain.len() + 2);
    if chain.first().is_none_or(|s| s.order() != v) {
        subs.push(Subgroup::whole(group)?);
    }
    for s in chain {
        if s.elements().iter().any(|x| !group.contains(x)) {
            return Err(Error::BadChain("subgroup element outside the group"));
        }
        subs.push(s.clone());
    }
    if subs.last().is_none_or(|s| s.order() != 1) {
        subs.push(Subgroup::trivial(group));
    }

    let mut blocks: Vec<Vec<Element>> = Vec::new();
    for pair in subs.windows(2).rev() {
        let ext = ExtensionData::within(group, pair[0].clone(), pair[1].clone()).map_err(|e| match e {
            Error::NotSubgroup => Error::BadChain("chain is not decreasing"),
            Error::NotNormal => Error::BadChain("subgroup is not normal in its predecessor"),
            Error::IndexNotPrime(_) => Error::BadChain("index is not prime"),
            other => other,
        })?;
        let f1 = quotient_family(group, &ext, k, half)?;
        blocks = compose_blocks(group, &ext, &f1, &blocks, k as usize, lambda)?;
    }
    DiffFamily::new(group.clone(), blocks, k as usize, lambda)?.certify(true)
}

/// The roots-of-unity family of `Z_p` carried to `outer/inner` by
/// `j -> j*t`, `t` the least element outside `inner`, written with the
/// canonical coset representatives.
fn quotient_family(group: &Group, ext: &ExtensionData, k: u64, half: bool) -> Result<Vec<Vec<Element>>> {
    let p = ext.index;
    let mut base = roots_of_unity_ddf(&FiniteField::prime(p)?, k)?;
    if half {
        base = split_ddf(&base)?.0;
    }
    let t = &ext.coset_reps[1];
    Ok(base
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|j| {
                    let x = group.multiple_unchecked(t, j.coords()[0]);
                    ext.coset_reps[ext.coset_of[group.index_of(&x)] as usize].clone()
                })
                .collect()
        })
        .collect())
}

/// Additive subgroups of a coordinate ring from the whole ring down to `{0}`,
/// each of prime index in the previous one, given by generators.
fn additive_chain(ring: &CoordinateRing) -> Vec<Vec<u64>> {
    match ring {
        CoordinateRing::Integers(m) => {
            let mut out = vec![vec![1 % m]];
            let mut c = 1;
            while c < *m {
                let (q, _) = factorize(m / c)[0];
                c *= q;
                out.push(if c < *m { vec![c] } else { Vec::new() });
            }
            out
        }
        CoordinateRing::Field(f) => {
            let p = f.characteristic();
            let e = f.degree();
            (0..=e).rev().map(|j| (0..j).map(|i| p.pow(i)).collect()).collect()
        }
    }
}

/// A chain from the whole group to `{0}` with prime indices and each term
/// normal in the previous one. Products shrink one coordinate at a time;
/// Heisenberg groups shrink `x`, then `y`, then the central `z`.
pub fn normal_series(group: &Group) -> Result<Vec<Subgroup>> {
    let mut gen_sets: Vec<Vec<Element>> = Vec::new();
    match group {
        Group::Abelian(a) => {
            let moduli = a.moduli();
            let mut c = vec![1u64; moduli.len()];
            let gens = |c: &[u64]| -> Vec<Element> {
                (0..moduli.len())
                    .filter(|&i| c[i] < moduli[i])
                    .map(|i| {
                        let mut x = vec![0; moduli.len()];
                        x[i] = c[i];
                        Element::new(x)
                    })
                    .collect()
            };
            gen_sets.push(gens(&c));
            for i in 0..moduli.len() {
                while c[i] < moduli[i] {
                    c[i] *= factorize(moduli[i] / c[i])[0].0;
                    gen_sets.push(gens(&c));
                }
            }
        }
        Group::Heisenberg(h) => {
            let chain = additive_chain(h.ring());
            let full = &chain[0];
            let embed = |pos: usize, xs: &[u64]| -> Vec<Element> {
                xs.iter()
                    .map(|&a| {
                        let mut c = vec![0; 3];
                        c[pos] = a;
                        Element::new(c)
                    })
                    .collect()
            };
            for pos in 0..3 {
                for level in &chain[usize::from(pos > 0)..] {
                    let mut g = embed(pos, level);
                    for later in pos + 1..3 {
                        g.extend(embed(later, full));
                    }
                    gen_sets.push(g);
                }
            }
        }
        Group::Cayley(_) => {
            return Err(Error::InvalidParameter("no built-in normal series for Cayley tables"));
        }
    }
    gen_sets.iter().map(|g| Subgroup::generated_by(group, g)).collect()
}
