//! Exhaustive checks: difference multisets, DF/DDF/PDF predicates,
//! zero-difference-balanced functions and near-resolvable designs.
//!
//! Nothing here samples. Groups past the enumeration bound are refused with
//! [`Error::TooLarge`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::family::DiffFamily;
use crate::group::{Element, Group};
use crate::{Error, Result};

/// Largest point set [`verify_2_design`] will scan.
pub const MAX_DESIGN_POINTS: usize = 10_000;

/// How often each element occurs as a difference `x - y` of two distinct
/// elements of a common block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceCensus {
    group: Group,
    counts: Vec<u64>,
}

impl DifferenceCensus {
    pub fn get(&self, a: &Element) -> u64 {
        if self.group.contains(a) {
            self.counts[self.group.index_of(a)]
        } else {
            0
        }
    }

    /// Counts indexed by canonical element index.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Elements with a non-zero count, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Element, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (self.group.element_at(i), c))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }
}

pub fn difference_multiset(group: &Group, blocks: &[Vec<Element>]) -> Result<DifferenceCensus> {
    let n = group.enumerable_order()?;
    let mut counts = vec![0u64; n];
    for block in blocks {
        for x in block {
            group.check(x)?;
        }
        for (i, x) in block.iter().enumerate() {
            for (j, y) in block.iter().enumerate() {
                if i != j && x != y {
                    counts[group.index_of(&group.sub_unchecked(x, y))] += 1;
                }
            }
        }
    }
    Ok(DifferenceCensus { group: group.clone(), counts })
}

/// Outcome of checking a census against a target index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub pass: bool,
    pub lambda: u64,
    /// Least count over the non-zero elements (0 for the trivial group).
    pub min: u64,
    pub max: u64,
    /// Non-zero elements whose count differs from `lambda`.
    pub violations: Vec<(Element, u64)>,
}

pub fn is_difference_family(group: &Group, blocks: &[Vec<Element>], lambda: u64) -> Result<CensusReport> {
    let census = difference_multiset(group, blocks)?;
    Ok(report_on(group, &census.counts, lambda, |_| true))
}

/// Census restricted to `domain`; elements outside it must not occur.
pub(crate) fn report_on(
    group: &Group,
    counts: &[u64],
    lambda: u64,
    in_domain: impl Fn(usize) -> bool,
) -> CensusReport {
    let mut violations = Vec::new();
    let (mut min, mut max) = (u64::MAX, 0u64);
    for (i, &c) in counts.iter().enumerate().skip(1) {
        let expected = if in_domain(i) {
            min = min.min(c);
            max = max.max(c);
            lambda
        } else {
            0
        };
        if c != expected {
            violations.push((group.element_at(i), c));
        }
    }
    if min == u64::MAX {
        min = 0;
    }
    CensusReport { pass: violations.is_empty(), lambda, min, max, violations }
}

pub fn is_disjoint(blocks: &[Vec<Element>]) -> bool {
    let mut seen = BTreeSet::new();
    blocks.iter().flatten().all(|x| seen.insert(x))
}

/// Blocks are pairwise disjoint and their union is `G \ {0}`.
pub fn is_partition_of_nonzero(group: &Group, blocks: &[Vec<Element>]) -> bool {
    let zero = group.zero();
    let total: usize = blocks.iter().map(Vec::len).sum();
    total as u64 + 1 == group.order()
        && blocks.iter().flatten().all(|x| group.contains(x) && *x != zero)
        && is_disjoint(blocks)
}

/// Blocks are pairwise disjoint and their union is `G`.
pub fn is_partition(group: &Group, blocks: &[Vec<Element>]) -> bool {
    let total: usize = blocks.iter().map(Vec::len).sum();
    total as u64 == group.order() && blocks.iter().flatten().all(|x| group.contains(x)) && is_disjoint(blocks)
}

/// For every element `g` (by canonical index), the number of `x` with
/// `f(g + x) = f(x)`. `labels[i]` is `f` at the element of index `i`.
pub fn zdbf_counts<T: Eq>(group: &Group, labels: &[T]) -> Result<Vec<u64>> {
    let n = group.enumerable_order()?;
    if labels.len() != n {
        return Err(Error::InvalidParameter("one label per group element is required"));
    }
    let all = group.enumerate()?;
    Ok(all
        .iter()
        .map(|g| {
            all.iter()
                .enumerate()
                .filter(|(xi, x)| labels[group.index_of(&group.add_unchecked(g, x))] == labels[*xi])
                .count() as u64
        })
        .collect())
}

/// `f` has exactly `lambda` solutions of `f(g + x) = f(x)` for every `g != 0`.
pub fn zdbf_check<T: Eq>(group: &Group, labels: &[T], lambda: u64) -> Result<bool> {
    Ok(zdbf_counts(group, labels)?.iter().skip(1).all(|&c| c == lambda))
}

/// Non-empty fibers of `f`, each sorted, listed by least element.
pub fn fibers<T: Ord>(group: &Group, labels: &[T]) -> Result<Vec<Vec<Element>>> {
    let n = group.enumerable_order()?;
    if labels.len() != n {
        return Err(Error::InvalidParameter("one label per group element is required"));
    }
    let mut by_label: BTreeMap<&T, Vec<Element>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        by_label.entry(l).or_default().push(group.element_at(i));
    }
    let mut out: Vec<Vec<Element>> = by_label.into_values().collect();
    out.sort();
    Ok(out)
}

/// Side on which a family is translated when developing it into a design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Translation {
    /// `B + g`; matches the right-difference convention `x - y = x + (-y)`.
    #[default]
    Right,
    /// `g + B`
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub points: Vec<Element>,
    pub blocks: Vec<Vec<Element>>,
    /// Resolution classes as lists of block indices.
    pub classes: Option<Vec<Vec<usize>>>,
}

/// Develops a `(v,k,k-1)`-DDF into the near resolvable design whose class
/// for `g` is `{B + g : B in F}`; classes follow the canonical order of `g`.
pub fn expand_to_nrb(ddf: &DiffFamily, translation: Translation) -> Result<Design> {
    let group = ddf.group();
    let k = ddf.k() as u64;
    if k < 2
        || ddf.lambda() != k - 1
        || !is_partition_of_nonzero(group, ddf.blocks())
        || !is_difference_family(group, ddf.blocks(), k - 1)?.pass
    {
        return Err(Error::InputNotDDF);
    }
    let points = group.enumerate()?;
    let mut blocks = Vec::with_capacity(points.len() * ddf.len());
    let mut classes = Vec::with_capacity(points.len());
    for g in &points {
        let mut class = Vec::with_capacity(ddf.len());
        for b in ddf.blocks() {
            let mut t: Vec<Element> = b
                .iter()
                .map(|x| match translation {
                    Translation::Right => group.add_unchecked(x, g),
                    Translation::Left => group.add_unchecked(g, x),
                })
                .collect();
            t.sort_unstable();
            class.push(blocks.len());
            blocks.push(t);
        }
        classes.push(class);
    }
    Ok(Design { points, blocks, classes: Some(classes) })
}

/// Every block has `k` distinct points and every unordered pair of distinct
/// points lies in exactly `lambda` blocks.
pub fn verify_2_design(design: &Design, k: usize, lambda: u64) -> Result<bool> {
    let v = design.points.len();
    if v > MAX_DESIGN_POINTS {
        return Err(Error::TooLarge { order: v as u64, bound: MAX_DESIGN_POINTS as u64 });
    }
    let index: BTreeMap<&Element, usize> = design.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if index.len() != v {
        return Ok(false);
    }
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); v];
    let mut encoded = Vec::with_capacity(design.blocks.len());
    for (bi, block) in design.blocks.iter().enumerate() {
        if block.len() != k {
            return Ok(false);
        }
        let mut ids = Vec::with_capacity(k);
        for p in block {
            match index.get(p) {
                Some(&i) => ids.push(i),
                None => return Ok(false),
            }
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Ok(false);
        }
        for &i in &ids {
            incidence[i].push(bi);
        }
        encoded.push(ids);
    }
    let mut together = vec![0u64; v];
    for x in 0..v {
        together.iter_mut().for_each(|c| *c = 0);
        for &bi in &incidence[x] {
            for &y in &encoded[bi] {
                together[y] += 1;
            }
        }
        if (0..v).any(|y| y != x && together[y] != lambda) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Each class partitions the point set minus one point, different classes
/// miss different points, and every block lies in exactly one class.
pub fn verify_near_resolution(design: &Design) -> bool {
    let Some(classes) = &design.classes else {
        return false;
    };
    let points: BTreeSet<&Element> = design.points.iter().collect();
    if points.len() != design.points.len() || classes.len() != points.len() {
        return false;
    }
    let mut block_seen = vec![false; design.blocks.len()];
    let mut missed = BTreeSet::new();
    for class in classes {
        let mut covered = BTreeSet::new();
        for &bi in class {
            if bi >= design.blocks.len() || core::mem::replace(&mut block_seen[bi], true) {
                return false;
            }
            for p in &design.blocks[bi] {
                if !points.contains(p) || !covered.insert(p) {
                    return false;
                }
            }
        }
        if covered.len() + 1 != points.len() {
            return false;
        }
        let gap = points.iter().find(|p| !covered.contains(*p)).expect("exactly one point is uncovered");
        if !missed.insert(*gap) {
            return false;
        }
    }
    block_seen.into_iter().all(|s| s)
}
