use alloc::vec::Vec;

use crate::group::{Element, Group};
use crate::verify::{self, CensusReport};
use crate::{Error, Result};

/// Base blocks over a group together with the claimed block size and index.
///
/// Blocks are kept canonical: each block sorted, blocks sorted by their
/// least element. Construction only checks shape; use [`DiffFamily::census`]
/// or [`DiffFamily::certify`] for the difference property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffFamily {
    group: Group,
    blocks: Vec<Vec<Element>>,
    k: usize,
    lambda: u64,
}

impl DiffFamily {
    pub fn new(group: Group, mut blocks: Vec<Vec<Element>>, k: usize, lambda: u64) -> Result<Self> {
        for b in &blocks {
            if b.len() != k {
                return Err(Error::InvalidBlock("block size differs from k"));
            }
            for x in b {
                group.check(x)?;
            }
        }
        canonicalize(&mut blocks);
        if blocks.iter().any(|b| b.windows(2).any(|w| w[0] == w[1])) {
            return Err(Error::InvalidBlock("repeated element"));
        }
        Ok(DiffFamily { group, blocks, k, lambda })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<Element>> {
        self.blocks
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn v(&self) -> u64 {
        self.group.order()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn census(&self) -> Result<CensusReport> {
        verify::is_difference_family(&self.group, &self.blocks, self.lambda)
    }

    pub fn is_disjoint(&self) -> bool {
        verify::is_disjoint(&self.blocks)
    }

    /// Brute-force check of the claimed parameters. With `disjoint` set the
    /// blocks must also be pairwise disjoint, and when in addition
    /// `lambda = k - 1` they must partition the non-zero elements.
    pub fn certify(self, disjoint: bool) -> Result<Self> {
        if !self.census()?.pass {
            return Err(Error::VerificationFailed("difference census"));
        }
        if disjoint {
            if !self.is_disjoint() {
                return Err(Error::VerificationFailed("blocks are not disjoint"));
            }
            if self.k >= 1
                && self.lambda + 1 == self.k as u64
                && !verify::is_partition_of_nonzero(&self.group, &self.blocks)
            {
                return Err(Error::VerificationFailed("blocks do not partition G \\ {0}"));
            }
        }
        Ok(self)
    }
}

/// Sort each block, then the blocks themselves.
pub fn canonicalize(blocks: &mut [Vec<Element>]) {
    for b in blocks.iter_mut() {
        b.sort_unstable();
    }
    blocks.sort_unstable();
}
