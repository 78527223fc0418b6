//! Disjoint `(v, k, k-1)` difference families in finite groups.
//!
//! Everything here is exact integer arithmetic over small finite groups and
//! rings. Families are built from fixed-point-free automorphism groups
//! (Ferrero pairs), from Pisano matrices, from twisted products and by
//! recursive composition along a normal series, and every family that leaves
//! a constructor has been re-checked by brute force in [`verify`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod composition;
pub mod constructions;
mod error;
pub mod family;
pub mod ferrero;
pub mod group;
pub mod verify;

pub use error::{Error, Result};
pub use family::DiffFamily;
pub use ferrero::{Automorphism, FerreroPair};
pub use group::{Element, Group, Subgroup};
