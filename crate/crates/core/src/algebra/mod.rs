//! Finite rings `Z_q`, finite fields `F_{p^e}`, unit groups and the
//! Fibonacci-matrix (Pisano) machinery.

mod field;
mod matrix;
pub mod modular;
mod pisano;
mod ring;

pub use field::FiniteField;
pub use matrix::Matrix2;
pub use modular::{element_of_multiplicative_order, unit_order};
pub use pisano::{pisano_data, pisano_period, PisanoData};
pub use ring::CoordinateRing;
