//! Rings, finitely presented modules, bounded complexes, Koszul complexes,
//! tensor products and homology.

mod complex;
mod matrix;
mod module;
mod ring;

pub use complex::{hom_complex, koszul_complex, tensor_complexes, ChainComplex};
pub use matrix::Matrix;
pub use module::{tensor_modules, FinModule};
pub use ring::QuotientRing;

pub(crate) use module::cancel_units;
pub(crate) use ring::{non_pivot_columns, ResolutionPrefix};
