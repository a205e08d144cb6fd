#![no_std]

extern crate alloc;

pub mod binary;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod field;
pub mod matrix;
pub mod randgen;
pub mod torsion;

pub use binary::{BinaryComplex, BinaryLadder, BinarySes, RelationExpr};
pub use complex::{ChainComplex, Factorization, GradedObject};
pub use error::{Error, Result};
pub use field::{FieldDesc, Scalar};
pub use matrix::{Matrix, Rref};
pub use torsion::{binary_torsion, chain_torsion, chain_torsion_with, eval_torsion, TorsionValue};
