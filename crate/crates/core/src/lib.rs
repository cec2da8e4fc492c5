//! Exact Frobenius-algebra, theta-foam and branch-circle computations.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`):
//!
//! * [`coeffring`] – polynomials over `Z` in named generators,
//! * [`frobalg`] – commutative Frobenius algebras, dual bases, `Δ(1)`,
//! * [`thetafoam`] – cyclically symmetric theta-foam value tables,
//! * [`branchops`] – the branch-circle bracket and co-operation,
//! * [`lawsuite`] – exhaustive identity checks with counterexamples,
//! * [`groupfoam`] – group rings of finite abelian groups,
//! * [`foamlang`] – a small string-diagram language compiled to matrices.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod branchops;
pub mod coeffring;
pub mod foamlang;
pub mod frobalg;
pub mod groupfoam;
pub mod lawsuite;
pub mod lexer;
pub mod linmap;
pub mod matrix;
pub mod polyexpr;
pub mod tensor;
pub mod thetafoam;

pub use branchops::{BranchContext, BranchError, MapKind};
pub use coeffring::{Generators, MultiPoly, RingError};
pub use foamlang::{DiagramExpr, FoamError, Generator};
pub use frobalg::{AlgebraElement, FrobError, FrobeniusAlgebra};
pub use groupfoam::{FiniteAbelianGroup, GroupError, GroupRingAlgebra};
pub use lawsuite::{Counterexample, LawReport};
pub use lexer::{ParseError, Pos};
pub use linmap::LinearMap;
pub use matrix::PolyMatrix;
pub use tensor::TensorElement;
pub use thetafoam::{ThetaError, ThetaTable};
