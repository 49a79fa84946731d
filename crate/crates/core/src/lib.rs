//! Incidence coalgebras of finite preorders and their dual structural matrix
//! algebras, in exact rational arithmetic.
//!
//! The crate answers one question and checks the answer several ways: when is
//! the structural matrix algebra `M(B, k)` of a preorder `B` Frobenius (and
//! dually, when is the incidence coalgebra `IC(B)` co-Frobenius)? The decision
//! in [`algebra::frobenius_decide`] is purely combinatorial; the Gram oracle,
//! the trace-form radical and the coradical filtration each reach the same
//! verdict without using it.
//!
//! `no_std` with `alloc`; IO, file formats and the command line live in the
//! `frobstruct` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod coalgebra;
pub mod linalg;
pub mod morita;
pub mod preorder;
pub mod sparse;

pub use algebra::{frobenius_decide, Decision, OracleOutcome, OracleVerdict, StructMatrixAlgebra};
pub use coalgebra::{
    check_coalgebra_axioms, Coalgebra, Coideal, Elem, Functional, IncCoalgebra, Side, TensorElem,
};
pub use linalg::{Matrix, Rational, Subspace};
pub use preorder::{enumerate_preorders, BuildMode, EquivClasses, Preorder, PreorderError, QuotientPoset};
