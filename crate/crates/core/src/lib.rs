//! Exact computer algebra for left-symmetric Rinehart algebras.
//!
//! Structures are given by rational structure constants. The crate checks
//! every axiom exactly and reports the first violating basis tuple, builds
//! the standard constructions (sub-adjacent Lie–Rinehart algebras,
//! semidirect products, dual representations), computes the cochain complex
//! with its cohomology dimensions, runs formal deformations order by order and
//! checks Nijenhuis, Rota–Baxter and O-operator identities.
//!
//! ```
//! use rinehart::fixtures;
//!
//! let l = fixtures::f1();
//! assert!(l.validate().passed());
//! ```

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod deformation;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod operators;
pub mod representation;
pub mod report;
pub mod tensor;

pub use algebra::{AnchoredAlgebra, LieRinehartAlgebra, LsrAlgebra, StructureAlgebra};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rational};
pub use report::Report;
pub use tensor::Bilinear;

/// The guide chapters, compiled so their snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/structures.md")]
    pub struct Structures;
    #[doc = include_str!("../../../book/src/documents.md")]
    pub struct Documents;
    #[doc = include_str!("../../../book/src/representations.md")]
    pub struct Representations;
    #[doc = include_str!("../../../book/src/cohomology.md")]
    pub struct Cohomology;
    #[doc = include_str!("../../../book/src/deformations.md")]
    pub struct Deformations;
    #[doc = include_str!("../../../book/src/operators.md")]
    pub struct Operators;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
