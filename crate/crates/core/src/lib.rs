//! Exact workbench for finite-dimensional quotient path algebras:
//! module representations, syzygies, Gorenstein-projective certificates,
//! singular-equivalence-of-Morita-type checks, and deformation rings at
//! finite truncation orders.

pub mod algebra;
pub mod corpus;
pub mod field;
pub mod homology;
pub mod matrix;
pub mod modrep;
pub mod presentation;
pub mod rewrite;
