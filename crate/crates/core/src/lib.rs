//! Homotopy, homology, cohomology and K-theoretic invariants of finite
//! posets, and finite-rank Hilbert net bundles over them.

pub mod abelian;
pub mod chern;
pub mod equivariant;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod homotopy;
pub mod intlinalg;
pub mod io;
pub mod ktheory;
pub mod linalg;
pub mod netbundle;
pub mod poset;
pub mod presentation;
pub mod realization;
pub mod report;
pub mod representation;
pub mod simplicial;
pub mod space;

pub use error::{Error, Result};
