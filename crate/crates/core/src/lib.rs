//! Exact algebra for lines through singular points of hypersurfaces and the
//! singular loci of normal-form cubics.

pub mod error;
pub mod fano;
pub mod field;
pub mod idealkit;
pub mod linalg;
pub mod poly;
pub mod projgeo;
pub mod random;
pub mod voisin;

pub use error::{Error, Result};
pub use field::{Embedding, Field, FieldElement, FieldKind};
pub use idealkit::{Ideal, VarietyReport};
pub use linalg::Matrix;
pub use poly::{Monomial, MonomialOrder, Polynomial};
pub use projgeo::ProjectivePoint;
