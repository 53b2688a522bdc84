//! Exact computer algebra for quasi-translations over the rationals.
//!
//! A polynomial map `x + H` is a quasi-translation when `x - H` is its
//! inverse. The crate provides the exact polynomial arithmetic, linear
//! algebra and gcd machinery needed to verify that property, to construct
//! such maps from polynomials with singular Hessian matrices, and to put
//! small-dimensional cases into normal form.

pub mod classify;
pub mod corpus;
pub mod error;
pub mod gcd;
pub mod hessian;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod parser;
pub mod poly;
pub mod polymap;
pub mod quasitrans;
pub mod rat;

pub use classify::{NormalForm, QtFormDecomposition, SmallClassification};
pub use error::{Error, Result};
pub use hessian::{HesseCertificate, Relation, RelationSearch, SpanReport};
pub use linalg::QMatrix;
pub use matrix::{PolyMatrix, RankMode, RankReport};
pub use monomial::Monomial;
pub use poly::Poly;
pub use polymap::PolyMap;
pub use quasitrans::{QtReport, QuasiDegree, QuasiTranslation};
pub use rat::Rat;
