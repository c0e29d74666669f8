//! Exact computations with q-bic forms over finite fields: field arithmetic,
//! forms and their canonical endomorphism, classification, isotropic
//! subspace enumeration, counting formulas, zeta functions, Betti numbers,
//! Plucker degrees, and an oracle suite tying the formulas to enumeration.
//!
//! Field elements are indices into a fixed table, so the linear algebra is
//! concrete. The integer-valued formulas are generic over [`num::ExactInt`];
//! the aliases below pin them to arbitrary precision.

pub mod classify;
pub mod combinatorics;
pub mod degree;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod form;
pub mod linalg;
pub mod num;
pub mod oracle;
pub mod poly;
pub mod subspace;
pub mod zeta;

pub use classify::{classify_type, Classifier, FormProfile, TypeMatch};
pub use enumerate::{EnumConfig, ScanStats};
pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement};
pub use form::{FormType, QBicForm};
pub use linalg::Matrix;
pub use num::ExactInt;
pub use subspace::Subspace;

/// Arbitrary-precision integer used for every count.
pub type Integer = num_bigint::BigInt;
pub type Zeta = zeta::ZetaFactorization<Integer>;
pub type Betti = zeta::BettiTable<Integer>;
pub type Poly = poly::MultiPoly<Integer>;
