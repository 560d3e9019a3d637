//! Exact linear algebra for two-dimensional invariant subspaces of square
//! matrices and the 2×2 "super-eigenvalues" acting on them.

mod arith;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod poly;
mod ring;
pub mod rmodule;
pub mod supereig;

pub use arith::{divisor_count, factorize, is_prime_u64, positive_divisors};
pub use field::{Field, FieldElement, FieldError, FieldKind};
pub use matrix::{ClassTag, Mat, MatrixError, SimilarityClass};
pub use poly::{factor, quadratic_irreducible, squarefree_decomposition, super_char_poly, BivarPoly, FactorRecord, PolyError, UniPoly};
pub use ring::CommRing;
