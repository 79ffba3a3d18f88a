//! Exact computation of twisted centralizer codes `C(A, γ) = {X : AX = γXA}`
//! over finite fields.
//!
//! The code is identified with the module of F_q\[x\]-homomorphisms from
//! F_q^n under `γA` to F_q^n under `A`. Both sides are split into primary
//! cyclic pieces, and every pair of pieces whose orders share an irreducible
//! (after twisting the domain side by `γ`) contributes a block of basis
//! matrices. A brute-force Sylvester-operator kernel serves as the reference.

pub mod decomp;
pub mod error;
pub mod factor;
pub mod field;
pub mod hom;
pub mod matrix;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod polymat;
pub mod verify;

pub use error::{Error, Result};
pub use factor::Factorization;
pub use field::{Field, FieldCtx, FieldElem};
pub use matrix::{MatF, VecF};
pub use poly::Poly;
pub use decomp::{decompose, elem_divisors, PrimaryCyclicDecomposition};
pub use hom::{hom_basis, is_codeword, twisted_basis, twisted_dim, TwistedCodeBasis};
pub use oracle::oracle_kernel;
pub use params::{code_params, CodeParams};
