//! Explicit solution sets of affine equations `L(X) = a` where `L` is a
//! p-linearized polynomial with coefficients in GF(p) and `a` lies in GF(p^n).
//!
//! The crate is organised bottom-up:
//!
//! * [`prime`] and [`field`]: GF(p) and one ambient extension GF(p^M) with
//!   Frobenius powers and the subfield lattice.
//! * [`poly`]: GF(p)[x] arithmetic, gcd/Bézout, squarefree and distinct-degree
//!   splitting, and the order of a polynomial.
//! * [`linearized`]: the p-associate correspondence, evaluation, composition
//!   and the `T`/`S` families.
//! * [`solver`]: kernel, solvability test and particular solutions, with a
//!   Gaussian-elimination oracle for cross-checking.
//!
//! With the default `parallel` feature, batch operations fan out over rayon;
//! without it they run sequentially with identical results.

pub mod audit;
pub mod error;
pub mod field;
pub mod linalg;
pub mod linearized;
pub mod parallel;
pub mod poly;
pub mod prime;
pub mod solver;

pub use error::{Error, Result};
pub use linearized::LinearizedPoly;
pub use solver::{enumerate_solutions, Method, ProblemSpec, SolutionSet, SolverContext, SolverOptions};
pub use field::{build_field, FieldDescription, FieldElement, SubfieldBasis};

pub use poly::Poly;
pub use prime::{PrimeField, Scalar};

