//! Exact arithmetic for the Artin-Hasse exponential
//! `E(x) = exp(sum_k x^(p^k) / p^k) = sum_n u_n x^n`.
//!
//! The crate computes the coefficients `u_n`, counts the p-elements of the
//! symmetric groups (`h_n = n! u_n`), enumerates the constrained staircase
//! tableaux that govern the binomial determinant, and checks the closed form
//!
//! ```text
//! det(u_{p i - j})_{1 <= i,j <= l} = prod_{k=1}^{l} k! p^k / (p k)!
//! ```
//!
//! together with every identity that leads to it. All arithmetic is exact.

pub mod determinant;
mod error;
pub mod matrix;
pub mod padic;
pub mod perm;
pub mod series;
pub mod tableaux;
pub mod verify;

pub use determinant::DeterminantReport;
pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use padic::{PrimeContext, Rational};
pub use perm::CycleType;
pub use series::CoefficientTable;
pub use tableaux::{AdmissibleTriple, Tableau};
pub use verify::{CaseReport, VerificationSummary, Verifier};
