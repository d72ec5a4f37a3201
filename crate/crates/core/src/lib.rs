//! Hermitian Jacobi forms and Hermitian modular forms of degree 2 over Q(i),
//! with exact rational coefficients, and tools for their congruences mod p:
//! U(p) and Ramanujan-type congruences, mod p filtrations and heat cycles.
//!
//! Layout:
//! - [`arith`]: rationals, primes, Bernoulli numbers, divisor sums
//! - [`qexp`]: elliptic q-expansions and Eisenstein series
//! - [`hjf`]: Hermitian Jacobi forms, the heat operator, theta decompositions
//! - [`hmf`]: Hermitian modular forms of degree 2 and their Fourier-Jacobi coefficients
//! - [`modp`]: reductions mod p and the congruence machinery
//! - [`genio`]: the on-disk expansion format and the bundled corpus
//! - [`expr`]: the small expression language used by the command line

pub mod arith;
pub mod error;
pub mod expr;
pub mod genio;
pub mod hjf;
pub mod hmf;
pub mod modp;
pub mod qexp;
pub mod suite;

pub use arith::{Prime, Rat};
pub use error::{Error, Result};
pub use hjf::{HJForm, HalfGauss, Parity};
pub use hmf::HMForm;
pub use qexp::QSeries;
