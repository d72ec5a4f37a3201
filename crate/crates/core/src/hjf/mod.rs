//! Hermitian Jacobi forms over Q(i) as truncated Fourier expansions.
//!
//! A coefficient c(n, r) sits at q^n zeta1^r zeta2^conj(r) with r in the
//! half-Gaussian lattice, encoded as r = (a1 + a2 i)/2.

mod form;
mod gauss;
mod jacobi;

pub use form::{average, HJForm, JKey, ShiftClassReport};
pub(crate) use form::convolve;
pub use gauss::{discriminant, Gaussian, HalfGauss, Parity, Unit};
pub(crate) use gauss::{isqrt, lattice_points};
pub use jacobi::{choose_rho, JacobiForm, MatrixJacobiForm};
