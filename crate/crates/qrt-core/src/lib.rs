//! Numerical core for Lie-algebra-based quantum resource theories.
//!
//! The crate is organized around a small set of building blocks:
//!
//! - [`linalg`]: dense complex operators and states, matrix exponential,
//!   positive-diagonal QR, Hilbert-Schmidt geometry, and seeded random
//!   sampling (Haar unitaries, Haar states, Ginibre matrices).
//! - [`reps`]: concrete representations — the spin-s irrep of su(2) and the
//!   spinor representation of so(2n) built from Majorana quadratics — packaged
//!   with Cartan data and a highest-weight state.
//! - [`purity`]: the algebra purity quantifier P(rho) = (1/N) sum_i Tr[rho g_i]^2
//!   and the closed-form machinery for weight-state purity under complexified
//!   group elements (Pochhammer symbols, terminating 2F1 polynomials).
//! - [`cfo`]: complexified free operations — SL(2,C) Iwasawa factorization with
//!   its spin-s lift, random elements of e^{Cg}, and the weak-measurement Kraus
//!   channel family.
//! - [`structures`]: non-Lie preferred structures — the Pauli group with
//!   conjugation-image automorphism checks, the diagonal-matrix ring, Hamiltonian
//!   commutants, and local (bipartite) algebra checks.
//!
//! All randomness flows through [`linalg::rng::RngHandle`]; there is no global
//! RNG state, and a fixed seed reproduces every sample sequence bit for bit.

// Pull in the BLAS backend symbols (system OpenBLAS) for ndarray's gemm path.
extern crate blas_src;

pub mod cfo;
pub mod error;
pub mod linalg;
pub mod purity;
pub mod reps;
pub mod structures;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{hs_inner, mat_exp, qr_positive, DenseOperator, StateVector, C64};
pub use linalg::rng::RngHandle;
pub use purity::PurityValue;
pub use reps::LieRep;
