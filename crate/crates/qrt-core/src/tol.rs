//! Numerical tolerances used across the crate.
//!
//! Every threshold a contract depends on is named here rather than inlined,
//! so the acceptance checks and the library agree on the same constants.

/// Hermiticity residual ||A - A^dag||_F for exact constructions.
pub const HERMITIAN: f64 = 1e-12;

/// Unitarity residual ||U^dag U - I||_F for computed unitaries.
pub const UNITARY: f64 = 1e-10;

/// Lie-closure residual after least-squares projection of a commutator
/// onto the generator span.
pub const CLOSURE: f64 = 1e-9;

/// Commutator residual for mutually commuting Cartan generators.
pub const CARTAN_COMMUTE: f64 = 1e-10;

/// Highest-weight conditions: simultaneous-eigenvector and raising-operator
/// annihilation residuals.
pub const HIGHEST_WEIGHT: f64 = 1e-10;

/// Pairwise Hilbert-Schmidt orthogonality after Gram-Schmidt.
pub const GS_ORTHOGONALITY: f64 = 1e-10;

/// Gram-Schmidt pivot below which the input set is declared dependent.
pub const GS_PIVOT: f64 = 1e-12;

/// Smallest singular value below which QR/Iwasawa inputs are rejected.
pub const QR_SINGULAR: f64 = 1e-12;

/// Smallest singular value below which a Ginibre sample is redrawn.
pub const GINIBRE_SINGULAR: f64 = 1e-8;

/// Kraus completeness residual ||sum_k M_k^dag M_k - I||_F.
pub const COMPLETENESS: f64 = 1e-10;

/// Channel probability bookkeeping |sum_k p_k - 1|.
pub const PROB_SUM: f64 = 1e-10;

/// Outcome probability below which a branch is marked null and excluded
/// from averages (avoids 0/0 normalization).
pub const NULL_OUTCOME: f64 = 1e-14;

/// State normalization residual |norm - 1| accepted by StateVector.
pub const STATE_NORM: f64 = 1e-12;

/// Normality detection for the matrix exponential,
/// ||A A^dag - A^dag A||_F < NORMALITY * ||A||_F^2.
pub const NORMALITY: f64 = 1e-12;

/// Agreement between the closed-form weight-state purity and the direct
/// matrix route.
pub const CLOSED_VS_DIRECT: f64 = 1e-8;

/// Purity of CFO images of coherent states (free-state preservation).
pub const FREE_STATE_PURITY: f64 = 1e-8;

/// Average-purity margin below which a channel run is flagged as a
/// genuine monotonicity violation.
pub const MARGIN: f64 = 1e-8;

/// Per-sample weight-state bound slack in the GL(2) sweep.
pub const WEIGHT_BOUND: f64 = 1e-9;

/// Entrywise tolerance for Pauli-image membership after phase alignment.
pub const PAULI_MATCH: f64 = 1e-10;

/// Commutant membership ||[M, H]||_F threshold.
pub const COMMUTANT: f64 = 1e-10;
