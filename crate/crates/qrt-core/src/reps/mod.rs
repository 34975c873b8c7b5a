//! Concrete Lie-algebra representations with Cartan data and a
//! highest-weight state.

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt_hs, hs_inner, DenseOperator, StateVector};
use crate::tol;

mod fermions;
mod su2;

pub use fermions::{majorana_ops, so2n_rep, MajoranaSet};
pub use su2::{ladder_coefficient, su2_rep, weight_state};

/// Which representation a [`LieRep`] holds; drivers dispatch on this.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    /// Spin-s irrep of su(2); `two_s` = 2s.
    Su2 { two_s: u32 },
    /// Spinor representation of so(2n) from Majorana quadratics.
    So2n { modes: u32 },
}

/// A named list of Hermitian basis generators of a Lie-algebra representation,
/// with Cartan metadata and a highest-weight state.
///
/// Construction validates Hermiticity, pairwise Hilbert-Schmidt orthogonality
/// (via [`gram_schmidt_hs`], which passes already-orthogonal sets through
/// unchanged), mutual commutation of the Cartan generators, and the
/// highest-weight conditions. Lie closure is exhaustive over generator pairs
/// and therefore exposed separately as [`LieRep::verify_closure`].
#[derive(Clone, Debug)]
pub struct LieRep {
    name: String,
    kind: RepKind,
    dim: usize,
    generators: Vec<DenseOperator>,
    cartan_indices: Vec<usize>,
    raising_ops: Vec<DenseOperator>,
    hw_state: StateVector,
    rank: usize,
    purity_norm: f64,
}

impl LieRep {
    pub(crate) fn assemble(
        name: String,
        kind: RepKind,
        generators: Vec<DenseOperator>,
        cartan_indices: Vec<usize>,
        raising_ops: Vec<DenseOperator>,
        hw_state: StateVector,
        rank: usize,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("empty generator set".into()));
        }
        let dim = generators[0].dim();
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimMismatch(dim, g.dim()));
            }
            let dev = g.sub(&g.dagger())?.fro_norm();
            if dev > tol::HERMITIAN * g.fro_norm().max(1.0) {
                return Err(Error::Invariant(format!(
                    "generator not Hermitian (residual {dev:.3e})"
                )));
            }
        }
        if hw_state.dim() != dim {
            return Err(Error::DimMismatch(dim, hw_state.dim()));
        }

        // Orthogonality of the basis; already-orthogonal inputs (all the
        // representations built here) come back unchanged.
        let generators = gram_schmidt_hs(&generators)?;

        for (a, &i) in cartan_indices.iter().enumerate() {
            for &j in cartan_indices.iter().skip(a + 1) {
                let res = generators[i].commutator(&generators[j])?.fro_norm();
                if res > tol::CARTAN_COMMUTE {
                    return Err(Error::Invariant(format!(
                        "Cartan generators {i},{j} do not commute (residual {res:.3e})"
                    )));
                }
            }
        }

        for &i in &cartan_indices {
            let image = generators[i].matvec(&hw_state)?;
            let eig = hw_state.expectation(&generators[i])?;
            let res: f64 = image
                .iter()
                .zip(hw_state.amplitudes().iter())
                .map(|(y, x)| (y - eig * x).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if res > tol::HIGHEST_WEIGHT {
                return Err(Error::Invariant(format!(
                    "highest-weight state is not a Cartan eigenvector (residual {res:.3e})"
                )));
            }
        }
        for r in &raising_ops {
            let res = r
                .matvec(&hw_state)?
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt();
            if res > tol::HIGHEST_WEIGHT {
                return Err(Error::Invariant(format!(
                    "raising operator does not annihilate the highest-weight state \
                     (residual {res:.3e})"
                )));
            }
        }

        let mut purity_norm = 0.0;
        for g in &generators {
            let e = hw_state.expectation(g)?;
            purity_norm += e.re * e.re;
        }
        if purity_norm <= f64::EPSILON {
            return Err(Error::Invariant(
                "highest-weight purity normalization vanished".into(),
            ));
        }

        Ok(Self {
            name,
            kind,
            dim,
            generators,
            cartan_indices,
            raising_ops,
            hw_state,
            rank,
            purity_norm,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[DenseOperator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn cartan_indices(&self) -> &[usize] {
        &self.cartan_indices
    }

    /// Raising operators; empty when the representation does not carry them.
    pub fn raising_ops(&self) -> &[DenseOperator] {
        &self.raising_ops
    }

    pub fn hw_state(&self) -> &StateVector {
        &self.hw_state
    }

    /// Dimension of the Cartan subalgebra.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// N = sum_i <HW| g_i |HW>^2, the purity normalization fixed by the
    /// highest-weight state.
    pub fn purity_norm(&self) -> f64 {
        self.purity_norm
    }

    /// Exhaustive Lie-closure check: for every generator pair, project
    /// i[g_i, g_j] onto the real span of the generators and return the largest
    /// residual. Quadratic in the number of generators; call from tests and
    /// verification suites, not per-sample code.
    pub fn verify_closure(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        let norms_sq: Vec<f64> = self.generators.iter().map(|g| g.fro_norm().powi(2)).collect();
        for i in 0..self.generators.len() {
            for j in (i + 1)..self.generators.len() {
                let x = self.generators[i]
                    .commutator(&self.generators[j])?
                    .scale(crate::linalg::C64::new(0.0, 1.0));
                let mut residual = x.clone();
                for (k, g) in self.generators.iter().enumerate() {
                    let coeff = hs_inner(g, &x)?.re / norms_sq[k];
                    if coeff != 0.0 {
                        residual = residual.sub(&g.scale(crate::linalg::C64::new(coeff, 0.0)))?;
                    }
                }
                worst = worst.max(residual.fro_norm());
            }
        }
        Ok(worst)
    }
}
