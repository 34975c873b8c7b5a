//! Majorana operators and the spinor representation of so(2n).

use super::{LieRep, RepKind};
use crate::error::{Error, Result};
use crate::linalg::{C64, DenseOperator, StateVector};

const MAX_MODES: u32 = 10;

/// 2n Hermitian anticommuting operators on 2^n dimensions, in the
/// Jordan-Wigner convention
/// c_{2j-1} = Z^(j-1) (x) X (x) I^(n-j),  c_{2j} = Z^(j-1) (x) Y (x) I^(n-j).
#[derive(Clone, Debug)]
pub struct MajoranaSet {
    modes: u32,
    ops: Vec<DenseOperator>,
}

impl MajoranaSet {
    pub fn modes(&self) -> u32 {
        self.modes
    }

    pub fn dim(&self) -> usize {
        1 << self.modes
    }

    /// The 2n Majorana operators, mode-major: ops[2j] is the X-type and
    /// ops[2j+1] the Y-type operator of mode j (0-based).
    pub fn ops(&self) -> &[DenseOperator] {
        &self.ops
    }

    /// Fermionic annihilation operators a_j = (c_{2j} + i c_{2j+1}) / 2.
    pub fn annihilation_ops(&self) -> Result<Vec<DenseOperator>> {
        (0..self.modes as usize)
            .map(|j| {
                let sum = self.ops[2 * j].add(&self.ops[2 * j + 1].scale(C64::new(0.0, 1.0)))?;
                Ok(sum.scale(C64::new(0.5, 0.0)))
            })
            .collect()
    }

    /// Largest anticommutation residual ||{c_u, c_v} - 2 delta_uv I||_F over
    /// all pairs. Exhaustive; intended for tests and verification suites.
    pub fn verify_anticommutation(&self) -> Result<f64> {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for u in 0..self.ops.len() {
            for v in u..self.ops.len() {
                let uv = self.ops[u].matmul(&self.ops[v])?;
                let vu = self.ops[v].matmul(&self.ops[u])?;
                let mut anti = uv.add(&vu)?;
                if u == v {
                    anti = anti.sub(&DenseOperator::identity(d).scale(C64::new(2.0, 0.0)))?;
                }
                worst = worst.max(anti.fro_norm());
            }
        }
        Ok(worst)
    }
}

fn pauli(letter: char) -> DenseOperator {
    match letter {
        'X' => DenseOperator::from_fn(2, |i, j| {
            if i != j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
        }),
        'Y' => DenseOperator::from_fn(2, |i, j| match (i, j) {
            (0, 1) => C64::new(0.0, -1.0),
            (1, 0) => C64::new(0.0, 1.0),
            _ => C64::new(0.0, 0.0),
        }),
        'Z' => DenseOperator::from_fn(2, |i, j| match (i, j) {
            (0, 0) => C64::new(1.0, 0.0),
            (1, 1) => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, 0.0),
        }),
        _ => DenseOperator::identity(2),
    }
}

fn jordan_wigner_string(modes: u32, site: u32, letter: char) -> DenseOperator {
    let mut op = DenseOperator::identity(1);
    for k in 0..modes {
        let factor = if k < site {
            pauli('Z')
        } else if k == site {
            pauli(letter)
        } else {
            DenseOperator::identity(2)
        };
        op = op.kron(&factor);
    }
    op
}

/// The 2n Jordan-Wigner Majorana operators for n fermionic modes.
pub fn majorana_ops(modes: u32) -> Result<MajoranaSet> {
    if modes == 0 || modes > MAX_MODES {
        return Err(Error::OutOfRange(format!(
            "modes must satisfy 1 <= n <= {MAX_MODES}, got {modes}"
        )));
    }
    let mut ops = Vec::with_capacity(2 * modes as usize);
    for j in 0..modes {
        ops.push(jordan_wigner_string(modes, j, 'X'));
        ops.push(jordan_wigner_string(modes, j, 'Y'));
    }
    Ok(MajoranaSet { modes, ops })
}

/// The spinor representation of so(2n): generators g_{uv} = i c_u c_v for
/// u < v (count n(2n-1)), Cartan generators i c_{2j} c_{2j+1} = -Z_j, and the
/// Jordan-Wigner Fock vacuum |0...0> as the extremal weight state (common
/// Cartan eigenvector with eigenvalue -1 in this operator ordering).
pub fn so2n_rep(modes: u32) -> Result<LieRep> {
    let majoranas = majorana_ops(modes)?;
    let n_ops = 2 * modes as usize;
    let mut generators = Vec::with_capacity(modes as usize * (2 * modes as usize - 1));
    let mut cartan_indices = Vec::with_capacity(modes as usize);
    for u in 0..n_ops {
        for v in (u + 1)..n_ops {
            if u % 2 == 0 && v == u + 1 {
                cartan_indices.push(generators.len());
            }
            let quad = majoranas.ops()[u]
                .matmul(&majoranas.ops()[v])?
                .scale(C64::new(0.0, 1.0));
            generators.push(quad);
        }
    }

    let vacuum = StateVector::basis(1 << modes, 0);
    LieRep::assemble(
        format!("so({})", 2 * modes),
        RepKind::So2n { modes },
        generators,
        cartan_indices,
        Vec::new(),
        vacuum,
        modes as usize,
    )
}
