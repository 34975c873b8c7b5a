//! Non-Lie preferred structures and their automorphism witnesses: the Pauli
//! group under conjugation, the ring of diagonal matrices under generalized
//! permutations, Hamiltonian commutants, and local (bipartite) algebras.

use ndarray_linalg::{Inverse, SVD};

use crate::error::{Error, Result};
use crate::linalg::{hs_inner, C64, DenseOperator};
use crate::tol;

mod pauli;

pub use pauli::{pauli_group, PauliElement, PauliLetter};

/// Image of one conjugated generator, when it lands in the Pauli group.
#[derive(Clone, Debug)]
pub struct GeneratorImage {
    pub generator: String,
    /// Matched group element, or `None` when the image is not Pauli.
    pub image: Option<String>,
    /// Entrywise residual against the matched element after phase alignment.
    pub residual: f64,
}

/// Certificate listing the image of every X_i, Z_i generator.
#[derive(Clone, Debug)]
pub struct PauliConjugationCertificate {
    pub images: Vec<GeneratorImage>,
}

fn invertibility_check(m: &DenseOperator) -> Result<DenseOperator> {
    let (_, s, _) = m.mat().svd(false, false)?;
    let smallest = s.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smallest > tol::QR_SINGULAR) {
        return Err(Error::Singular(format!(
            "smallest singular value {smallest:.3e}"
        )));
    }
    Ok(DenseOperator::from_valid(m.mat().inv()?))
}

/// Phase of the largest-magnitude entry; dividing by it aligns matrices that
/// differ only by a global phase.
fn alignment_phase(m: &DenseOperator) -> C64 {
    let mut best = C64::new(1.0, 0.0);
    let mut best_mag = 0.0;
    for z in m.mat().iter() {
        let mag = z.norm();
        if mag > best_mag {
            best_mag = mag;
            best = z / mag;
        }
    }
    best
}

/// Match a matrix against the Pauli group: returns the group element i^p W
/// it equals (entrywise within the shared tolerance after phase alignment),
/// together with the residual of the best candidate.
fn match_pauli(candidate: &DenseOperator, qubits: u32) -> Result<(Option<PauliElement>, f64)> {
    let aligned_phase = alignment_phase(candidate);
    let aligned = candidate.scale(C64::new(1.0, 0.0) / aligned_phase);
    let mut best_residual = f64::INFINITY;
    for word in pauli::pauli_words(qubits)? {
        let w = word.matrix();
        let w_phase = alignment_phase(&w);
        let w_aligned = w.scale(C64::new(1.0, 0.0) / w_phase);
        let residual = aligned.sub(&w_aligned)?.max_abs();
        best_residual = best_residual.min(residual);
        if residual < tol::PAULI_MATCH {
            // The full ratio must be a quarter turn for group membership.
            let ratio = aligned_phase / w_phase;
            for p in 0..4u8 {
                let quarter = C64::new(0.0, 1.0).powu(p as u32);
                if (ratio - quarter).norm() < 1e-8 {
                    return Ok((Some(PauliElement::new(p, word.word().to_vec())), residual));
                }
            }
            // Phase-aligned match with a non-quarter global phase: not a
            // group element.
            return Ok((None, residual));
        }
    }
    Ok((None, best_residual))
}

/// Does conjugation by U map every Pauli generator X_i, Z_i back into the
/// Pauli group? Returns the verdict with a per-generator certificate.
pub fn conjugation_is_automorphism(
    u: &DenseOperator,
    qubits: u32,
) -> Result<(bool, PauliConjugationCertificate)> {
    if qubits == 0 || qubits > pauli::MAX_QUBITS {
        return Err(Error::OutOfRange(format!(
            "conjugation check supports 1..={} qubits",
            pauli::MAX_QUBITS
        )));
    }
    let d = 1usize << qubits;
    if u.dim() != d {
        return Err(Error::DimMismatch(d, u.dim()));
    }
    let u_inv = invertibility_check(u)?;

    let mut images = Vec::new();
    let mut all_pauli = true;
    for site in 0..qubits as usize {
        for letter in [PauliLetter::X, PauliLetter::Z] {
            let generator = PauliElement::single(qubits as usize, site, letter);
            let conjugated = u.matmul(&generator.matrix())?.matmul(&u_inv)?;
            let (matched, residual) = match_pauli(&conjugated, qubits)?;
            if matched.is_none() {
                all_pauli = false;
            }
            images.push(GeneratorImage {
                generator: generator.label(),
                image: matched.map(|m| m.label()),
                residual,
            });
        }
    }
    Ok((all_pauli, PauliConjugationCertificate { images }))
}

/// Does conjugation by P keep every diagonal matrix diagonal? Checked on the
/// one-hot diagonal basis of the ring.
pub fn generalized_permutation_preserves_ring(p: &DenseOperator, dim: usize) -> Result<bool> {
    if p.dim() != dim {
        return Err(Error::DimMismatch(dim, p.dim()));
    }
    let p_inv = invertibility_check(p)?;
    for k in 0..dim {
        let basis = DenseOperator::from_fn(dim, |i, j| {
            if i == k && j == k { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
        });
        let image = p.matmul(&basis)?.matmul(&p_inv)?;
        for ((i, j), z) in image.mat().indexed_iter() {
            if i != j && z.norm() > tol::PAULI_MATCH {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The thermodynamic structure: a single preserved Hamiltonian.
#[derive(Clone, Debug)]
pub struct CommutantSpec {
    hamiltonian: DenseOperator,
}

impl CommutantSpec {
    pub fn new(hamiltonian: DenseOperator) -> Result<Self> {
        if !hamiltonian.is_hermitian(tol::HERMITIAN * hamiltonian.fro_norm().max(1.0)) {
            return Err(Error::InvalidInput("Hamiltonian must be Hermitian".into()));
        }
        Ok(Self { hamiltonian })
    }

    pub fn hamiltonian(&self) -> &DenseOperator {
        &self.hamiltonian
    }
}

/// Member of {M in GL | [M, H] = 0}: commutes with H and invertible.
pub fn commutant_member(m: &DenseOperator, spec: &CommutantSpec) -> Result<bool> {
    if m.dim() != spec.hamiltonian.dim() {
        return Err(Error::DimMismatch(spec.hamiltonian.dim(), m.dim()));
    }
    let commutator_norm = m.commutator(&spec.hamiltonian)?.fro_norm();
    if commutator_norm >= tol::COMMUTANT {
        return Ok(false);
    }
    Ok(invertibility_check(m).is_ok())
}

/// Results of the bipartite local-algebra verification.
#[derive(Clone, Debug)]
pub struct LocalAlgebraReport {
    pub dim_a: usize,
    pub dim_b: usize,
    /// Largest projection residual of [i g, i g'] over the local span.
    pub closure_residual: f64,
    /// Largest projection residual of U_A (x) U_B conjugated generators.
    pub conjugation_residual: f64,
    /// SWAP conjugation residual of A-local generators against the B-local
    /// span; `None` when the factors differ (no outer automorphism).
    pub swap_residual: Option<f64>,
    pub passed: bool,
}

/// Hermitian traceless basis of su(d): symmetric / antisymmetric off-diagonal
/// pairs plus the diagonal ladder combinations.
fn traceless_hermitian_basis(dim: usize) -> Vec<DenseOperator> {
    let mut basis = Vec::with_capacity(dim * dim - 1);
    let zero = C64::new(0.0, 0.0);
    for j in 0..dim {
        for k in (j + 1)..dim {
            basis.push(DenseOperator::from_fn(dim, |r, c| {
                if (r, c) == (j, k) || (r, c) == (k, j) { C64::new(1.0, 0.0) } else { zero }
            }));
            basis.push(DenseOperator::from_fn(dim, |r, c| {
                if (r, c) == (j, k) {
                    C64::new(0.0, 1.0)
                } else if (r, c) == (k, j) {
                    C64::new(0.0, -1.0)
                } else {
                    zero
                }
            }));
        }
    }
    for l in 1..dim {
        basis.push(DenseOperator::from_fn(dim, |r, c| {
            if r != c {
                zero
            } else if r < l {
                C64::new(1.0, 0.0)
            } else if r == l {
                C64::new(-(l as f64), 0.0)
            } else {
                zero
            }
        }));
    }
    basis
}

/// Residual of x after least-squares projection onto a mutually orthogonal
/// Hermitian set.
fn projection_residual(x: &DenseOperator, basis: &[DenseOperator]) -> Result<f64> {
    let mut residual = x.clone();
    for b in basis {
        let coeff = hs_inner(b, x)?.re / b.fro_norm().powi(2);
        if coeff != 0.0 {
            residual = residual.sub(&b.scale(C64::new(coeff, 0.0)))?;
        }
    }
    Ok(residual.fro_norm())
}

/// Verify the local algebra u(A) (+) u(B) at small dimension: Lie closure of
/// the local generator set, invariance under product-unitary conjugation, and
/// the SWAP outer automorphism when the factors match.
pub fn local_algebra_check(dim_a: usize, dim_b: usize) -> Result<LocalAlgebraReport> {
    if dim_a < 2 || dim_b < 2 || dim_a * dim_b > 16 {
        return Err(Error::OutOfRange(format!(
            "local algebra check expects 2 <= d_A, d_B with d_A * d_B <= 16, got {dim_a}x{dim_b}"
        )));
    }
    let d = dim_a * dim_b;
    let eye_a = DenseOperator::identity(dim_a);
    let eye_b = DenseOperator::identity(dim_b);

    // Orthogonal Hermitian basis of the local span: the global identity, the
    // traceless A factors, and the traceless B factors.
    let a_side: Vec<DenseOperator> =
        traceless_hermitian_basis(dim_a).iter().map(|p| p.kron(&eye_b)).collect();
    let b_side: Vec<DenseOperator> =
        traceless_hermitian_basis(dim_b).iter().map(|p| eye_a.kron(p)).collect();
    let mut full = vec![DenseOperator::identity(d)];
    full.extend(a_side.iter().cloned());
    full.extend(b_side.iter().cloned());

    let mut closure_residual: f64 = 0.0;
    for i in 0..full.len() {
        for j in (i + 1)..full.len() {
            let x = full[i].commutator(&full[j])?.scale(C64::new(0.0, 1.0));
            closure_residual = closure_residual.max(projection_residual(&x, &full)?);
        }
    }

    // Product unitaries act within the span.
    let mut rng = crate::linalg::rng::RngHandle::new(0x10ca1);
    let ua = rng.haar_unitary(dim_a)?;
    let ub = rng.haar_unitary(dim_b)?;
    let product = ua.kron(&ub);
    let product_dag = product.dagger();
    let mut conjugation_residual: f64 = 0.0;
    for g in &full {
        let image = product.matmul(g)?.matmul(&product_dag)?;
        conjugation_residual = conjugation_residual.max(projection_residual(&image, &full)?);
    }

    // SWAP sends A-local generators onto the B-local span.
    let swap_residual = if dim_a == dim_b {
        let swap = DenseOperator::from_fn(d, |row, col| {
            let (a_out, b_out) = (row / dim_b, row % dim_b);
            let (a_in, b_in) = (col / dim_b, col % dim_b);
            if a_out == b_in && b_out == a_in { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
        });
        let mut worst: f64 = 0.0;
        for g in &a_side {
            let image = swap.matmul(g)?.matmul(&swap)?;
            worst = worst.max(projection_residual(&image, &b_side)?);
        }
        Some(worst)
    } else {
        None
    };

    let passed = closure_residual < tol::PAULI_MATCH
        && conjugation_residual < tol::PAULI_MATCH
        && swap_residual.map(|r| r < tol::PAULI_MATCH).unwrap_or(true);

    Ok(LocalAlgebraReport {
        dim_a,
        dim_b,
        closure_residual,
        conjugation_residual,
        swap_residual,
        passed,
    })
}
