//! Witness suite for the non-Lie preferred structures: every claimed
//! automorphism example passes its predicate and every claimed non-example
//! fails it.

use std::time::Instant;

use qrt_core::linalg::rng::RngHandle;
use qrt_core::linalg::{C64, DenseOperator};
use qrt_core::mat_exp;
use qrt_core::structures::{
    commutant_member, conjugation_is_automorphism, generalized_permutation_preserves_ring,
    local_algebra_check, pauli_group, CommutantSpec, PauliElement, PauliLetter,
};

use crate::report::{CheckRow, ExperimentReport, ReportMeta, Summary};
use crate::{ExperimentConfig, Result};

fn check(name: &str, passed: bool, detail: String) -> CheckRow {
    CheckRow { check: name.to_string(), passed, detail }
}

fn hadamard() -> DenseOperator {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    DenseOperator::from_fn(2, |i, j| {
        if (i, j) == (1, 1) { C64::new(-h, 0.0) } else { C64::new(h, 0.0) }
    })
}

fn phase_gate() -> DenseOperator {
    DenseOperator::from_fn(2, |i, j| match (i, j) {
        (0, 0) => C64::new(1.0, 0.0),
        (1, 1) => C64::new(0.0, 1.0),
        _ => C64::new(0.0, 0.0),
    })
}

fn t_gate() -> DenseOperator {
    DenseOperator::from_fn(2, |i, j| match (i, j) {
        (0, 0) => C64::new(1.0, 0.0),
        (1, 1) => C64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
        _ => C64::new(0.0, 0.0),
    })
}

fn cnot() -> DenseOperator {
    DenseOperator::from_fn(4, |i, j| {
        let image = match i {
            0 => 0,
            1 => 1,
            2 => 3,
            _ => 2,
        };
        if j == image { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
    })
}

pub fn run_structures_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport<CheckRow>> {
    let started = Instant::now();
    let mut rows = Vec::new();

    // Pauli group closure and inverses, exhaustively at n <= 2.
    for qubits in [1u32, 2] {
        let group = pauli_group(qubits)?;
        let lookup: std::collections::HashSet<_> = group.iter().cloned().collect();
        let mut closed = true;
        let mut inverses = true;
        for a in &group {
            if !lookup.contains(&a.inverse()) {
                inverses = false;
            }
            for b in &group {
                if !lookup.contains(&a.mul(b)?) {
                    closed = false;
                }
            }
        }
        rows.push(check(
            &format!("pauli_closure_n{qubits}"),
            closed,
            format!("{} elements", group.len()),
        ));
        rows.push(check(
            &format!("pauli_inverses_n{qubits}"),
            inverses,
            "every element has a group inverse".into(),
        ));
    }

    // Clifford generators pass the conjugation-image test.
    for (name, gate, qubits) in [
        ("clifford_hadamard", hadamard(), 1u32),
        ("clifford_phase", phase_gate(), 1),
        ("clifford_cnot", cnot(), 2),
    ] {
        let (ok, cert) = conjugation_is_automorphism(&gate, qubits)?;
        let images: Vec<String> = cert
            .images
            .iter()
            .map(|g| {
                format!("{}->{}", g.generator, g.image.clone().unwrap_or_else(|| "?".into()))
            })
            .collect();
        rows.push(check(name, ok, images.join(", ")));
    }

    // Non-Clifford gates must fail it.
    let (t_ok, _) = conjugation_is_automorphism(&t_gate(), 1)?;
    rows.push(check("t_gate_rejected", !t_ok, "T conjugates X off the Pauli frame".into()));
    let x = PauliElement::single(1, 0, PauliLetter::X).matrix();
    let eighth = mat_exp(&x.scale(C64::new(0.0, std::f64::consts::PI / 8.0)))?;
    let (e_ok, cert) = conjugation_is_automorphism(&eighth, 1)?;
    let x_image_stays = cert.images[0].image.is_some();
    rows.push(check(
        "x_axis_eighth_rejected",
        !e_ok && x_image_stays,
        "X image stays Pauli, Z image escapes".into(),
    ));

    // Ring of diagonal matrices: generalized permutations pass, Hadamard fails.
    let permutation = DenseOperator::from_fn(3, |i, j| {
        if j == (i + 1) % 3 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
    });
    rows.push(check(
        "ring_permutation",
        generalized_permutation_preserves_ring(&permutation, 3)?,
        "cyclic permutation".into(),
    ));
    let diagonal = DenseOperator::from_fn(3, |i, j| {
        if i == j { C64::new([2.0, 3.0, 1.0][i], 0.0) } else { C64::new(0.0, 0.0) }
    });
    rows.push(check(
        "ring_diagonal",
        generalized_permutation_preserves_ring(&diagonal, 3)?,
        "diag(2,3,1)".into(),
    ));
    rows.push(check(
        "ring_hadamard_rejected",
        !generalized_permutation_preserves_ring(&hadamard(), 2)?,
        "Hadamard mixes diagonals".into(),
    ));

    // Hamiltonian commutant witnesses.
    let ha = DenseOperator::from_fn(2, |i, j| {
        if i == j { C64::new(1.0 + i as f64, 0.0) } else { C64::new(0.0, 0.0) }
    });
    let hb = DenseOperator::from_fn(2, |i, j| {
        if i == j { C64::new(0.5 + 0.2 * i as f64, 0.0) } else { C64::new(0.0, 0.0) }
    });
    let bipartite = ha
        .kron(&DenseOperator::identity(2))
        .add(&DenseOperator::identity(2).kron(&hb))?;
    let spec = CommutantSpec::new(bipartite.clone())?;
    let polynomial = bipartite
        .matmul(&bipartite)?
        .add(&bipartite.scale(C64::new(-0.7, 0.0)))?
        .add(&DenseOperator::identity(4).scale(C64::new(2.0, 0.0)))?;
    rows.push(check(
        "commutant_polynomial",
        commutant_member(&polynomial, &spec)?,
        "quadratic polynomial in H".into(),
    ));
    let projector_combo = DenseOperator::from_fn(4, |i, j| {
        if i == j { C64::new(1.0 + i as f64, 0.0) } else { C64::new(0.0, 0.0) }
    });
    rows.push(check(
        "commutant_eigenprojector",
        commutant_member(&projector_combo, &spec)?,
        "weighted eigenprojector sum".into(),
    ));
    let mut rng = RngHandle::new(cfg.seed);
    let generic = rng.ginibre(4)?;
    rows.push(check(
        "commutant_generic_rejected",
        !commutant_member(&generic, &spec)?,
        "Ginibre sample does not commute".into(),
    ));

    // Local algebra: closure, product-unitary invariance, SWAP.
    let square = local_algebra_check(2, 2)?;
    rows.push(check(
        "local_algebra_2x2",
        square.passed && square.swap_residual.is_some(),
        format!(
            "closure {:.1e}, conjugation {:.1e}, swap {:.1e}",
            square.closure_residual,
            square.conjugation_residual,
            square.swap_residual.unwrap_or(f64::NAN)
        ),
    ));
    let rect = local_algebra_check(2, 3)?;
    rows.push(check(
        "local_algebra_2x3_swap_skipped",
        rect.passed && rect.swap_residual.is_none(),
        "unequal factors carry no swap automorphism".into(),
    ));

    let all_passed = rows.iter().all(|r| r.passed);
    let summary = Summary {
        rows: rows.len(),
        all_passed: Some(all_passed),
        violations: rows.iter().filter(|r| !r.passed).count(),
        ..Summary::default()
    };
    Ok(ExperimentReport {
        meta: ReportMeta::new("structures", cfg, started.elapsed().as_secs_f64()),
        rows,
        summary,
    })
}
