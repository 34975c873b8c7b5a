//! The weak-measurement Kraus family
//!
//!   M_{k_1 ... k_N} = 2^{-N/2} [cos(A) - (-1)^{k_N} sin(A)] ... [cos(A) - (-1)^{k_1} sin(A)]
//!
//! with A = epsilon sum_i h_i g_i Hermitian and k_t in {0,1}. All factors are
//! functions of the one Hermitian A, so they commute and the channel can be
//! assembled from the two step matrices cos(A) -/+ sin(A); the label order
//! (k_1 applied first, rightmost) is still fixed for reproducible bit labels.
//! Completeness sum_k M_k^dag M_k = I follows from cos^2 + sin^2 = I and is
//! asserted at construction.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::linalg::{eigh_decompose, C64, DenseOperator, StateVector};
use crate::reps::LieRep;
use crate::tol;

const MAX_OUTCOMES: usize = 4096;

/// An ordered family of Kraus operators with their outcome bit labels.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    kraus: Vec<DenseOperator>,
    labels: Vec<String>,
    epsilon: f64,
    steps: u32,
    couplings: Vec<f64>,
}

impl KrausChannel {
    pub fn operators(&self) -> &[DenseOperator] {
        &self.kraus
    }

    /// Outcome label "k_1 k_2 ... k_N" for each operator, as a bit string.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.kraus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus.is_empty()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn steps(&self) -> u32 {
        self.steps
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    /// || sum_k M_k^dag M_k - I ||_F.
    pub fn completeness_residual(&self) -> Result<f64> {
        let d = self.kraus[0].dim();
        let mut sum = DenseOperator::zeros(d);
        for m in &self.kraus {
            sum = sum.add(&m.dagger().matmul(m)?)?;
        }
        Ok(sum.sub(&DenseOperator::identity(d))?.fro_norm())
    }
}

/// One outcome of a channel application: probability and normalized
/// post-measurement state, or `None` for null branches (probability below
/// the shared null-outcome threshold).
#[derive(Clone, Debug)]
pub struct ChannelOutcome {
    pub index: usize,
    pub probability: f64,
    pub state: Option<StateVector>,
}

/// Hermitian coupling A = epsilon sum_i h_i g_i and its cosine/sine through
/// one shared eigendecomposition.
fn coupling_trig(
    rep: &LieRep,
    couplings: &[f64],
    epsilon: f64,
) -> Result<(DenseOperator, DenseOperator)> {
    let d = rep.dim();
    let mut a = DenseOperator::zeros(d);
    for (g, &h) in rep.generators().iter().zip(couplings) {
        a = a.add(&g.scale(C64::new(epsilon * h, 0.0)))?;
    }
    let (vals, vecs) = eigh_decompose(&a)?;
    let build = |f: &dyn Fn(f64) -> f64| -> DenseOperator {
        let mut scaled = Array2::<C64>::zeros((d, d));
        for j in 0..d {
            let fl = C64::new(f(vals[j]), 0.0);
            for i in 0..d {
                scaled[[i, j]] = vecs[[i, j]] * fl;
            }
        }
        DenseOperator::from_valid(scaled)
    };
    let vdag = DenseOperator::from_valid(vecs.clone()).dagger();
    let cos = build(&|x: f64| x.cos()).matmul(&vdag)?;
    let sin = build(&|x: f64| x.sin()).matmul(&vdag)?;
    Ok((cos, sin))
}

fn validate_channel_inputs(rep: &LieRep, couplings: &[f64], epsilon: f64, steps: u32) -> Result<usize> {
    if couplings.len() != rep.num_generators() {
        return Err(Error::DimMismatch(rep.num_generators(), couplings.len()));
    }
    if steps == 0 {
        return Err(Error::InvalidInput("steps must be at least one".into()));
    }
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidInput(format!("epsilon must be finite and >= 0, got {epsilon}")));
    }
    let outcomes = 1usize
        .checked_shl(steps)
        .filter(|&n| n <= MAX_OUTCOMES)
        .ok_or_else(|| Error::OutOfRange(format!("2^{steps} outcomes exceed {MAX_OUTCOMES}")))?;
    Ok(outcomes)
}

/// Build the 2^N weak-measurement Kraus operators for coupling vector h.
pub fn weak_meas_kraus(
    rep: &LieRep,
    couplings: &[f64],
    epsilon: f64,
    steps: u32,
) -> Result<KrausChannel> {
    let outcomes = validate_channel_inputs(rep, couplings, epsilon, steps)?;
    let (cos, sin) = coupling_trig(rep, couplings, epsilon)?;
    let minus = cos.sub(&sin)?; // k_t = 0 factor
    let plus = cos.add(&sin)?; // k_t = 1 factor

    // The factors commute, so an operator only depends on how many k_t are
    // set; build one product per weight and share it across labels.
    let n = steps as usize;
    let scale = C64::new(0.5f64.powf(n as f64 / 2.0), 0.0);
    let mut minus_powers = vec![DenseOperator::identity(rep.dim())];
    let mut plus_powers = vec![DenseOperator::identity(rep.dim())];
    for k in 1..=n {
        minus_powers.push(minus_powers[k - 1].matmul(&minus)?);
        plus_powers.push(plus_powers[k - 1].matmul(&plus)?);
    }
    let by_weight: Vec<DenseOperator> = (0..=n)
        .map(|w| {
            minus_powers[n - w]
                .matmul(&plus_powers[w])
                .map(|m| m.scale(scale))
        })
        .collect::<Result<_>>()?;

    let mut kraus = Vec::with_capacity(outcomes);
    let mut labels = Vec::with_capacity(outcomes);
    for index in 0..outcomes {
        let weight = index.count_ones() as usize;
        kraus.push(by_weight[weight].clone());
        let label: String = (0..steps).map(|t| if index >> t & 1 == 1 { '1' } else { '0' }).collect();
        labels.push(label);
    }

    let channel = KrausChannel {
        kraus,
        labels,
        epsilon,
        steps,
        couplings: couplings.to_vec(),
    };
    let residual = channel.completeness_residual()?;
    if residual > tol::COMPLETENESS {
        return Err(Error::Invariant(format!(
            "Kraus completeness residual {residual:.3e} exceeds {:.0e}",
            tol::COMPLETENESS
        )));
    }
    Ok(channel)
}

/// First-order envelopes of the weak-measurement family,
/// E_k = 2^{-N/2} exp[-epsilon sum_t (-1)^{k_t} sum_i h_i g_i]; the exponent
/// sign per step matches cos(A) - (-1)^{k_t} sin(A) = e^{-(-1)^{k_t} A} + O(A^2),
/// so ||M_k - E_k|| = O(N eps^2), indexed like the channel's labels.
pub fn first_order_envelopes(
    rep: &LieRep,
    couplings: &[f64],
    epsilon: f64,
    steps: u32,
) -> Result<Vec<DenseOperator>> {
    let outcomes = validate_channel_inputs(rep, couplings, epsilon, steps)?;
    let d = rep.dim();
    let mut a = DenseOperator::zeros(d);
    for (g, &h) in rep.generators().iter().zip(couplings) {
        a = a.add(&g.scale(C64::new(epsilon * h, 0.0)))?;
    }
    let (vals, vecs) = eigh_decompose(&a)?;
    let vecs = DenseOperator::from_valid(vecs);
    let vdag = vecs.dagger();
    let scale = C64::new(0.5f64.powf(steps as f64 / 2.0), 0.0);

    // exp(c A) per net exponent c = 2w - N, one for each weight w.
    let n = steps as usize;
    let mut by_weight = Vec::with_capacity(n + 1);
    for w in 0..=n {
        let net = (2 * w as i64 - n as i64) as f64;
        let mut scaled = vecs.clone().into_mat();
        for j in 0..d {
            let f = C64::new((net * vals[j]).exp(), 0.0);
            for i in 0..d {
                scaled[[i, j]] *= f;
            }
        }
        by_weight.push(DenseOperator::from_valid(scaled).matmul(&vdag)?.scale(scale));
    }

    Ok((0..outcomes)
        .map(|index| by_weight[index.count_ones() as usize].clone())
        .collect())
}

/// max_k || M_k - E_k ||_F between the channel and its first-order envelopes.
pub fn first_order_max_deviation(
    rep: &LieRep,
    couplings: &[f64],
    epsilon: f64,
    steps: u32,
) -> Result<f64> {
    let channel = weak_meas_kraus(rep, couplings, epsilon, steps)?;
    let envelopes = first_order_envelopes(rep, couplings, epsilon, steps)?;
    let mut worst: f64 = 0.0;
    for (m, e) in channel.operators().iter().zip(&envelopes) {
        worst = worst.max(m.sub(e)?.fro_norm());
    }
    Ok(worst)
}

/// Apply the channel to a pure state: p_k = <psi| M_k^dag M_k |psi> and
/// |phi_k> = M_k |psi> / sqrt(p_k), with null branches marked rather than
/// normalized. Asserts sum_k p_k = 1 within the shared tolerance.
pub fn apply_channel(channel: &KrausChannel, psi: &StateVector) -> Result<Vec<ChannelOutcome>> {
    let dev = (psi.norm() - 1.0).abs();
    if dev > tol::STATE_NORM {
        return Err(Error::NotNormalized(dev));
    }
    let mut outcomes = Vec::with_capacity(channel.len());
    let mut total = 0.0;
    for (index, m) in channel.operators().iter().enumerate() {
        let image = StateVector::unnormalized(m.matvec(psi)?)?;
        let probability = image.norm().powi(2);
        total += probability;
        let state = if probability < tol::NULL_OUTCOME {
            None
        } else {
            Some(image.normalized()?)
        };
        outcomes.push(ChannelOutcome { index, probability, state });
    }
    if (total - 1.0).abs() > tol::PROB_SUM {
        return Err(Error::Invariant(format!(
            "channel probabilities sum to {total}, off by {:.3e}",
            (total - 1.0).abs()
        )));
    }
    Ok(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rng::RngHandle;
    use crate::reps::{su2_rep, weight_state};

    fn uniform_couplings(rep: &LieRep, seed: u64) -> Vec<f64> {
        let mut rng = RngHandle::new(seed);
        (0..rep.num_generators()).map(|_| rng.uniform(-1.0, 1.0)).collect()
    }

    #[test]
    fn single_step_completeness_identity() {
        // N=1: {(C-S)/sqrt2, (C+S)/sqrt2} and (C-S)^2/2 + (C+S)^2/2 = C^2+S^2 = I.
        let rep = su2_rep(10).unwrap();
        let h = uniform_couplings(&rep, 1);
        let channel = weak_meas_kraus(&rep, &h, 0.3, 1).unwrap();
        assert_eq!(channel.len(), 2);
        assert!(channel.completeness_residual().unwrap() < 1e-12);
    }

    #[test]
    fn zero_strength_gives_scaled_identities() {
        let rep = su2_rep(4).unwrap();
        let h = vec![0.7, -0.2, 0.4];
        let channel = weak_meas_kraus(&rep, &h, 0.0, 3).unwrap();
        let expected = DenseOperator::identity(5).scale(C64::new(0.5f64.powf(1.5), 0.0));
        for m in channel.operators() {
            assert!(m.sub(&expected).unwrap().fro_norm() < 1e-14);
        }
    }

    #[test]
    fn paper_scale_channel() {
        // epsilon = 0.02, N = 5 at s = 5: 32 operators on d = 11.
        let rep = su2_rep(10).unwrap();
        let h = uniform_couplings(&rep, 2);
        let channel = weak_meas_kraus(&rep, &h, 0.02, 5).unwrap();
        assert_eq!(channel.len(), 32);
        assert_eq!(channel.operators()[0].dim(), 11);
        assert!(channel.completeness_residual().unwrap() < tol::COMPLETENESS);
        assert_eq!(channel.labels()[0], "00000");
        assert_eq!(channel.labels()[1], "10000"); // k_1 is the first character
        assert_eq!(channel.labels()[31], "11111");
    }

    #[test]
    fn completeness_invariant_under_coupling_permutation() {
        let rep = su2_rep(6).unwrap();
        let h = vec![0.9, -0.5, 0.1];
        let shuffled = vec![0.1, 0.9, -0.5];
        for couplings in [h, shuffled] {
            let channel = weak_meas_kraus(&rep, &couplings, 0.4, 4).unwrap();
            assert!(channel.completeness_residual().unwrap() < tol::COMPLETENESS);
        }
    }

    #[test]
    fn input_validation() {
        let rep = su2_rep(4).unwrap();
        assert!(weak_meas_kraus(&rep, &[0.1, 0.2], 0.1, 2).is_err()); // wrong h length
        assert!(weak_meas_kraus(&rep, &[0.1, 0.2, 0.3], 0.1, 0).is_err()); // no steps
        assert!(weak_meas_kraus(&rep, &[0.1, 0.2, 0.3], 0.1, 13).is_err()); // 2^13 > 4096
    }

    #[test]
    fn trivial_channel_outcomes() {
        let rep = su2_rep(10).unwrap();
        let channel = weak_meas_kraus(&rep, &[0.3, 0.3, 0.3], 0.0, 5).unwrap();
        let mut rng = RngHandle::new(3);
        let psi = rng.haar_state(11).unwrap();
        let outcomes = apply_channel(&channel, &psi).unwrap();
        for outcome in &outcomes {
            assert!((outcome.probability - 1.0 / 32.0).abs() < 1e-12);
            let overlap = outcome.state.as_ref().unwrap().inner(&psi).unwrap();
            assert!((overlap.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_step_on_weight_state_by_hand() {
        // h = (0,0,1): A = eps J_z acts diagonally on |s,m>, so
        // p_0 = (cos eps m - sin eps m)^2 / 2 and p_1 = (cos + sin)^2 / 2.
        let rep = su2_rep(10).unwrap();
        let eps = 0.31;
        let channel = weak_meas_kraus(&rep, &[0.0, 0.0, 1.0], eps, 1).unwrap();
        let psi = weight_state(&rep, 6).unwrap(); // m = 3
        let outcomes = apply_channel(&channel, &psi).unwrap();
        let (c, s) = ((eps * 3.0).cos(), (eps * 3.0).sin());
        assert!((outcomes[0].probability - (c - s).powi(2) / 2.0).abs() < 1e-12);
        assert!((outcomes[1].probability - (c + s).powi(2) / 2.0).abs() < 1e-12);
        let total: f64 = outcomes.iter().map(|o| o.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn probabilities_sum_to_one_on_random_channels() {
        let rep = su2_rep(10).unwrap();
        let mut rng = RngHandle::new(10);
        for trial in 0..10 {
            let h = uniform_couplings(&rep, 100 + trial);
            let channel = weak_meas_kraus(&rep, &h, 0.5, 4).unwrap();
            let psi = rng.haar_state(11).unwrap();
            let outcomes = apply_channel(&channel, &psi).unwrap();
            let total: f64 = outcomes.iter().map(|o| o.probability).sum();
            assert!((total - 1.0).abs() < tol::PROB_SUM);
        }
    }

    #[test]
    fn first_order_deviation_shrinks_quadratically() {
        let rep = su2_rep(10).unwrap();
        let h = uniform_couplings(&rep, 7);
        let coarse = first_order_max_deviation(&rep, &h, 0.04, 5).unwrap();
        let fine = first_order_max_deviation(&rep, &h, 0.02, 5).unwrap();
        assert!(
            coarse / fine >= 3.5,
            "halving epsilon shrank the deviation by only {:.2}x",
            coarse / fine
        );
    }

    #[test]
    fn cartan_only_channel_fixes_highest_weight() {
        // Couplings supported on the Cartan direction keep every Kraus
        // operator triangular-diagonal on |HW>, so each outcome returns the
        // state itself up to phase.
        let rep = su2_rep(10).unwrap();
        let mut h = vec![0.0; 3];
        h[rep.cartan_indices()[0]] = 0.8;
        let channel = weak_meas_kraus(&rep, &h, 0.3, 4).unwrap();
        let outcomes = apply_channel(&channel, rep.hw_state()).unwrap();
        for outcome in outcomes {
            let state = outcome.state.expect("no null branches here");
            let overlap = state.inner(rep.hw_state()).unwrap().norm();
            assert!((overlap - 1.0).abs() < 1e-10);
        }
    }
}
