//! Seeded random sampling.
//!
//! All randomness flows through [`RngHandle`]; there is no global RNG state.
//! A handle is single-owner: parallel workers receive independent handles
//! derived from (seed, worker-index) through a fixed mixing function, so a
//! run is reproducible regardless of scheduling.

use ndarray::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use super::{C64, DenseOperator, StateVector, qr_positive};
use crate::error::{Error, Result};
use crate::tol;

/// splitmix64 finalizer; used to derive child seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A seeded random stream. Same seed, same sample sequence, bit for bit.
#[derive(Clone, Debug)]
pub struct RngHandle {
    seed: u64,
    stream: ChaCha12Rng,
}

impl RngHandle {
    pub fn new(seed: u64) -> Self {
        Self { seed, stream: ChaCha12Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent handle for a worker. Derivation uses only the parent seed
    /// and the index, never the parent's stream position, so children are
    /// stable no matter how much the parent has been consumed.
    pub fn child(&self, index: u64) -> Self {
        Self::new(splitmix64(self.seed ^ splitmix64(index.wrapping_add(1))))
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.stream.sample(StandardNormal)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.stream.random_range(lo..hi)
    }

    /// Standard complex Gaussian entry, E|z|^2 = 1.
    fn complex_gaussian(&mut self) -> C64 {
        let re: f64 = self.stream.sample(StandardNormal);
        let im: f64 = self.stream.sample(StandardNormal);
        C64::new(re, im) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    }

    /// Square matrix of i.i.d. standard complex Gaussians, redrawn while the
    /// smallest singular value sits below the invertibility guard.
    pub fn ginibre(&mut self, dim: usize) -> Result<DenseOperator> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        loop {
            let mat = Array2::from_shape_simple_fn((dim, dim), || self.complex_gaussian());
            let op = DenseOperator::new(mat)?;
            if smallest_singular_value(&op)? >= tol::GINIBRE_SINGULAR {
                return Ok(op);
            }
        }
    }

    /// Haar-distributed unitary: Ginibre sample, QR factorization, and the
    /// positive-diagonal gauge on R (which makes Q Haar rather than merely
    /// unitary).
    pub fn haar_unitary(&mut self, dim: usize) -> Result<DenseOperator> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let g = self.ginibre(dim)?;
        let (q, _) = qr_positive(&g)?;
        Ok(q)
    }

    /// Haar-distributed pure state: normalized standard complex Gaussian vector.
    pub fn haar_state(&mut self, dim: usize) -> Result<StateVector> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        loop {
            let amps = Array1::from_shape_simple_fn(dim, || self.complex_gaussian());
            let v = StateVector::unnormalized(amps)?;
            if v.norm() > tol::NULL_OUTCOME {
                return v.normalized();
            }
        }
    }
}

fn smallest_singular_value(op: &DenseOperator) -> Result<f64> {
    use ndarray_linalg::SVD;
    let (_, s, _) = op.mat().svd(false, false)?;
    Ok(s.iter().cloned().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = RngHandle::new(42);
        let mut b = RngHandle::new(42);
        let ua = a.haar_unitary(8).unwrap();
        let ub = b.haar_unitary(8).unwrap();
        assert_eq!(ua.mat(), ub.mat());
        let sa = a.haar_state(256).unwrap();
        let sb = b.haar_state(256).unwrap();
        assert_eq!(sa.amplitudes(), sb.amplitudes());
        assert!((sa.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn children_are_independent_of_parent_consumption() {
        let parent = RngHandle::new(7);
        let child_before = parent.child(3);
        let mut consumed = RngHandle::new(7);
        for _ in 0..100 {
            consumed.standard_normal();
        }
        let child_after = consumed.child(3);
        assert_eq!(child_before.seed(), child_after.seed());
        let mut x = child_before;
        let mut y = child_after;
        assert_eq!(x.stream.random::<u64>(), y.stream.random::<u64>());
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = RngHandle::new(1);
        let u = rng.haar_unitary(8).unwrap();
        assert!(u.is_unitary(1e-10));
    }

    #[test]
    fn scalar_cases() {
        let mut rng = RngHandle::new(2);
        let u = rng.haar_unitary(1).unwrap();
        assert!((u.mat()[[0, 0]].norm() - 1.0).abs() < 1e-12);
        let s = rng.haar_state(1).unwrap();
        assert!((s.amplitudes()[0].norm() - 1.0).abs() < 1e-12);
        let g = rng.ginibre(1).unwrap();
        assert!(g.mat()[[0, 0]].norm() > 0.0);
    }

    #[test]
    fn ginibre_invertibility_guard() {
        let mut rng = RngHandle::new(3);
        let g = rng.ginibre(2).unwrap();
        assert!(smallest_singular_value(&g).unwrap() >= tol::GINIBRE_SINGULAR);
    }

    // Moment oracles. Sample means are deterministic under the fixed seeds,
    // and the 3-sigma windows below come from the exact variances:
    // Var|U_00|^2 = 2/(d(d+1)) - 1/d^2, Var|<e0|psi>|^2 = (d-1)/(d^2(d+1)),
    // Var Re z = 1/2 for a standard complex Gaussian entry.

    #[test]
    fn haar_unitary_first_entry_moment() {
        let d = 4;
        let trials = 100_000;
        let mut rng = RngHandle::new(2024);
        let mut acc = 0.0;
        for _ in 0..trials {
            let u = rng.haar_unitary(d).unwrap();
            acc += u.mat()[[0, 0]].norm_sqr();
        }
        let mean = acc / trials as f64;
        let var: f64 = 2.0 / (d as f64 * (d as f64 + 1.0)) - 1.0 / (d as f64 * d as f64);
        let three_sigma = 3.0 * (var / trials as f64).sqrt();
        assert!(
            (mean - 0.25).abs() < three_sigma,
            "E|U00|^2 = {mean:.5} vs 1/4 +- {three_sigma:.1e}"
        );
    }

    #[test]
    fn haar_unitary_left_invariance_moment() {
        // Left-multiplying by a fixed unitary must leave the entry moment at 1/d.
        let d = 4;
        let trials = 20_000;
        let mut rng = RngHandle::new(2025);
        let v = rng.haar_unitary(d).unwrap();
        let mut acc = 0.0;
        for _ in 0..trials {
            let u = rng.haar_unitary(d).unwrap();
            let vu = v.matmul(&u).unwrap();
            acc += vu.mat()[[0, 0]].norm_sqr();
        }
        let mean = acc / trials as f64;
        let var: f64 = 2.0 / (d as f64 * (d as f64 + 1.0)) - 1.0 / (d as f64 * d as f64);
        let three_sigma = 3.0 * (var / trials as f64).sqrt();
        assert!((mean - 0.25).abs() < three_sigma);
    }

    #[test]
    fn haar_state_overlap_moment() {
        let d = 4;
        let trials = 100_000;
        let mut rng = RngHandle::new(2026);
        let mut acc = 0.0;
        for _ in 0..trials {
            let s = rng.haar_state(d).unwrap();
            acc += s.amplitudes()[0].norm_sqr();
        }
        let mean = acc / trials as f64;
        let var = (d as f64 - 1.0) / ((d as f64).powi(2) * (d as f64 + 1.0));
        let three_sigma = 3.0 * (var / trials as f64).sqrt();
        assert!((mean - 0.25).abs() < three_sigma);
    }

    #[test]
    fn ginibre_entry_mean() {
        let trials = 100_000;
        let mut rng = RngHandle::new(2027);
        let mut acc = C64::new(0.0, 0.0);
        for _ in 0..trials {
            acc += rng.complex_gaussian();
        }
        let mean = acc / C64::new(trials as f64, 0.0);
        let three_sigma = 3.0 * (0.5f64 / trials as f64).sqrt();
        assert!(mean.re.abs() < three_sigma && mean.im.abs() < three_sigma);
    }
}
