//! Complexified free operations: elements of e^{Cg}, the SL(2,C) Iwasawa
//! factorization with its spin-s lift, and weak-measurement Kraus channels.


use crate::error::{Error, Result};
use crate::linalg::rng::RngHandle;
use crate::linalg::{mat_exp, qr_positive, C64, DenseOperator, StateVector};
use crate::reps::{LieRep, RepKind};
use crate::tol;

mod kraus;

pub use kraus::{
    apply_channel, first_order_envelopes, first_order_max_deviation, weak_meas_kraus,
    ChannelOutcome, KrausChannel,
};

/// The (U, alpha, eta) triple of the SL(2,C) Iwasawa factorization
/// M / sqrt(det M) = U e^{alpha J_z} e^{eta J_+}, with J_z = sigma_z / 2 and
/// J_+ the 2x2 raising matrix.
#[derive(Clone, Debug)]
pub struct IwasawaFactors {
    u: DenseOperator,
    alpha: f64,
    eta: C64,
}

impl IwasawaFactors {
    pub fn unitary(&self) -> &DenseOperator {
        &self.u
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eta(&self) -> C64 {
        self.eta
    }

    pub fn identity() -> Self {
        Self { u: DenseOperator::identity(2), alpha: 0.0, eta: C64::new(0.0, 0.0) }
    }

    pub fn from_parts(u: DenseOperator, alpha: f64, eta: C64) -> Result<Self> {
        if u.dim() != 2 {
            return Err(Error::DimMismatch(2, u.dim()));
        }
        Ok(Self { u, alpha, eta })
    }

    /// U e^{alpha J_z} e^{eta J_+} as a 2x2 matrix.
    pub fn reconstruct(&self) -> Result<DenseOperator> {
        let half = (self.alpha / 2.0).exp();
        let triangular = DenseOperator::from_fn(2, |i, j| match (i, j) {
            (0, 0) => C64::new(half, 0.0),
            (0, 1) => self.eta * half,
            (1, 1) => C64::new(1.0 / half, 0.0),
            _ => C64::new(0.0, 0.0),
        });
        self.u.matmul(&triangular)
    }
}

/// Iwasawa factorization of an invertible 2x2 matrix.
///
/// The determinant gauge divides by the principal square root of det M, so
/// the factors describe M up to a scalar; scalars cancel in every normalized
/// state and purity statement downstream.
pub fn iwasawa_sl2(m: &DenseOperator) -> Result<IwasawaFactors> {
    if m.dim() != 2 {
        return Err(Error::DimMismatch(2, m.dim()));
    }
    let det = m.mat()[[0, 0]] * m.mat()[[1, 1]] - m.mat()[[0, 1]] * m.mat()[[1, 0]];
    if det.norm() < tol::QR_SINGULAR {
        return Err(Error::Singular(format!("2x2 determinant {:.3e}", det.norm())));
    }
    let gauge = det.sqrt();
    let normalized = m.scale(C64::new(1.0, 0.0) / gauge);
    let (q, r) = qr_positive(&normalized)?;
    // R = [[r00, x], [0, ~1/r00]] with det R = 1 up to rounding, so
    // e^{alpha J_z} = diag(r00, 1/r00) requires alpha = 2 ln r00.
    let r00 = r.mat()[[0, 0]].re;
    let alpha = 2.0 * r00.ln();
    let eta = r.mat()[[0, 1]] / C64::new(r00, 0.0);
    Ok(IwasawaFactors { u: q, alpha, eta })
}

/// ZYZ Euler angles (a, b, c) of a 2x2 unitary after determinant
/// normalization: u / sqrt(det u) = e^{i a J_z} e^{i b J_y} e^{i c J_z}.
pub fn euler_angles_su2(u: &DenseOperator) -> Result<(f64, f64, f64)> {
    if u.dim() != 2 {
        return Err(Error::DimMismatch(2, u.dim()));
    }
    let det = u.mat()[[0, 0]] * u.mat()[[1, 1]] - u.mat()[[0, 1]] * u.mat()[[1, 0]];
    if det.norm() < tol::QR_SINGULAR {
        return Err(Error::Singular("Euler extraction of a singular matrix".into()));
    }
    let gauge = det.sqrt();
    let top_left = u.mat()[[0, 0]] / gauge;
    let top_right = u.mat()[[0, 1]] / gauge;

    let b = 2.0 * top_right.norm().atan2(top_left.norm());
    let (a, c) = if top_right.norm() <= 1e-12 {
        (2.0 * top_left.arg(), 0.0)
    } else if top_left.norm() <= 1e-12 {
        (2.0 * top_right.arg(), 0.0)
    } else {
        (top_left.arg() + top_right.arg(), top_left.arg() - top_right.arg())
    };
    Ok((a, b, c))
}

/// Precomputed spin-s lift of SL(2,C) Iwasawa factors.
///
/// Caches the J_z spectrum, the eigendecomposition of J_y, and the powers of
/// the nilpotent raising operator, so that each lift costs a handful of
/// d x d products.
#[derive(Clone, Debug)]
pub struct SpinLifter {
    dim: usize,
    jz_diag: Vec<f64>,
    jy_vals: Vec<f64>,
    jy_vecs: DenseOperator,
    jp_powers: Vec<DenseOperator>,
}

impl SpinLifter {
    pub fn new(rep: &LieRep) -> Result<Self> {
        let RepKind::Su2 { two_s } = rep.kind() else {
            return Err(Error::InvalidInput("spin lift expects a su(2) representation".into()));
        };
        let d = rep.dim();
        let jz_diag: Vec<f64> = (0..d).map(|k| two_s as f64 / 2.0 - k as f64).collect();
        let jy = &rep.generators()[1];
        let (jy_vals, jy_vecs) = crate::linalg::eigh_decompose(jy)?;
        let jp = &rep.raising_ops()[0];
        let mut jp_powers = vec![DenseOperator::identity(d)];
        for k in 1..d {
            let next = jp_powers[k - 1].matmul(jp)?;
            jp_powers.push(next);
        }
        Ok(Self {
            dim: d,
            jz_diag,
            jy_vals,
            jy_vecs: DenseOperator::from_valid(jy_vecs),
            jp_powers,
        })
    }

    fn exp_jz(&self, factor: C64) -> DenseOperator {
        DenseOperator::from_fn(self.dim, |i, j| {
            if i == j {
                (factor * C64::new(self.jz_diag[i], 0.0)).exp()
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    fn rotation(&self, a: f64, b: f64, c: f64) -> Result<DenseOperator> {
        // e^{i b J_y} from the cached eigendecomposition.
        let d = self.dim;
        let mut scaled = self.jy_vecs.clone().into_mat();
        for j in 0..d {
            let phase = C64::new(0.0, b * self.jy_vals[j]).exp();
            for i in 0..d {
                scaled[[i, j]] *= phase;
            }
        }
        let mid = DenseOperator::from_valid(scaled).matmul(&self.jy_vecs.dagger())?;
        // Sandwich between the diagonal z-rotations.
        let mut mat = mid.into_mat();
        for i in 0..d {
            let row_phase = C64::new(0.0, a * self.jz_diag[i]).exp();
            for j in 0..d {
                mat[[i, j]] *= row_phase * C64::new(0.0, c * self.jz_diag[j]).exp();
            }
        }
        Ok(DenseOperator::from_valid(mat))
    }

    fn exp_raising(&self, eta: C64) -> DenseOperator {
        let mut sum = self.jp_powers[0].clone().into_mat();
        let mut coeff = C64::new(1.0, 0.0);
        for (k, power) in self.jp_powers.iter().enumerate().skip(1) {
            coeff *= eta / C64::new(k as f64, 0.0);
            if coeff.norm() == 0.0 {
                break;
            }
            sum = sum + power.mat().mapv(|z| z * coeff);
        }
        DenseOperator::from_valid(sum)
    }

    /// R(u) e^{alpha J_z} e^{eta J_+} in the spin-s representation, where
    /// R(u) lifts the 2x2 unitary through its ZYZ Euler angles.
    pub fn lift(&self, factors: &IwasawaFactors) -> Result<DenseOperator> {
        let (a, b, c) = euler_angles_su2(factors.unitary())?;
        let rotation = self.rotation(a, b, c)?;
        let stretch = self.exp_jz(C64::new(factors.alpha(), 0.0));
        let shear = self.exp_raising(factors.eta());
        // stretch is diagonal: fold it into the shear by row scaling.
        let mut lower = shear.into_mat();
        for i in 0..self.dim {
            let scale = stretch.mat()[[i, i]];
            for j in 0..self.dim {
                lower[[i, j]] *= scale;
            }
        }
        rotation.matmul(&DenseOperator::from_valid(lower))
    }
}

/// One-off spin-s lift; builds the representation and the lifter internally.
/// Sweeps should construct a [`SpinLifter`] once instead.
pub fn lift_to_spin(factors: &IwasawaFactors, two_s: u32) -> Result<DenseOperator> {
    let rep = crate::reps::su2_rep(two_s)?;
    SpinLifter::new(&rep)?.lift(factors)
}

/// exp(sum_i (a_i + i b_i) i g_i) for explicit coefficient vectors; the
/// unitary slice is b = 0.
pub fn cfo_element_from_coefficients(
    rep: &LieRep,
    unitary_part: &[f64],
    hermitian_part: &[f64],
) -> Result<DenseOperator> {
    if unitary_part.len() != rep.num_generators() || hermitian_part.len() != rep.num_generators() {
        return Err(Error::DimMismatch(rep.num_generators(), unitary_part.len()));
    }
    let mut exponent = DenseOperator::zeros(rep.dim());
    for ((g, &a), &b) in rep.generators().iter().zip(unitary_part).zip(hermitian_part) {
        // (a + i b) i g = (i a - b) g
        exponent = exponent.add(&g.scale(C64::new(-b, a)))?;
    }
    mat_exp(&exponent)
}

/// Random element of e^{Cg}: coefficients a_i, b_i i.i.d. uniform in
/// (-scale, scale). Invertible by construction.
pub fn sample_cfo_element(
    rep: &LieRep,
    rng: &mut RngHandle,
    scale: f64,
) -> Result<DenseOperator> {
    if !(scale >= 0.0) {
        return Err(Error::InvalidInput(format!("scale must be nonnegative, got {scale}")));
    }
    let n = rep.num_generators();
    let mut unitary_part = Vec::with_capacity(n);
    let mut hermitian_part = Vec::with_capacity(n);
    for _ in 0..n {
        if scale == 0.0 {
            unitary_part.push(0.0);
            hermitian_part.push(0.0);
        } else {
            unitary_part.push(rng.uniform(-scale, scale));
            hermitian_part.push(rng.uniform(-scale, scale));
        }
    }
    cfo_element_from_coefficients(rep, &unitary_part, &hermitian_part)
}

/// M |psi> / || M |psi> ||.
pub fn normalize_after(m: &DenseOperator, psi: &StateVector) -> Result<StateVector> {
    StateVector::unnormalized(m.matvec(psi)?)?.normalized()
}
