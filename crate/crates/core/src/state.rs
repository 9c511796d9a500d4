//! Multimode Gaussian states as covariance matrices, plus the symplectic
//! operations of the optical pipeline.
//!
//! Conventions, fixed once and enforced everywhere:
//!
//! - quadrature ordering is (x1, p1, x2, p2, ...);
//! - vacuum units: the vacuum state has unit variance per quadrature, so
//!   both Reid bounds are exactly 1;
//! - beam splitter of transmissivity T on modes (i, j) mixes with
//!   +sqrt(1-T) into output i and -sqrt(1-T) into output j:
//!   x_i' = sqrt(T) x_i + sqrt(1-T) x_j,
//!   x_j' = -sqrt(1-T) x_i + sqrt(T) x_j (same on p).
//!   Observable variance products do not depend on this sign choice.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Tolerance on covariance-matrix symmetry accepted by constructors.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Projected variances below this are treated as singular in homodyne
/// conditioning.
pub const CONDITIONING_TOL: f64 = 1e-12;

/// One of the two canonical quadratures of an optical mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    X,
    P,
}

impl Quadrature {
    /// Offset of this quadrature inside a mode's 2x2 block.
    pub fn offset(self) -> usize {
        match self {
            Quadrature::X => 0,
            Quadrature::P => 1,
        }
    }
}

/// The symplectic form Omega for N modes: block diagonal with 2x2 blocks
/// [[0, 1], [-1, 0]]. Satisfies Omega^T = -Omega and Omega^2 = -I.
#[derive(Debug, Clone)]
pub struct SymplecticForm {
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        let dim = 2 * n_modes;
        let mut matrix = DMatrix::zeros(dim, dim);
        for k in 0..n_modes {
            matrix[(2 * k, 2 * k + 1)] = 1.0;
            matrix[(2 * k + 1, 2 * k)] = -1.0;
        }
        Self { matrix }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// Effective description of a squeezed-light source by its observable
/// squeezing and anti-squeezing levels in decibels relative to vacuum.
///
/// `V_sq = 10^(-squeezing_db/10) <= 1` and `V_anti = 10^(antisqueezing_db/10)
/// >= 1`; physicality requires `V_sq * V_anti >= 1`, i.e. the anti-squeezing
/// level must be at least the squeezing level. Source impurity is absorbed
/// into the pair of variances; no separate pump/loss decomposition is kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezerModel {
    squeezing_db: f64,
    antisqueezing_db: f64,
    squeezed_quadrature: Quadrature,
}

impl SqueezerModel {
    pub fn new(
        squeezing_db: f64,
        antisqueezing_db: f64,
        squeezed_quadrature: Quadrature,
    ) -> Result<Self> {
        if !squeezing_db.is_finite() || !antisqueezing_db.is_finite() {
            return Err(Error::InvalidArgument("squeezer levels must be finite"));
        }
        if squeezing_db < 0.0 {
            return Err(Error::InvalidArgument("squeezing_db must be >= 0"));
        }
        let model = Self {
            squeezing_db,
            antisqueezing_db,
            squeezed_quadrature,
        };
        let product = model.v_squeezed() * model.v_antisqueezed();
        if antisqueezing_db < squeezing_db {
            return Err(Error::UnphysicalModel { product });
        }
        Ok(model)
    }

    /// Pure squeezer: anti-squeezing mirrors the squeezing level exactly,
    /// so `V_sq * V_anti = 1`.
    pub fn pure(squeezing_db: f64, squeezed_quadrature: Quadrature) -> Result<Self> {
        Self::new(squeezing_db, squeezing_db, squeezed_quadrature)
    }

    pub fn squeezing_db(&self) -> f64 {
        self.squeezing_db
    }

    pub fn antisqueezing_db(&self) -> f64 {
        self.antisqueezing_db
    }

    pub fn squeezed_quadrature(&self) -> Quadrature {
        self.squeezed_quadrature
    }

    /// Squeezed-quadrature variance, `10^(-squeezing_db/10)`.
    pub fn v_squeezed(&self) -> f64 {
        10f64.powf(-self.squeezing_db / 10.0)
    }

    /// Anti-squeezed-quadrature variance, `10^(antisqueezing_db/10)`.
    pub fn v_antisqueezed(&self) -> f64 {
        10f64.powf(self.antisqueezing_db / 10.0)
    }
}

/// A Gaussian state of `n_modes` optical modes: mean quadrature vector and
/// covariance matrix, both in vacuum units.
///
/// All operations are pure: they borrow the state and return a new one.
/// Values are immutable after construction, so states can be shared freely
/// across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    n_modes: usize,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// The vacuum state: zero mean, identity covariance.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidArgument("n_modes must be >= 1"));
        }
        let dim = 2 * n_modes;
        Ok(Self {
            n_modes,
            mean: DVector::zeros(dim),
            cov: DMatrix::identity(dim, dim),
        })
    }

    /// Single-mode squeezed vacuum with the variances of `model`.
    pub fn squeezed_vacuum(model: &SqueezerModel) -> Self {
        let (v_sq, v_anti) = (model.v_squeezed(), model.v_antisqueezed());
        let (vx, vp) = match model.squeezed_quadrature() {
            Quadrature::X => (v_sq, v_anti),
            Quadrature::P => (v_anti, v_sq),
        };
        let mut cov = DMatrix::identity(2, 2);
        cov[(0, 0)] = vx;
        cov[(1, 1)] = vp;
        Self {
            n_modes: 1,
            mean: DVector::zeros(2),
            cov,
        }
    }

    /// Builds a state from raw parts, validating dimensions and symmetry.
    pub fn from_parts(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::InvalidArgument(
                "mean length must be a positive even number",
            ));
        }
        if cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::InvalidArgument("cov must be 2N x 2N"));
        }
        if mean.iter().any(|x| !x.is_finite()) || cov.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("state entries must be finite"));
        }
        for r in 0..dim {
            for c in (r + 1)..dim {
                if (cov[(r, c)] - cov[(c, r)]).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidArgument("cov is not symmetric"));
                }
            }
        }
        Ok(Self {
            n_modes: dim / 2,
            mean,
            cov: symmetrize(cov),
        })
    }

    /// Tensor product: `self` keeps its mode indices, `other`'s modes are
    /// appended after them.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (2 * self.n_modes, 2 * other.n_modes);
        let mut mean = DVector::zeros(da + db);
        mean.rows_mut(0, da).copy_from(&self.mean);
        mean.rows_mut(da, db).copy_from(&other.mean);
        let mut cov = DMatrix::zeros(da + db, da + db);
        cov.view_mut((0, 0), (da, da)).copy_from(&self.cov);
        cov.view_mut((da, da), (db, db)).copy_from(&other.cov);
        Self {
            n_modes: self.n_modes + other.n_modes,
            mean,
            cov,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Row/column index of a quadrature in the mean vector and covariance
    /// matrix, following the (x1, p1, x2, p2, ...) ordering.
    pub fn quad_index(mode: usize, quadrature: Quadrature) -> usize {
        2 * mode + quadrature.offset()
    }

    pub fn variance(&self, mode: usize, quadrature: Quadrature) -> f64 {
        let i = Self::quad_index(mode, quadrature);
        self.cov[(i, i)]
    }

    pub fn covariance(
        &self,
        a: (usize, Quadrature),
        b: (usize, Quadrature),
    ) -> f64 {
        self.cov[(Self::quad_index(a.0, a.1), Self::quad_index(b.0, b.1))]
    }

    pub fn mean_of(&self, mode: usize, quadrature: Quadrature) -> f64 {
        self.mean[Self::quad_index(mode, quadrature)]
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes {
            return Err(Error::InvalidArgument("mode index out of range"));
        }
        Ok(())
    }

    /// Applies the symplectic matrix `s`: cov -> s cov s^T, mean -> s mean.
    fn transformed(&self, s: &DMatrix<f64>) -> Self {
        Self {
            n_modes: self.n_modes,
            mean: s * &self.mean,
            cov: symmetrize(s * &self.cov * s.transpose()),
        }
    }

    /// Beam splitter of transmissivity `t` on modes `i` and `j` (sign
    /// convention in the module docs).
    pub fn apply_beam_splitter(&self, i: usize, j: usize, t: f64) -> Result<Self> {
        self.check_mode(i)?;
        self.check_mode(j)?;
        if i == j {
            return Err(Error::InvalidArgument("beam splitter needs two distinct modes"));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidArgument("transmissivity must lie in [0, 1]"));
        }
        let (ct, st) = (t.sqrt(), (1.0 - t).sqrt());
        let mut s = DMatrix::identity(2 * self.n_modes, 2 * self.n_modes);
        for q in 0..2 {
            s[(2 * i + q, 2 * i + q)] = ct;
            s[(2 * i + q, 2 * j + q)] = st;
            s[(2 * j + q, 2 * i + q)] = -st;
            s[(2 * j + q, 2 * j + q)] = ct;
        }
        Ok(self.transformed(&s))
    }

    /// Loss channel of efficiency `eta` on one mode: equivalent to a beam
    /// splitter of transmissivity eta against vacuum with the ancilla traced
    /// out. The mode's block becomes `eta*g + (1-eta)*I`, its cross blocks
    /// and mean entries scale by sqrt(eta).
    pub fn apply_loss(&self, mode: usize, eta: f64) -> Result<Self> {
        self.check_mode(mode)?;
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidArgument("efficiency must lie in [0, 1]"));
        }
        let dim = 2 * self.n_modes;
        let root = eta.sqrt();
        let mut cov = self.cov.clone();
        let mut mean = self.mean.clone();
        for q in 0..2 {
            let k = 2 * mode + q;
            mean[k] *= root;
            for c in 0..dim {
                if c / 2 == mode {
                    cov[(k, c)] = eta * self.cov[(k, c)] + if k == c { 1.0 - eta } else { 0.0 };
                } else {
                    cov[(k, c)] *= root;
                    cov[(c, k)] *= root;
                }
            }
        }
        Ok(Self {
            n_modes: self.n_modes,
            mean,
            cov: symmetrize(cov),
        })
    }

    /// Phase-space rotation by `theta` on one mode: x' = x cos(theta) +
    /// p sin(theta), p' = -x sin(theta) + p cos(theta). This is how the
    /// local-oscillator phase selects the measured quadrature.
    pub fn apply_phase_rotation(&self, mode: usize, theta: f64) -> Result<Self> {
        self.check_mode(mode)?;
        let (c, s) = (theta.cos(), theta.sin());
        let mut rot = DMatrix::identity(2 * self.n_modes, 2 * self.n_modes);
        rot[(2 * mode, 2 * mode)] = c;
        rot[(2 * mode, 2 * mode + 1)] = s;
        rot[(2 * mode + 1, 2 * mode)] = -s;
        rot[(2 * mode + 1, 2 * mode + 1)] = c;
        Ok(self.transformed(&rot))
    }

    /// Uncertainty-principle check: true iff the Hermitian matrix
    /// cov + i*Omega has minimum eigenvalue >= -tol.
    ///
    /// The complex eigenproblem is solved through the real symmetric
    /// embedding [[cov, -Omega], [Omega, cov]], which has the same spectrum
    /// with doubled multiplicities.
    pub fn is_physical(&self, tol: f64) -> bool {
        let dim = 2 * self.n_modes;
        let omega = SymplecticForm::new(self.n_modes);
        let mut embed = DMatrix::zeros(2 * dim, 2 * dim);
        embed.view_mut((0, 0), (dim, dim)).copy_from(&self.cov);
        embed.view_mut((dim, dim), (dim, dim)).copy_from(&self.cov);
        embed
            .view_mut((0, dim), (dim, dim))
            .copy_from(&(-omega.matrix()));
        embed
            .view_mut((dim, 0), (dim, dim))
            .copy_from(omega.matrix());
        let eigs = embed.symmetric_eigen().eigenvalues;
        eigs.iter().all(|&e| e >= -tol)
    }

    /// Restriction to the listed modes (strictly increasing indices).
    pub fn marginal(&self, modes: &[usize]) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidArgument("marginal needs at least one mode"));
        }
        for w in modes.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidArgument(
                    "marginal modes must be strictly increasing",
                ));
            }
        }
        self.check_mode(*modes.last().expect("non-empty"))?;
        let idx: Vec<usize> = modes
            .iter()
            .flat_map(|&m| [2 * m, 2 * m + 1])
            .collect();
        let dim = idx.len();
        let mean = DVector::from_fn(dim, |r, _| self.mean[idx[r]]);
        let cov = DMatrix::from_fn(dim, dim, |r, c| self.cov[(idx[r], idx[c])]);
        Ok(Self {
            n_modes: modes.len(),
            mean,
            cov,
        })
    }

    /// State of the unmeasured modes after a homodyne detection of the
    /// theta-rotated quadrature of `mode` with outcome `outcome`.
    ///
    /// With e = (cos theta, sin theta) the projected variance is
    /// v = e^T g_M e and, writing w = C e for the cross block C between the
    /// remaining modes and the measured one,
    ///
    ///   cov' = g_R - w w^T / v,
    ///   mean' = mu_R + w (outcome - e^T mu_M) / v.
    ///
    /// The conditional covariance does not depend on the outcome. The
    /// pseudo-inverse of the rank-1 projection reduces to the scalar
    /// inversion of v; v below [`CONDITIONING_TOL`] is an error.
    pub fn condition_on_homodyne(
        &self,
        mode: usize,
        theta: f64,
        outcome: f64,
    ) -> Result<Self> {
        self.check_mode(mode)?;
        if self.n_modes < 2 {
            return Err(Error::InvalidArgument(
                "conditioning needs at least one unmeasured mode",
            ));
        }
        let e = [theta.cos(), theta.sin()];
        let m0 = 2 * mode;
        let v = e[0] * e[0] * self.cov[(m0, m0)]
            + 2.0 * e[0] * e[1] * self.cov[(m0, m0 + 1)]
            + e[1] * e[1] * self.cov[(m0 + 1, m0 + 1)];
        if v < CONDITIONING_TOL {
            return Err(Error::SingularConditioning { variance: v });
        }

        let rest: Vec<usize> = (0..self.n_modes).filter(|&m| m != mode).collect();
        let idx: Vec<usize> = rest.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let dim = idx.len();

        // w = C e, the covariance of each remaining quadrature with the
        // measured quadrature direction.
        let w = DVector::from_fn(dim, |r, _| {
            e[0] * self.cov[(idx[r], m0)] + e[1] * self.cov[(idx[r], m0 + 1)]
        });
        let shift = (outcome - (e[0] * self.mean[m0] + e[1] * self.mean[m0 + 1])) / v;

        let mean = DVector::from_fn(dim, |r, _| self.mean[idx[r]] + w[r] * shift);
        let cov = DMatrix::from_fn(dim, dim, |r, c| {
            self.cov[(idx[r], idx[c])] - w[r] * w[c] / v
        });
        Ok(Self {
            n_modes: rest.len(),
            mean,
            cov: symmetrize(cov),
        })
    }

    /// Plain-text dump (n_modes, mean, covariance rows) at 12 significant
    /// digits, for golden-file tests and debugging.
    pub fn dump(&self) -> String {
        let dim = 2 * self.n_modes;
        let mut out = format!("n_modes {}\n", self.n_modes);
        out.push_str("mean");
        for k in 0..dim {
            out.push_str(&format!(" {:.11e}", self.mean[k]));
        }
        out.push('\n');
        for r in 0..dim {
            out.push_str("cov");
            for c in 0..dim {
                out.push_str(&format!(" {:.11e}", self.cov[(r, c)]));
            }
            out.push('\n');
        }
        out
    }
}

fn symmetrize(mut m: DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    for r in 0..n {
        for c in (r + 1)..n {
            let avg = 0.5 * (m[(r, c)] + m[(c, r)]);
            m[(r, c)] = avg;
            m[(c, r)] = avg;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    // 10^(-1.02) and 10^(1.02): variances of the pure 10.2 dB squeezer.
    const V_S: f64 = 0.09549925860214359;
    const V_A: f64 = 10.471285480508996;

    fn squeezer_10_2() -> SqueezerModel {
        SqueezerModel::pure(10.2, Quadrature::X).unwrap()
    }

    /// Squeezed mode superimposed with vacuum on a balanced beam splitter;
    /// the two-mode workhorse of the test suite.
    fn split_squeezer() -> GaussianState {
        GaussianState::squeezed_vacuum(&squeezer_10_2())
            .tensor(&GaussianState::vacuum(1).unwrap())
            .apply_beam_splitter(0, 1, 0.5)
            .unwrap()
    }

    #[test]
    fn vacuum_is_identity() {
        let v = GaussianState::vacuum(1).unwrap();
        assert_eq!(v.cov(), &DMatrix::identity(2, 2));
        assert_eq!(v.mean(), &DVector::zeros(2));
        let v2 = GaussianState::vacuum(2).unwrap();
        assert_eq!(v2.cov(), &DMatrix::identity(4, 4));
        assert!(GaussianState::vacuum(3).unwrap().is_physical(1e-9));
    }

    #[test]
    fn vacuum_rejects_zero_modes() {
        assert!(matches!(
            GaussianState::vacuum(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn squeezed_vacuum_variances() {
        let s = GaussianState::squeezed_vacuum(&squeezer_10_2());
        assert!((s.variance(0, Quadrature::X) - 0.09550).abs() < 1e-4);
        assert!((s.variance(0, Quadrature::P) - 10.4713).abs() < 1e-4);
        assert!((s.variance(0, Quadrature::X) - V_S).abs() < 1e-15);
        assert!((s.variance(0, Quadrature::P) - V_A).abs() < 1e-12);

        let zero = SqueezerModel::new(0.0, 0.0, Quadrature::X).unwrap();
        assert_eq!(
            GaussianState::squeezed_vacuum(&zero).cov(),
            GaussianState::vacuum(1).unwrap().cov()
        );
    }

    #[test]
    fn squeezer_model_rejects_unphysical() {
        // V_sq * V_anti = 10^(-0.1) < 1
        assert!(matches!(
            SqueezerModel::new(3.0, 2.0, Quadrature::X),
            Err(Error::UnphysicalModel { .. })
        ));
        assert!(SqueezerModel::new(3.0, 3.0, Quadrature::X).is_ok());
        assert!(matches!(
            SqueezerModel::new(-1.0, 2.0, Quadrature::X),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn balanced_splitter_on_vacua_is_identity() {
        let v = GaussianState::vacuum(2).unwrap();
        let out = v.apply_beam_splitter(0, 1, 0.5).unwrap();
        let diff = (out.cov() - v.cov()).abs().max();
        assert!(diff < 1e-12);
    }

    #[test]
    fn balanced_splitter_on_squeezed_mode() {
        let s = split_squeezer();
        // (V - 1)/2 closed forms; signs follow the documented convention.
        assert!((s.variance(0, Quadrature::X) - 0.5478).abs() < 1e-4);
        assert!((s.variance(1, Quadrature::X) - 0.5478).abs() < 1e-4);
        let cx = s.covariance((0, Quadrature::X), (1, Quadrature::X));
        let cp = s.covariance((0, Quadrature::P), (1, Quadrature::P));
        assert!((cx.abs() - 0.4523).abs() < 1e-4);
        assert!((cx - (1.0 - V_S) / 2.0).abs() < 1e-12);
        assert!((cp - (1.0 - V_A) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn splitter_validates_arguments() {
        let v = GaussianState::vacuum(2).unwrap();
        assert!(v.apply_beam_splitter(0, 0, 0.5).is_err());
        assert!(v.apply_beam_splitter(0, 2, 0.5).is_err());
        assert!(v.apply_beam_splitter(0, 1, 1.5).is_err());
        // T = 1 leaves the state unchanged.
        let s = split_squeezer();
        let same = s.apply_beam_splitter(0, 1, 1.0).unwrap();
        assert!((same.cov() - s.cov()).abs().max() < 1e-12);
    }

    #[test]
    fn loss_mixes_in_vacuum() {
        let s = GaussianState::squeezed_vacuum(&squeezer_10_2());
        let lossy = s.apply_loss(0, 0.9).unwrap();
        assert!((lossy.variance(0, Quadrature::X) - 0.1860).abs() < 1e-4);
        assert!((lossy.variance(0, Quadrature::P) - 9.5242).abs() < 1e-4);

        let unchanged = s.apply_loss(0, 1.0).unwrap();
        assert!((unchanged.cov() - s.cov()).abs().max() < 1e-15);
    }

    #[test]
    fn full_loss_resets_mode_to_vacuum() {
        let s = split_squeezer().apply_loss(1, 0.0).unwrap();
        assert!((s.variance(1, Quadrature::X) - 1.0).abs() < 1e-15);
        assert!((s.variance(1, Quadrature::P) - 1.0).abs() < 1e-15);
        assert_eq!(s.covariance((0, Quadrature::X), (1, Quadrature::X)), 0.0);
        assert_eq!(s.covariance((0, Quadrature::P), (1, Quadrature::P)), 0.0);
    }

    #[test]
    fn loss_rejects_bad_efficiency() {
        let s = GaussianState::vacuum(1).unwrap();
        assert!(s.apply_loss(0, -0.1).is_err());
        assert!(s.apply_loss(0, 1.1).is_err());
        assert!(s.apply_loss(1, 0.5).is_err());
    }

    #[test]
    fn rotation_swaps_quadratures_at_half_pi() {
        let s = GaussianState::squeezed_vacuum(&squeezer_10_2());
        let r = s.apply_phase_rotation(0, FRAC_PI_2).unwrap();
        assert!((r.variance(0, Quadrature::X) - V_A).abs() < 1e-12);
        assert!((r.variance(0, Quadrature::P) - V_S).abs() < 1e-12);

        let id = s.apply_phase_rotation(0, 0.0).unwrap();
        assert!((id.cov() - s.cov()).abs().max() < 1e-15);
    }

    #[test]
    fn rotation_at_quarter_pi_mixes_evenly() {
        let s = GaussianState::squeezed_vacuum(&squeezer_10_2());
        let r = s.apply_phase_rotation(0, FRAC_PI_4).unwrap();
        let avg = (V_S + V_A) / 2.0;
        let off = (V_A - V_S) / 2.0;
        assert!((r.variance(0, Quadrature::X) - avg).abs() < 1e-12);
        assert!((r.variance(0, Quadrature::P) - avg).abs() < 1e-12);
        assert!(
            (r.covariance((0, Quadrature::X), (0, Quadrature::P)).abs() - off).abs() < 1e-12
        );
    }

    #[test]
    fn physicality_detects_heisenberg_violation() {
        let mut cov = DMatrix::identity(2, 2);
        cov[(0, 0)] = 0.5;
        cov[(1, 1)] = 0.5;
        let s = GaussianState::from_parts(DVector::zeros(2), cov).unwrap();
        assert!(!s.is_physical(1e-9));
        assert!(GaussianState::vacuum(1).unwrap().is_physical(1e-9));
        assert!(split_squeezer().is_physical(1e-9));
    }

    #[test]
    fn marginal_restricts_blocks() {
        let v = GaussianState::vacuum(2).unwrap();
        let m = v.marginal(&[1]).unwrap();
        assert_eq!(m.n_modes(), 1);
        assert_eq!(m.cov(), GaussianState::vacuum(1).unwrap().cov());

        let s = split_squeezer();
        let a = s.marginal(&[0]).unwrap();
        assert!((a.variance(0, Quadrature::X) - 0.5478).abs() < 1e-3);
        assert!((a.variance(0, Quadrature::P) - 5.7357).abs() < 1e-3);

        let all = s.marginal(&[0, 1]).unwrap();
        assert_eq!(all.cov(), s.cov());

        assert!(s.marginal(&[]).is_err());
        assert!(s.marginal(&[1, 0]).is_err());
        assert!(s.marginal(&[0, 0]).is_err());
        assert!(s.marginal(&[0, 2]).is_err());
    }

    #[test]
    fn conditioning_on_product_state_is_marginal() {
        let s = GaussianState::squeezed_vacuum(&squeezer_10_2())
            .tensor(&GaussianState::vacuum(1).unwrap());
        for outcome in [-3.0, 0.0, 1.7] {
            let c = s.condition_on_homodyne(0, 0.0, outcome).unwrap();
            assert_eq!(c.cov(), s.marginal(&[1]).unwrap().cov());
            assert_eq!(c.mean_of(0, Quadrature::X), 0.0);
        }
    }

    #[test]
    fn conditioning_matches_schur_complement() {
        let s = split_squeezer();
        let c = s.condition_on_homodyne(0, 0.0, 0.4).unwrap();
        // 2 V_s / (V_s + 1)
        assert!((c.variance(0, Quadrature::X) - 0.17435).abs() < 1e-4);
        assert!((c.variance(0, Quadrature::P) - (V_A + 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_covariance_is_outcome_independent() {
        let s = split_squeezer();
        let plus = s.condition_on_homodyne(0, 0.0, 1.0).unwrap();
        let minus = s.condition_on_homodyne(0, 0.0, -1.0).unwrap();
        assert!((plus.cov() - minus.cov()).abs().max() < 1e-12);
        // Means differ only along the correlated quadrature.
        assert!(plus.mean_of(0, Quadrature::X) > 0.0);
        assert!((plus.mean_of(0, Quadrature::X) + minus.mean_of(0, Quadrature::X)).abs() < 1e-12);
        assert_eq!(plus.mean_of(0, Quadrature::P), 0.0);
        assert_eq!(minus.mean_of(0, Quadrature::P), 0.0);
    }

    #[test]
    fn conditioning_rejects_degenerate_projection() {
        // x-quadrature of mode 0 pinned to zero variance.
        let mut cov = DMatrix::identity(4, 4);
        cov[(0, 0)] = 0.0;
        let s = GaussianState::from_parts(DVector::zeros(4), cov).unwrap();
        assert!(matches!(
            s.condition_on_homodyne(0, 0.0, 0.0),
            Err(Error::SingularConditioning { .. })
        ));
        let single = GaussianState::vacuum(1).unwrap();
        assert!(single.condition_on_homodyne(0, 0.0, 0.0).is_err());
    }

    #[test]
    fn symplectic_form_identities() {
        for n in 1..=3 {
            let omega = SymplecticForm::new(n);
            let m = omega.matrix();
            assert_eq!(m.transpose(), -m);
            let sq = m * m;
            assert!((sq + DMatrix::identity(2 * n, 2 * n)).abs().max() < 1e-15);
        }
    }

    #[test]
    fn from_parts_rejects_asymmetry() {
        let mut cov = DMatrix::identity(2, 2);
        cov[(0, 1)] = 1e-3;
        assert!(GaussianState::from_parts(DVector::zeros(2), cov).is_err());
    }

    #[test]
    fn dump_is_stable() {
        let s = GaussianState::vacuum(1).unwrap();
        assert_eq!(
            s.dump(),
            "n_modes 1\nmean 0.00000000000e0 0.00000000000e0\ncov 1.00000000000e0 0.00000000000e0\ncov 0.00000000000e0 1.00000000000e0\n"
        );
    }
}
