//! Multimode Gaussian states in the Wigner representation.
//!
//! A state is a mean quadrature vector plus a covariance matrix, with the
//! quadratures interleaved as (x1, p1, x2, p2, ...). The complex amplitude of
//! mode k is alpha_k = x_k + i p_k and the vacuum covariance is I/4, so a
//! coherent state of mean photon number n and phase phi_c has displacement
//! alpha0 = sqrt(n) e^{-i phi_c}.
//!
//! Linear optics acts through [`LinearMap`]: an affine symplectic pair
//! (S, d) with mean -> S mean + d and cov -> S cov S^T. Passive maps
//! (beam splitters, phase shifters) are additionally orthogonal and conserve
//! total photon number.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Vacuum quadrature variance in these units.
pub const VACUUM_VARIANCE: f64 = 0.25;

/// Relative Frobenius tolerance for covariance symmetry.
pub const SYMMETRY_REL_TOL: f64 = 1e-12;

/// Slack on the eigenvalues of cov + (i/4) Omega (uncertainty bound).
pub const UNCERTAINTY_TOL: f64 = 1e-10;

/// Slack on per-mode mean photon numbers.
pub const PHOTON_TOL: f64 = 1e-10;

/// Frobenius tolerance on S^T Omega S - Omega.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// Frobenius tolerance on S^T S - I for passive maps.
pub const PASSIVE_TOL: f64 = 1e-10;

/// Condition-number ceiling for covariance inversion in [`GaussianState::wigner_at`].
pub const CONDITION_LIMIT: f64 = 1e12;

/// The standard symplectic form: block diagonal [[0, 1], [-1, 0]] per mode.
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

/// A multimode Gaussian state: Wigner-function mean and covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// Builds a state from raw mean and covariance, enforcing the type
    /// invariants: symmetry, positive definiteness, the uncertainty bound
    /// eig(cov + (i/4) Omega) >= -1e-10, and non-negative per-mode photon
    /// numbers.
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::usage(format!(
                "mean vector length must be a positive even number, got {dim}"
            )));
        }
        if cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::usage(format!(
                "covariance must be {dim}x{dim}, got {}x{}",
                cov.nrows(),
                cov.ncols()
            )));
        }
        if mean.iter().any(|v| !v.is_finite()) || cov.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("non-finite entries in state parameters"));
        }
        let asym = (&cov - cov.transpose()).norm();
        if asym > SYMMETRY_REL_TOL * cov.norm().max(1.0) {
            return Err(Error::domain(format!(
                "covariance is not symmetric (relative asymmetry {asym:.3e})"
            )));
        }
        // Work with the symmetrized matrix from here on.
        let cov = (&cov + cov.transpose()) * 0.5;

        let n_modes = dim / 2;
        let scale = cov.norm().max(1.0);

        // Uncertainty bound via the real embedding of the Hermitian matrix
        // cov + (i/4) Omega: eig([[A, -B], [B, A]]) doubles eig(A + iB).
        let b = symplectic_form(n_modes) * 0.25;
        let mut embed = DMatrix::zeros(2 * dim, 2 * dim);
        embed.view_mut((0, 0), (dim, dim)).copy_from(&cov);
        embed.view_mut((0, dim), (dim, dim)).copy_from(&(-&b));
        embed.view_mut((dim, 0), (dim, dim)).copy_from(&b);
        embed.view_mut((dim, dim), (dim, dim)).copy_from(&cov);
        let eigs = embed.symmetric_eigen().eigenvalues;
        let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eig < -UNCERTAINTY_TOL * scale {
            return Err(Error::domain(format!(
                "covariance violates the uncertainty bound (min eigenvalue {min_eig:.3e})"
            )));
        }

        // Positive definiteness of the covariance itself.
        if cov.clone().cholesky().is_none() {
            return Err(Error::domain(
                "covariance is not positive definite".to_string(),
            ));
        }

        let state = GaussianState { mean, cov };
        for k in 0..n_modes {
            let mu = state.mean_photon(k)?;
            if mu < -PHOTON_TOL {
                return Err(Error::domain(format!(
                    "mode {k} has negative mean photon number {mu:.3e}"
                )));
            }
        }
        Ok(state)
    }

    /// The n-mode vacuum: zero mean, covariance I/4.
    pub fn vacuum(n_modes: usize) -> Self {
        GaussianState {
            mean: DVector::zeros(2 * n_modes),
            cov: DMatrix::identity(2 * n_modes, 2 * n_modes) * VACUUM_VARIANCE,
        }
    }

    /// Coherent state with mean photon number `n_c` and phase `phi_c`
    /// (displacement alpha0 = sqrt(n_c) e^{-i phi_c}).
    pub fn coherent(n_c: f64, phi_c: f64) -> Result<Self> {
        if !n_c.is_finite() || n_c < 0.0 {
            return Err(Error::domain(format!(
                "coherent photon number must be finite and >= 0, got {n_c}"
            )));
        }
        if !phi_c.is_finite() {
            return Err(Error::domain("coherent phase must be finite".to_string()));
        }
        let amp = n_c.sqrt();
        let mut s = Self::vacuum(1);
        s.mean[0] = amp * phi_c.cos();
        s.mean[1] = -amp * phi_c.sin();
        Ok(s)
    }

    /// Squeezed vacuum with mean photon number `n_s`; the squeezing phase is
    /// fixed to zero, so the x quadrature is the squeezed one:
    /// cov = diag(e^{-2r}, e^{+2r})/4 with r = asinh(sqrt(n_s)).
    pub fn squeezed_vacuum(n_s: f64) -> Result<Self> {
        if !n_s.is_finite() || n_s < 0.0 {
            return Err(Error::domain(format!(
                "squeezed photon number must be finite and >= 0, got {n_s}"
            )));
        }
        let r = n_s.sqrt().asinh();
        let mut s = Self::vacuum(1);
        s.cov[(0, 0)] = (-2.0 * r).exp() * VACUUM_VARIANCE;
        s.cov[(1, 1)] = (2.0 * r).exp() * VACUUM_VARIANCE;
        Ok(s)
    }

    /// Tensor product: concatenated means, block-diagonal covariance.
    pub fn tensor(a: &GaussianState, b: &GaussianState) -> GaussianState {
        let (da, db) = (a.mean.len(), b.mean.len());
        let mut mean = DVector::zeros(da + db);
        mean.rows_mut(0, da).copy_from(&a.mean);
        mean.rows_mut(da, db).copy_from(&b.mean);
        let mut cov = DMatrix::zeros(da + db, da + db);
        cov.view_mut((0, 0), (da, da)).copy_from(&a.cov);
        cov.view_mut((da, da), (db, db)).copy_from(&b.cov);
        GaussianState { mean, cov }
    }

    pub fn n_modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// (x, p) of one mode.
    pub fn mode_mean(&self, mode: usize) -> Result<(f64, f64)> {
        self.check_mode(mode)?;
        Ok((self.mean[2 * mode], self.mean[2 * mode + 1]))
    }

    /// 2x2 covariance block of one mode.
    pub fn mode_cov(&self, mode: usize) -> Result<DMatrix<f64>> {
        self.check_mode(mode)?;
        Ok(self.cov.view((2 * mode, 2 * mode), (2, 2)).into_owned())
    }

    /// Symmetric-ordered number expectation of one mode:
    /// <{a^dag a}_s> = x^2 + p^2 + C_xx + C_pp. The physical photon number
    /// is this minus 1/2.
    pub fn symmetric_number_mean(&self, mode: usize) -> Result<f64> {
        self.check_mode(mode)?;
        let (x, p) = self.mode_mean(mode)?;
        let (ix, ip) = (2 * mode, 2 * mode + 1);
        Ok(x * x + p * p + self.cov[(ix, ix)] + self.cov[(ip, ip)])
    }

    /// Mean photon number of one mode.
    pub fn mean_photon(&self, mode: usize) -> Result<f64> {
        Ok(self.symmetric_number_mean(mode)? - 0.5)
    }

    /// Total mean photon number over all modes.
    pub fn total_mean_photon(&self) -> f64 {
        (0..self.n_modes())
            .map(|k| self.mean_photon(k).expect("mode index in range"))
            .sum()
    }

    /// Wigner function value at a phase-space point (interleaved x, p
    /// coordinates): (2 pi)^-N det(cov)^-1/2 exp(-1/2 q^T cov^-1 q) with
    /// q = point - mean. Fails if the covariance is too ill-conditioned to
    /// invert reliably.
    pub fn wigner_at(&self, point: &[f64]) -> Result<f64> {
        let dim = self.mean.len();
        if point.len() != dim {
            return Err(Error::usage(format!(
                "point has length {}, state has {dim} quadratures",
                point.len()
            )));
        }
        if point.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("non-finite phase-space point".to_string()));
        }
        let eigs = self.cov.clone().symmetric_eigen().eigenvalues;
        let max_eig = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eig <= 0.0 || max_eig / min_eig > CONDITION_LIMIT {
            return Err(Error::numerical(format!(
                "covariance condition number {:.3e} exceeds {CONDITION_LIMIT:.0e}",
                max_eig / min_eig.max(f64::MIN_POSITIVE),
            )));
        }
        let chol = self
            .cov
            .clone()
            .cholesky()
            .ok_or_else(|| Error::numerical("covariance factorization failed".to_string()))?;
        let q = DVector::from_column_slice(point) - &self.mean;
        let z = chol.solve(&q);
        let det: f64 = eigs.iter().product();
        let n = self.n_modes() as f64;
        Ok((2.0 * std::f64::consts::PI).powf(-n) * det.powf(-0.5) * (-0.5 * q.dot(&z)).exp())
    }

    /// Restriction to a subset of modes, in the given order. Marginals of a
    /// Gaussian are Gaussian: this is exact integration over the dropped
    /// quadratures.
    pub fn marginal(&self, modes: &[usize]) -> Result<GaussianState> {
        if modes.is_empty() {
            return Err(Error::usage("marginal over an empty mode set".to_string()));
        }
        for (i, &m) in modes.iter().enumerate() {
            self.check_mode(m)?;
            if modes[..i].contains(&m) {
                return Err(Error::usage(format!("duplicate mode index {m}")));
            }
        }
        let dim = 2 * modes.len();
        let mut mean = DVector::zeros(dim);
        let mut cov = DMatrix::zeros(dim, dim);
        for (a, &ma) in modes.iter().enumerate() {
            mean[2 * a] = self.mean[2 * ma];
            mean[2 * a + 1] = self.mean[2 * ma + 1];
            for (b, &mb) in modes.iter().enumerate() {
                for da in 0..2 {
                    for db in 0..2 {
                        cov[(2 * a + da, 2 * b + db)] = self.cov[(2 * ma + da, 2 * mb + db)];
                    }
                }
            }
        }
        Ok(GaussianState { mean, cov })
    }

    /// Mean and variance of the photon-number difference n_i - n_j.
    ///
    /// The mean is the symmetric-ordered intensity difference (the two
    /// ordering corrections cancel). The fourth moments entering the variance
    /// are evaluated exactly through the Gaussian pairing expansion; the
    /// physical variance subtracts the symmetric-ordering excess of 1/2.
    pub fn intensity_difference_moments(&self, i: usize, j: usize) -> Result<IntensityMoments> {
        self.check_mode(i)?;
        self.check_mode(j)?;
        if i == j {
            return Err(Error::usage(format!(
                "intensity difference needs two distinct modes, got {i} twice"
            )));
        }
        // Quadratic form sum_k s_k u_k^2 over u = (x_i, p_i, x_j, p_j).
        let idx = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1];
        let sgn = [1.0, 1.0, -1.0, -1.0];

        let mu = |k: usize| self.mean[idx[k]];
        let c = |k: usize, l: usize| self.cov[(idx[k], idx[l])];

        let mean: f64 = (0..4).map(|k| sgn[k] * (mu(k) * mu(k) + c(k, k))).sum();

        // E[(sum s_k u_k^2)^2] from E[u_k^2 u_l^2]; the centered fourth
        // moments come from the three pair contractions.
        let mut fourth = 0.0;
        for k in 0..4 {
            for l in 0..4 {
                let e4 = isserlis_fourth(&|a, b| c(a, b), k, k, l, l);
                let ukkll = mu(k) * mu(k) * mu(l) * mu(l)
                    + mu(k) * mu(k) * c(l, l)
                    + mu(l) * mu(l) * c(k, k)
                    + 4.0 * mu(k) * mu(l) * c(k, l)
                    + e4;
                fourth += sgn[k] * sgn[l] * ukkll;
            }
        }
        let symmetric_variance = fourth - mean * mean;
        Ok(IntensityMoments {
            mean,
            variance: symmetric_variance - 0.5,
        })
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes() {
            return Err(Error::usage(format!(
                "mode index {mode} out of range for {} modes",
                self.n_modes()
            )));
        }
        Ok(())
    }
}

/// Centered Gaussian fourth moment E[z_a z_b z_c z_d] by enumerating the
/// three pairings of the four factors.
fn isserlis_fourth(cov: &dyn Fn(usize, usize) -> f64, a: usize, b: usize, c: usize, d: usize) -> f64 {
    cov(a, b) * cov(c, d) + cov(a, c) * cov(b, d) + cov(a, d) * cov(b, c)
}

/// Photon-number difference moments of a two-mode cut of a Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityMoments {
    /// <n_i - n_j>.
    pub mean: f64,
    /// Var(n_i - n_j), with the symmetric-ordering excess removed.
    pub variance: f64,
}

impl IntensityMoments {
    /// Variance of the symmetric-ordered (Wigner-sampled) intensity
    /// difference; exceeds the photon-number variance by exactly 1/2.
    pub fn symmetric_variance(&self) -> f64 {
        self.variance + 0.5
    }
}

/// Affine symplectic action on quadratures: z -> S z + d.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    matrix: DMatrix<f64>,
    displacement: DVector<f64>,
}

impl LinearMap {
    /// Builds a map from its quadrature matrix and displacement, verifying
    /// S^T Omega S = Omega.
    pub fn from_parts(matrix: DMatrix<f64>, displacement: DVector<f64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim == 0 || dim % 2 != 0 || matrix.ncols() != dim {
            return Err(Error::usage(format!(
                "map matrix must be square with even dimension, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if displacement.len() != dim {
            return Err(Error::usage(format!(
                "displacement length {} does not match matrix dimension {dim}",
                displacement.len()
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) || displacement.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("non-finite entries in linear map".to_string()));
        }
        let omega = symplectic_form(dim / 2);
        let defect = (matrix.transpose() * &omega * &matrix - &omega).norm();
        if defect > SYMPLECTIC_TOL * matrix.norm().max(1.0).powi(2) {
            return Err(Error::domain(format!(
                "matrix is not symplectic (defect {defect:.3e})"
            )));
        }
        Ok(LinearMap {
            matrix,
            displacement,
        })
    }

    /// The identity on `n_modes` modes.
    pub fn identity(n_modes: usize) -> Self {
        LinearMap {
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
            displacement: DVector::zeros(2 * n_modes),
        }
    }

    /// A pure displacement (identity matrix part).
    pub fn displacement_map(n_modes: usize, displacement: DVector<f64>) -> Result<Self> {
        Self::from_parts(DMatrix::identity(2 * n_modes, 2 * n_modes), displacement)
    }

    /// Quadrature representation of a complex mode-amplitude scattering
    /// matrix M: each entry becomes the 2x2 block [[Re, -Im], [Im, Re]].
    pub fn from_amplitude_matrix(m: &DMatrix<Complex64>) -> Result<Self> {
        let n = m.nrows();
        if n == 0 || m.ncols() != n {
            return Err(Error::usage(format!(
                "amplitude matrix must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let mut s = DMatrix::zeros(2 * n, 2 * n);
        for j in 0..n {
            for k in 0..n {
                let v = m[(j, k)];
                s[(2 * j, 2 * k)] = v.re;
                s[(2 * j, 2 * k + 1)] = -v.im;
                s[(2 * j + 1, 2 * k)] = v.im;
                s[(2 * j + 1, 2 * k + 1)] = v.re;
            }
        }
        Self::from_parts(s, DVector::zeros(2 * n))
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn displacement(&self) -> &DVector<f64> {
        &self.displacement
    }

    /// True for photon-number-conserving maps (S orthogonal, no displacement).
    pub fn is_passive(&self) -> bool {
        let dim = self.matrix.nrows();
        let defect = (self.matrix.transpose() * &self.matrix - DMatrix::identity(dim, dim)).norm();
        defect <= PASSIVE_TOL * self.matrix.norm().max(1.0).powi(2)
            && self.displacement.norm() == 0.0
    }

    /// Composition that applies `self` first, then `next`.
    pub fn then(&self, next: &LinearMap) -> Result<LinearMap> {
        if self.n_modes() != next.n_modes() {
            return Err(Error::usage(format!(
                "cannot compose maps on {} and {} modes",
                self.n_modes(),
                next.n_modes()
            )));
        }
        Ok(LinearMap {
            matrix: &next.matrix * &self.matrix,
            displacement: &next.matrix * &self.displacement + &next.displacement,
        })
    }

    /// Pushes a Gaussian state through the map.
    pub fn apply(&self, state: &GaussianState) -> Result<GaussianState> {
        if state.n_modes() != self.n_modes() {
            return Err(Error::usage(format!(
                "map on {} modes applied to a {}-mode state",
                self.n_modes(),
                state.n_modes()
            )));
        }
        let mean = &self.matrix * state.mean() + &self.displacement;
        let cov = &self.matrix * state.cov() * self.matrix.transpose();
        GaussianState::new(mean, cov)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn coherent_zero_is_vacuum() {
        let s = GaussianState::coherent(0.0, 1.3).unwrap();
        assert_eq!(s.mean()[0], 0.0);
        assert_eq!(s.mean()[1], 0.0);
        assert_eq!(s.cov()[(0, 0)], 0.25);
        assert_eq!(s.cov()[(1, 1)], 0.25);
    }

    #[test]
    fn coherent_ten_at_zero_phase() {
        let s = GaussianState::coherent(10.0, 0.0).unwrap();
        assert!(close(s.mean()[0], 10.0_f64.sqrt(), 1e-15));
        assert_eq!(s.mean()[1], 0.0);
        assert!(close(s.mean_photon(0).unwrap(), 10.0, 1e-12));
    }

    #[test]
    fn coherent_phase_convention() {
        // alpha0 = sqrt(5) e^{-i pi/2} = -i sqrt(5)
        let s = GaussianState::coherent(5.0, PI / 2.0).unwrap();
        assert!(close(s.mean()[0], 0.0, 1e-15));
        assert!(close(s.mean()[1], -(5.0_f64.sqrt()), 1e-15));
    }

    #[test]
    fn coherent_rejects_bad_input() {
        assert!(GaussianState::coherent(-1.0, 0.0).is_err());
        assert!(GaussianState::coherent(f64::NAN, 0.0).is_err());
        assert!(GaussianState::coherent(f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn squeezed_zero_is_vacuum() {
        let s = GaussianState::squeezed_vacuum(0.0).unwrap();
        assert_eq!(s.cov()[(0, 0)], 0.25);
        assert_eq!(s.cov()[(1, 1)], 0.25);
        assert_eq!(s.mean().norm(), 0.0);
    }

    #[test]
    fn squeezed_ten_photon_number_roundtrip() {
        let s = GaussianState::squeezed_vacuum(10.0).unwrap();
        let r = 10.0_f64.sqrt().asinh();
        assert!(close(s.cov()[(0, 0)], (-2.0 * r).exp() / 4.0, 1e-15));
        assert!(close(s.cov()[(1, 1)], (2.0 * r).exp() / 4.0, 1e-13));
        assert!(close(s.mean_photon(0).unwrap(), 10.0, 1e-12));
    }

    #[test]
    fn squeezed_is_pure() {
        let s = GaussianState::squeezed_vacuum(5.0).unwrap();
        let det = s.cov()[(0, 0)] * s.cov()[(1, 1)];
        assert!(close(det, 1.0 / 16.0, 1e-15));
    }

    #[test]
    fn squeezed_rejects_bad_input() {
        assert!(GaussianState::squeezed_vacuum(-0.5).is_err());
        assert!(GaussianState::squeezed_vacuum(f64::NAN).is_err());
    }

    #[test]
    fn tensor_of_vacua() {
        let t = GaussianState::tensor(&GaussianState::vacuum(1), &GaussianState::vacuum(1));
        assert_eq!(t.n_modes(), 2);
        assert_eq!(t.cov(), &(DMatrix::identity(4, 4) * 0.25));
    }

    #[test]
    fn tensor_photon_number_adds() {
        let a = GaussianState::coherent(5.0, 0.0).unwrap();
        let b = GaussianState::squeezed_vacuum(5.0).unwrap();
        let t = GaussianState::tensor(&a, &b);
        assert!(close(t.total_mean_photon(), 10.0, 1e-11));
        assert!(close(t.mean_photon(0).unwrap(), 5.0, 1e-12));
        assert!(close(t.mean_photon(1).unwrap(), 5.0, 1e-12));
    }

    #[test]
    fn identity_map_is_noop() {
        let s = GaussianState::coherent(2.0, 0.7).unwrap();
        let out = LinearMap::identity(1).apply(&s).unwrap();
        assert!((out.mean() - s.mean()).norm() < 1e-15);
        assert!((out.cov() - s.cov()).norm() < 1e-15);
    }

    #[test]
    fn apply_rejects_dimension_mismatch() {
        let s = GaussianState::vacuum(2);
        assert!(LinearMap::identity(1).apply(&s).is_err());
    }

    #[test]
    fn wigner_vacuum_origin() {
        let s = GaussianState::vacuum(1);
        assert!(close(s.wigner_at(&[0.0, 0.0]).unwrap(), 2.0 / PI, 1e-14));
    }

    #[test]
    fn wigner_peak_is_displacement_invariant() {
        let s = GaussianState::coherent(1.0, 0.0).unwrap();
        let peak = s.wigner_at(&[1.0, 0.0]).unwrap();
        assert!(close(peak, 2.0 / PI, 1e-14));
    }

    #[test]
    fn wigner_coherent_at_origin() {
        let s = GaussianState::coherent(1.0, 0.0).unwrap();
        let w = s.wigner_at(&[0.0, 0.0]).unwrap();
        assert!(close(w, 2.0 / PI * (-2.0_f64).exp(), 1e-14));
    }

    #[test]
    fn wigner_flags_ill_conditioned_covariance() {
        let mut cov = DMatrix::identity(2, 2);
        cov[(0, 0)] = 1e-7;
        cov[(1, 1)] = 6.25e5;
        let s = GaussianState::new(DVector::zeros(2), cov).unwrap();
        match s.wigner_at(&[0.0, 0.0]) {
            Err(Error::Numerical(_)) => {}
            other => panic!("expected numerical error, got {other:?}"),
        }
    }

    #[test]
    fn marginal_of_two_mode_vacuum() {
        let s = GaussianState::vacuum(2);
        let m = s.marginal(&[0]).unwrap();
        assert_eq!(m.n_modes(), 1);
        assert_eq!(m.cov(), &(DMatrix::identity(2, 2) * 0.25));
    }

    #[test]
    fn marginal_of_tensor_recovers_factor() {
        let a = GaussianState::coherent(3.0, 0.4).unwrap();
        let b = GaussianState::squeezed_vacuum(2.0).unwrap();
        let t = GaussianState::tensor(&a, &b);
        let m0 = t.marginal(&[0]).unwrap();
        assert_eq!(m0.mean(), a.mean());
        assert_eq!(m0.cov(), a.cov());
        let m1 = t.marginal(&[1]).unwrap();
        assert_eq!(m1.cov(), b.cov());
    }

    #[test]
    fn marginal_rejects_bad_subsets() {
        let s = GaussianState::vacuum(2);
        assert!(s.marginal(&[]).is_err());
        assert!(s.marginal(&[2]).is_err());
        assert!(s.marginal(&[0, 0]).is_err());
    }

    #[test]
    fn symmetric_number_mean_examples() {
        assert!(close(
            GaussianState::vacuum(1).symmetric_number_mean(0).unwrap(),
            0.5,
            1e-15
        ));
        let c = GaussianState::coherent(5.0, 0.0).unwrap();
        assert!(close(c.symmetric_number_mean(0).unwrap(), 5.5, 1e-12));
        let q = GaussianState::squeezed_vacuum(5.0).unwrap();
        assert!(close(q.symmetric_number_mean(0).unwrap(), 5.5, 1e-12));
    }

    #[test]
    fn intensity_moments_vacuum() {
        let s = GaussianState::vacuum(2);
        let m = s.intensity_difference_moments(0, 1).unwrap();
        assert!(close(m.mean, 0.0, 1e-15));
        assert!(close(m.variance, 0.0, 1e-12));
        assert!(close(m.symmetric_variance(), 0.5, 1e-12));
    }

    #[test]
    fn intensity_moments_two_coherent_beams() {
        // Independent Poissonian beams: Var(n_a - n_b) = n_a + n_b.
        let a = GaussianState::coherent(5.0, 0.0).unwrap();
        let t = GaussianState::tensor(&a, &a);
        let m = t.intensity_difference_moments(0, 1).unwrap();
        assert!(close(m.mean, 0.0, 1e-12));
        assert!(close(m.variance, 10.0, 1e-10));
    }

    #[test]
    fn intensity_moments_reject_same_mode() {
        let s = GaussianState::vacuum(2);
        assert!(s.intensity_difference_moments(1, 1).is_err());
    }

    #[test]
    fn state_validation_rejects_asymmetry() {
        let mut cov = DMatrix::identity(2, 2) * 0.25;
        cov[(0, 1)] = 1e-3;
        assert!(GaussianState::new(DVector::zeros(2), cov).is_err());
    }

    #[test]
    fn state_validation_rejects_uncertainty_violation() {
        // I/8 is symmetric positive definite but below the vacuum bound.
        let cov = DMatrix::identity(2, 2) * 0.125;
        assert!(GaussianState::new(DVector::zeros(2), cov).is_err());
    }

    #[test]
    fn from_amplitude_rejects_non_unitary_scaling() {
        let m = DMatrix::from_row_slice(1, 1, &[Complex64::new(2.0, 0.0)]);
        assert!(LinearMap::from_amplitude_matrix(&m).is_err());
    }

    #[test]
    fn amplitude_phase_acts_as_rotation() {
        // alpha -> e^{i theta} alpha rotates (x, p) by theta.
        let theta = 0.6_f64;
        let m = DMatrix::from_row_slice(1, 1, &[Complex64::from_polar(1.0, theta)]);
        let map = LinearMap::from_amplitude_matrix(&m).unwrap();
        let s = GaussianState::coherent(1.0, 0.0).unwrap();
        let out = map.apply(&s).unwrap();
        assert!(close(out.mean()[0], theta.cos(), 1e-15));
        assert!(close(out.mean()[1], theta.sin(), 1e-15));
    }
}
