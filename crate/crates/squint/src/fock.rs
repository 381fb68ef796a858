//! Brute-force oracle in a truncated photon-number basis.
//!
//! States are expanded over |0> .. |cutoff-1>, propagated through beam
//! splitters and phase shifters exactly (up to truncation), and measured by
//! direct weighted sums. Nothing here shares code with the Gaussian layer;
//! agreement between the two is what the verification matrix checks.
//!
//! Truncation is tracked explicitly: `leak` is the probability mass lost to
//! the cutoff, and observables are evaluated on the renormalized truncated
//! state, so they carry errors of order the leak.

use num_complex::Complex64;
use std::cell::RefCell;

use crate::error::{Error, Result};

/// Basis size with negligible Poisson tail for a coherent state of the given
/// mean photon number: ceil(n + 10 sqrt(n + 1) + 20). Keeps the leak below
/// 1e-10 for coherent states. Squeezed vacuum has a much heavier
/// (geometric) number tail; use [`squeezed_cutoff`] for it.
pub fn cutoff_heuristic(mean_photon: f64) -> usize {
    assert!(mean_photon >= 0.0, "mean photon number must be >= 0");
    (mean_photon + 10.0 * (mean_photon + 1.0).sqrt() + 20.0).ceil() as usize
}

/// Basis size keeping the squeezed-vacuum leak below ~1e-12 and its
/// moment-weighted tail below ~1e-7. The photon-number tail of squeezed
/// vacuum decays like (n_s/(n_s+1))^(k/2), so the cutoff grows linearly in
/// n_s rather than like the Poisson rule above.
pub fn squeezed_cutoff(n_s: f64) -> usize {
    assert!(n_s >= 0.0, "mean photon number must be >= 0");
    let floor = cutoff_heuristic(n_s);
    if n_s <= 1e-12 {
        return floor;
    }
    let tanh_sq = n_s / (n_s + 1.0);
    let pairs = (5e-13_f64.ln() / tanh_sq.ln()).ceil() as usize + 8;
    floor.max(2 * pairs + 2)
}

/// A single optical mode in the truncated number basis.
#[derive(Debug, Clone)]
pub struct FockVector {
    amplitudes: Vec<Complex64>,
}

impl FockVector {
    /// Coherent state |alpha0> with alpha0 = sqrt(n_c) e^{-i phi_c}:
    /// c_k = e^{-n_c/2} alpha0^k / sqrt(k!), built by a stable recurrence.
    pub fn coherent(n_c: f64, phi_c: f64, cutoff: usize) -> Result<Self> {
        if !n_c.is_finite() || n_c < 0.0 {
            return Err(Error::domain(format!(
                "coherent photon number must be finite and >= 0, got {n_c}"
            )));
        }
        let needed = cutoff_heuristic(n_c);
        if cutoff < needed {
            let leak = Self::coherent_unchecked(n_c, phi_c, cutoff).leak();
            return Err(Error::numerical(format!(
                "cutoff {cutoff} below {needed} for n_c = {n_c}; measured leak {leak:.3e}"
            )));
        }
        Ok(Self::coherent_unchecked(n_c, phi_c, cutoff))
    }

    fn coherent_unchecked(n_c: f64, phi_c: f64, cutoff: usize) -> Self {
        let alpha = Complex64::from_polar(n_c.sqrt(), -phi_c);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); cutoff];
        let mut c = Complex64::new((-n_c / 2.0).exp(), 0.0);
        for (k, slot) in amplitudes.iter_mut().enumerate() {
            if k > 0 {
                c *= alpha / (k as f64).sqrt();
            }
            *slot = c;
        }
        FockVector { amplitudes }
    }

    /// Squeezed vacuum with r = asinh(sqrt(n_s)) and squeezing phase zero:
    /// c_{2m} = (-tanh r)^m sqrt((2m)!) / (2^m m! sqrt(cosh r)), odd
    /// amplitudes exactly zero.
    pub fn squeezed_vacuum(n_s: f64, cutoff: usize) -> Result<Self> {
        if !n_s.is_finite() || n_s < 0.0 {
            return Err(Error::domain(format!(
                "squeezed photon number must be finite and >= 0, got {n_s}"
            )));
        }
        let needed = cutoff_heuristic(n_s);
        if cutoff < needed {
            let leak = Self::squeezed_unchecked(n_s, cutoff).leak();
            return Err(Error::numerical(format!(
                "cutoff {cutoff} below {needed} for n_s = {n_s}; measured leak {leak:.3e}"
            )));
        }
        Ok(Self::squeezed_unchecked(n_s, cutoff))
    }

    fn squeezed_unchecked(n_s: f64, cutoff: usize) -> Self {
        let r = n_s.sqrt().asinh();
        let tanh_r = r.tanh();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); cutoff];
        let mut c = 1.0 / r.cosh().sqrt();
        amplitudes[0] = Complex64::new(c, 0.0);
        let mut m = 1usize;
        while 2 * m < cutoff {
            let k = (2 * m) as f64;
            c *= -tanh_r * ((k - 1.0) * k).sqrt() / k;
            amplitudes[2 * m] = Complex64::new(c, 0.0);
            m += 1;
        }
        FockVector { amplitudes }
    }

    pub fn cutoff(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, k: usize) -> Complex64 {
        self.amplitudes[k]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Probability mass lost to truncation.
    pub fn leak(&self) -> f64 {
        (1.0 - self.norm_sqr()).max(0.0)
    }

    /// <n> on the renormalized truncated state.
    pub fn mean_photon(&self) -> f64 {
        let norm = self.norm_sqr();
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(k, c)| k as f64 * c.norm_sqr())
            .sum::<f64>()
            / norm
    }

    /// <(-1)^n> on the renormalized truncated state.
    pub fn parity(&self) -> f64 {
        let norm = self.norm_sqr();
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.norm_sqr() } else { -c.norm_sqr() })
            .sum::<f64>()
            / norm
    }
}

/// Two optical modes in the truncated number basis; amplitudes indexed by
/// the photon numbers (k, l) of the two modes.
#[derive(Debug, Clone)]
pub struct TwoModeFock {
    dim: usize,
    amplitudes: Vec<Complex64>,
}

/// Photon-number moments of a two-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberMoments {
    pub mean_first: f64,
    pub mean_second: f64,
    /// Var(n_first - n_second).
    pub variance_difference: f64,
}

impl TwoModeFock {
    /// Product state a (x) b. The joint basis is sized so that every total
    /// photon sector populated by the factors stays fully representable
    /// under number-conserving gates.
    pub fn from_product(a: &FockVector, b: &FockVector) -> Self {
        let dim = a.cutoff() + b.cutoff() - 1;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..a.cutoff() {
            for l in 0..b.cutoff() {
                amplitudes[k * dim + l] = a.amplitude(k) * b.amplitude(l);
            }
        }
        TwoModeFock { dim, amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitude(&self, k: usize, l: usize) -> Complex64 {
        self.amplitudes[k * self.dim + l]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn leak(&self) -> f64 {
        (1.0 - self.norm_sqr()).max(0.0)
    }

    /// Probability carried by total photon numbers >= `n`.
    pub fn total_photon_mass_above(&self, n: usize) -> f64 {
        let mut mass = 0.0;
        for k in 0..self.dim {
            for l in 0..self.dim {
                if k + l >= n {
                    mass += self.amplitude(k, l).norm_sqr();
                }
            }
        }
        mass
    }

    /// 50-50 beam splitter on the mode pair, applied exactly within each
    /// total-photon sector.
    pub fn apply_beam_splitter(&self) -> TwoModeFock {
        let dim = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for n_total in 0..=(2 * (dim - 1)) {
            let lo = n_total.saturating_sub(dim - 1);
            let hi = n_total.min(dim - 1);
            let input: Vec<Complex64> = (lo..=hi)
                .map(|k| self.amplitude(k, n_total - k))
                .collect();
            if input.iter().all(|c| c.norm_sqr() == 0.0) {
                continue;
            }
            with_sector_matrix(n_total, |block| {
                let cols = n_total + 1;
                for m in lo..=hi {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (off, amp) in input.iter().enumerate() {
                        let k = lo + off;
                        acc += block[m * cols + k] * amp;
                    }
                    out[m * dim + (n_total - m)] = acc;
                }
            });
        }
        TwoModeFock {
            dim,
            amplitudes: out,
        }
    }

    /// Phase shifter alpha -> e^{-i phi} alpha on one mode:
    /// |k, l> picks up e^{-i k phi} (mode 0) or e^{-i l phi} (mode 1).
    pub fn apply_phase(&self, mode: usize, phi: f64) -> Result<TwoModeFock> {
        if mode > 1 {
            return Err(Error::usage(format!(
                "two-mode state has modes 0 and 1, got {mode}"
            )));
        }
        let dim = self.dim;
        let mut out = self.amplitudes.clone();
        for k in 0..dim {
            for l in 0..dim {
                let photons = if mode == 0 { k } else { l };
                out[k * dim + l] *= Complex64::from_polar(1.0, -(photons as f64) * phi);
            }
        }
        Ok(TwoModeFock {
            dim,
            amplitudes: out,
        })
    }

    /// Balanced interferometer: splitter, phase on the second mode, splitter.
    pub fn apply_mzi(&self, phi: f64) -> TwoModeFock {
        self.apply_beam_splitter()
            .apply_phase(1, phi)
            .expect("mode 1 exists")
            .apply_beam_splitter()
    }

    /// <(-1)^n> of one mode on the renormalized truncated state.
    pub fn parity(&self, mode: usize) -> Result<f64> {
        if mode > 1 {
            return Err(Error::usage(format!(
                "two-mode state has modes 0 and 1, got {mode}"
            )));
        }
        let norm = self.norm_sqr();
        let mut acc = 0.0;
        for k in 0..self.dim {
            for l in 0..self.dim {
                let photons = if mode == 0 { k } else { l };
                let p = self.amplitude(k, l).norm_sqr();
                acc += if photons % 2 == 0 { p } else { -p };
            }
        }
        Ok(acc / norm)
    }

    /// Mean photon numbers and the variance of their difference, on the
    /// renormalized truncated state.
    pub fn number_moments(&self) -> NumberMoments {
        let norm = self.norm_sqr();
        let (mut ma, mut mb, mut diff_sq) = (0.0, 0.0, 0.0);
        for k in 0..self.dim {
            for l in 0..self.dim {
                let p = self.amplitude(k, l).norm_sqr();
                ma += k as f64 * p;
                mb += l as f64 * p;
                diff_sq += (k as f64 - l as f64).powi(2) * p;
            }
        }
        ma /= norm;
        mb /= norm;
        diff_sq /= norm;
        NumberMoments {
            mean_first: ma,
            mean_second: mb,
            variance_difference: diff_sq - (ma - mb) * (ma - mb),
        }
    }
}

// Sector matrices of the 50-50 beam splitter, grown on demand and cached per
// thread. A^{(N)} is (N+1) x (N+1), row-major over (m, k), built by the
// creation-operator recursion; magnitudes never exceed one, so rounding
// stays at machine level instead of the catastrophic cancellation a direct
// binomial sum would hit in high sectors.
thread_local! {
    static BS_SECTORS: RefCell<Vec<Vec<Complex64>>> = const { RefCell::new(Vec::new()) };
}

fn with_sector_matrix<R>(n_total: usize, f: impl FnOnce(&[Complex64]) -> R) -> R {
    BS_SECTORS.with(|cell| {
        let mut sectors = cell.borrow_mut();
        while sectors.len() <= n_total {
            let n = sectors.len();
            if n == 0 {
                sectors.push(vec![Complex64::new(1.0, 0.0)]);
                continue;
            }
            let prev = std::mem::take(&mut sectors[n - 1]);
            let cols = n + 1;
            let prev_cols = n;
            let mut block = vec![Complex64::new(0.0, 0.0); cols * cols];
            let at_prev = |m: isize, k: usize| -> Complex64 {
                if m < 0 || m as usize >= prev_cols {
                    Complex64::new(0.0, 0.0)
                } else {
                    prev[m as usize * prev_cols + k]
                }
            };
            let i = Complex64::i();
            for m in 0..cols {
                let mf = m as f64;
                let rest = (n - m) as f64;
                // The k = 0 column descends through the second mode's
                // creation operator, the others through the first mode's.
                block[m * cols] = (i * mf.sqrt() * at_prev(m as isize - 1, 0)
                    + rest.sqrt() * at_prev(m as isize, 0))
                    / (2.0 * n as f64).sqrt();
                for k in 1..cols {
                    block[m * cols + k] = (mf.sqrt() * at_prev(m as isize - 1, k - 1)
                        + i * rest.sqrt() * at_prev(m as isize, k - 1))
                        / (2.0 * k as f64).sqrt();
                }
            }
            sectors[n - 1] = prev;
            sectors.push(block);
        }
        f(&sectors[n_total])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn single_photon_pair(dim: usize, k: usize, l: usize) -> TwoModeFock {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim * dim];
        amplitudes[k * dim + l] = Complex64::new(1.0, 0.0);
        TwoModeFock { dim, amplitudes }
    }

    #[test]
    fn heuristic_values() {
        assert_eq!(cutoff_heuristic(0.0), 30);
        assert_eq!(cutoff_heuristic(1.0), 36);
    }

    #[test]
    fn coherent_zero_is_ground_state() {
        let v = FockVector::coherent(0.0, 0.0, 8).unwrap();
        assert_eq!(v.amplitude(0), Complex64::new(1.0, 0.0));
        assert!(v.amplitudes[1..].iter().all(|c| c.norm_sqr() == 0.0));
    }

    #[test]
    fn coherent_parity_and_mean() {
        let v = FockVector::coherent(1.0, 0.0, 40).unwrap();
        assert!(close(v.parity(), (-2.0_f64).exp(), 1e-10));
        assert!(close(v.mean_photon(), 1.0, 1e-12));
    }

    #[test]
    fn coherent_leak_guarantee_at_heuristic_cutoff() {
        for &n in &[0.5, 1.0, 5.0, 10.0] {
            let v = FockVector::coherent(n, 0.4, cutoff_heuristic(n)).unwrap();
            assert!(v.leak() < 1e-10, "leak {} at n_c = {n}", v.leak());
        }
    }

    #[test]
    fn coherent_rejects_small_cutoff() {
        match FockVector::coherent(10.0, 0.0, 16) {
            Err(Error::Numerical(msg)) => assert!(msg.contains("leak")),
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn squeezed_zero_is_ground_state() {
        let v = FockVector::squeezed_vacuum(0.0, 8).unwrap();
        assert_eq!(v.amplitude(0), Complex64::new(1.0, 0.0));
        assert!(v.leak() < 1e-15);
    }

    #[test]
    fn squeezed_has_even_support_and_unit_parity() {
        let v = FockVector::squeezed_vacuum(5.0, 120).unwrap();
        for k in (1..120).step_by(2) {
            assert_eq!(v.amplitude(k).norm_sqr(), 0.0);
        }
        assert_eq!(v.parity(), 1.0);
    }

    #[test]
    fn squeezed_mean_photon_converges() {
        let v = FockVector::squeezed_vacuum(1.0, 60).unwrap();
        assert!(close(v.mean_photon(), 1.0, 2e-8));
    }

    #[test]
    fn squeezed_leak_guarantee_at_squeezed_cutoff() {
        for &n in &[0.5, 1.0, 2.0, 5.0, 10.0] {
            let v = FockVector::squeezed_vacuum(n, squeezed_cutoff(n)).unwrap();
            assert!(v.leak() < 1e-10, "leak {} at n_s = {n}", v.leak());
        }
    }

    #[test]
    fn splitter_on_single_photon() {
        let out = single_photon_pair(4, 1, 0).apply_beam_splitter();
        let r = 0.5_f64.sqrt();
        assert!((out.amplitude(1, 0) - Complex64::new(r, 0.0)).norm() < 1e-14);
        assert!((out.amplitude(0, 1) - Complex64::new(0.0, r)).norm() < 1e-14);
    }

    #[test]
    fn splitter_hong_ou_mandel() {
        let out = single_photon_pair(4, 1, 1).apply_beam_splitter();
        assert!(out.amplitude(1, 1).norm() < 1e-14);
        let r = Complex64::new(0.0, 0.5_f64.sqrt());
        assert!((out.amplitude(2, 0) - r).norm() < 1e-14);
        assert!((out.amplitude(0, 2) - r).norm() < 1e-14);
    }

    #[test]
    fn phase_on_second_mode() {
        let phi = 0.9;
        let out = single_photon_pair(4, 0, 1).apply_phase(1, phi).unwrap();
        let expect = Complex64::from_polar(1.0, -phi);
        assert!((out.amplitude(0, 1) - expect).norm() < 1e-14);
    }

    #[test]
    fn norm_preserved_through_six_elements() {
        let a = FockVector::coherent(1.5, 0.2, 40).unwrap();
        let b = FockVector::squeezed_vacuum(1.0, squeezed_cutoff(1.0)).unwrap();
        let mut s = TwoModeFock::from_product(&a, &b);
        let before = s.norm_sqr();
        s = s.apply_beam_splitter();
        s = s.apply_phase(1, 0.7).unwrap();
        s = s.apply_beam_splitter();
        s = s.apply_phase(0, 1.9).unwrap();
        s = s.apply_beam_splitter();
        s = s.apply_phase(1, 2.4).unwrap();
        assert!(close(s.norm_sqr(), before, 1e-10));
    }

    #[test]
    fn two_mode_vacuum_observables() {
        let vac = FockVector::coherent(0.0, 0.0, 8).unwrap();
        let s = TwoModeFock::from_product(&vac, &vac);
        assert_eq!(s.parity(0).unwrap(), 1.0);
        let m = s.number_moments();
        assert_eq!(m.mean_first, 0.0);
        assert_eq!(m.mean_second, 0.0);
        assert_eq!(m.variance_difference, 0.0);
    }

    #[test]
    fn independent_poisson_difference_variance() {
        let a = FockVector::coherent(2.0, 0.0, cutoff_heuristic(2.0)).unwrap();
        let s = TwoModeFock::from_product(&a, &a);
        let m = s.number_moments();
        assert!(close(m.mean_first, 2.0, 1e-10));
        assert!(close(m.variance_difference, 4.0, 1e-9));
    }

    #[test]
    fn truncation_insensitive_once_converged() {
        let parity_at = |cut: usize| {
            let a = FockVector::coherent(1.0, 0.0, cut).unwrap();
            let b = FockVector::squeezed_vacuum(1.0, cut).unwrap();
            TwoModeFock::from_product(&a, &b)
                .apply_mzi(0.7)
                .parity(0)
                .unwrap()
        };
        let base = squeezed_cutoff(1.0);
        assert!(close(parity_at(base), parity_at(base + 20), 1e-10));
    }
}
