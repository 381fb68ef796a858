//! Optical elements and preset interferometer topologies.
//!
//! Elements are built in the mode-amplitude convention of the balanced beam
//! splitter (1/sqrt(2)) [[1, i], [i, 1]] and the phase shifter
//! diag(1, e^{-i phi}) acting on the second mode. The balanced Mach-Zehnder
//! interferometer is the composition splitter -> phase -> splitter.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianState, LinearMap};

/// Fixed quarter-wave path offset inside the analyzer interferometer of the
/// local-oscillator preset. With the oscillator phase convention below it
/// pins the built signal to the closed-form intensity difference; the
/// exposed control phase is measured relative to this operating point.
const ANALYZER_OFFSET: f64 = FRAC_PI_2;

/// Beam splitter of transmissivity `t` between modes `i` and `j`:
/// amplitude matrix [[sqrt(t), i sqrt(1-t)], [i sqrt(1-t), sqrt(t)]].
pub fn beam_splitter(n_modes: usize, modes: (usize, usize), t: f64) -> Result<LinearMap> {
    let (i, j) = modes;
    check_pair(n_modes, i, j)?;
    if !t.is_finite() || !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(format!(
            "beam-splitter transmissivity must lie in [0, 1], got {t}"
        )));
    }
    let mut m = DMatrix::from_diagonal_element(n_modes, n_modes, Complex64::new(1.0, 0.0));
    let tr = Complex64::new(t.sqrt(), 0.0);
    let rf = Complex64::new(0.0, (1.0 - t).sqrt());
    m[(i, i)] = tr;
    m[(j, j)] = tr;
    m[(i, j)] = rf;
    m[(j, i)] = rf;
    LinearMap::from_amplitude_matrix(&m)
}

/// The 50-50 beam splitter between modes `i` and `j`.
pub fn beam_splitter_5050(n_modes: usize, modes: (usize, usize)) -> Result<LinearMap> {
    beam_splitter(n_modes, modes, 0.5)
}

/// Phase shifter on one mode: alpha -> e^{-i phi} alpha.
pub fn phase_shifter(n_modes: usize, mode: usize, phi: f64) -> Result<LinearMap> {
    if mode >= n_modes {
        return Err(Error::usage(format!(
            "phase-shifter mode {mode} out of range for {n_modes} modes"
        )));
    }
    if !phi.is_finite() {
        return Err(Error::domain("phase must be finite".to_string()));
    }
    let mut m = DMatrix::from_diagonal_element(n_modes, n_modes, Complex64::new(1.0, 0.0));
    m[(mode, mode)] = Complex64::from_polar(1.0, -phi);
    LinearMap::from_amplitude_matrix(&m)
}

/// Balanced two-mode Mach-Zehnder interferometer with accumulated phase
/// `phi`: splitter, phase shifter on the second arm, splitter.
pub fn mzi(phi: f64) -> Result<LinearMap> {
    let bs = beam_splitter_5050(2, (0, 1))?;
    bs.then(&phase_shifter(2, 1, phi)?)?.then(&bs)
}

/// Exact strong-oscillator limit of local-oscillator injection: a pure
/// displacement of magnitude sqrt(n_lo) on the target mode, at the phase set
/// by `phi_lo`.
pub fn lo_displacement(n_modes: usize, mode: usize, n_lo: f64, phi_lo: f64) -> Result<LinearMap> {
    if mode >= n_modes {
        return Err(Error::usage(format!(
            "displacement mode {mode} out of range for {n_modes} modes"
        )));
    }
    check_photons("n_lo", n_lo)?;
    if !phi_lo.is_finite() {
        return Err(Error::domain("oscillator phase must be finite".to_string()));
    }
    let amp = n_lo.sqrt();
    let mut d = DVector::zeros(2 * n_modes);
    d[2 * mode] = -amp * phi_lo.sin();
    d[2 * mode + 1] = -amp * phi_lo.cos();
    LinearMap::displacement_map(n_modes, d)
}

/// Finite-transmissivity local-oscillator injection: appends one ancilla
/// mode (index `n_modes`) prepared as a coherent state of n_lo / T photons
/// and couples it to the target mode through a beam splitter that keeps a
/// fraction 1 - T of the signal. As T -> 0 the effect on the target mode
/// converges to [`lo_displacement`].
pub fn lo_injection(
    n_modes: usize,
    mode: usize,
    n_lo: f64,
    phi_lo: f64,
    t: f64,
) -> Result<(LinearMap, GaussianState)> {
    if mode >= n_modes {
        return Err(Error::usage(format!(
            "injection mode {mode} out of range for {n_modes} modes"
        )));
    }
    check_photons("n_lo", n_lo)?;
    if !t.is_finite() || t <= 0.0 || t > 1.0 {
        return Err(Error::domain(format!(
            "oscillator transmissivity must lie in (0, 1], got {t}"
        )));
    }
    let map = beam_splitter(n_modes + 1, (mode, n_modes), 1.0 - t)?;
    let ancilla = GaussianState::coherent(n_lo / t, phi_lo + std::f64::consts::PI)?;
    Ok((map, ancilla))
}

/// Embeds a map into a larger register, acting on the listed global modes.
pub fn embed_map(map: &LinearMap, n_total: usize, modes: &[usize]) -> Result<LinearMap> {
    if modes.len() != map.n_modes() {
        return Err(Error::usage(format!(
            "embedding expects {} target modes, got {}",
            map.n_modes(),
            modes.len()
        )));
    }
    for (i, &m) in modes.iter().enumerate() {
        if m >= n_total {
            return Err(Error::usage(format!(
                "target mode {m} out of range for {n_total} modes"
            )));
        }
        if modes[..i].contains(&m) {
            return Err(Error::usage(format!("duplicate target mode {m}")));
        }
    }
    let mut s = DMatrix::identity(2 * n_total, 2 * n_total);
    let mut d = DVector::zeros(2 * n_total);
    for (a, &ma) in modes.iter().enumerate() {
        d[2 * ma] = map.displacement()[2 * a];
        d[2 * ma + 1] = map.displacement()[2 * a + 1];
        for (b, &mb) in modes.iter().enumerate() {
            for da in 0..2 {
                for db in 0..2 {
                    s[(2 * ma + da, 2 * mb + db)] = map.matrix()[(2 * a + da, 2 * b + db)];
                }
            }
        }
        // Clear the identity entries on embedded rows/columns.
        for other in 0..n_total {
            if !modes.contains(&other) {
                for da in 0..2 {
                    for db in 0..2 {
                        s[(2 * ma + da, 2 * other + db)] = 0.0;
                        s[(2 * other + da, 2 * ma + db)] = 0.0;
                    }
                }
            }
        }
    }
    LinearMap::from_parts(s, d)
}

/// How the strong local oscillator is modeled in the intensity-difference
/// preset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoModel {
    /// Exact strong-oscillator limit (pure displacement, no ancilla).
    Displacement,
    /// Physical beam splitter of the given transmissivity plus an ancilla
    /// mode carrying the oscillator field.
    FiniteT(f64),
}

impl Default for LoModel {
    fn default() -> Self {
        LoModel::Displacement
    }
}

/// Parameters of the parity-detection interferometer: coherent light in one
/// input port, squeezed vacuum in the other, balanced interferometer with
/// accumulated phase `phi`, parity read on the first output mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityMzi {
    pub n_c: f64,
    pub n_s: f64,
    pub phi_c: f64,
    pub phi: f64,
}

/// Parameters of the intensity-difference scheme: the same interferometer
/// followed by local-oscillator injection on the first output and an
/// analyzer interferometer, with the photon-number difference of the two
/// final ports as the signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnoHofmann {
    pub n_c: f64,
    pub n_s: f64,
    pub phi_c: f64,
    pub phi: f64,
    pub n_lo: f64,
    pub phi_lo: f64,
    pub control_phase: f64,
    pub lo_model: LoModel,
}

impl OnoHofmann {
    pub fn new(n_c: f64, n_s: f64, phi_c: f64, phi: f64, n_lo: f64, phi_lo: f64) -> Self {
        OnoHofmann {
            n_c,
            n_s,
            phi_c,
            phi,
            n_lo,
            phi_lo,
            control_phase: 0.0,
            lo_model: LoModel::Displacement,
        }
    }
}

/// A preset experiment topology.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitPreset {
    ParityMzi(ParityMzi),
    OnoHofmann(OnoHofmann),
}

impl CircuitPreset {
    pub fn name(&self) -> &'static str {
        match self {
            CircuitPreset::ParityMzi(_) => "parity_mzi",
            CircuitPreset::OnoHofmann(_) => "ono_hofmann",
        }
    }
}

/// A built circuit: input state, total map, and the pair of detection modes.
#[derive(Debug, Clone)]
pub struct Built {
    pub input: GaussianState,
    pub map: LinearMap,
    /// Primary detection mode first; for intensity difference the signal is
    /// n(first) - n(second).
    pub detection_modes: (usize, usize),
}

impl Built {
    /// Pushes the input through the map.
    pub fn output(&self) -> Result<GaussianState> {
        self.map.apply(&self.input)
    }
}

/// Assembles a preset topology into an input state and total map.
pub fn build(preset: &CircuitPreset) -> Result<Built> {
    match preset {
        CircuitPreset::ParityMzi(p) => {
            check_photons("n_c", p.n_c)?;
            check_photons("n_s", p.n_s)?;
            let input = GaussianState::tensor(
                &GaussianState::coherent(p.n_c, p.phi_c)?,
                &GaussianState::squeezed_vacuum(p.n_s)?,
            );
            Ok(Built {
                input,
                map: mzi(p.phi)?,
                detection_modes: (0, 1),
            })
        }
        CircuitPreset::OnoHofmann(p) => {
            check_photons("n_c", p.n_c)?;
            check_photons("n_s", p.n_s)?;
            check_photons("n_lo", p.n_lo)?;
            let two_mode_input = GaussianState::tensor(
                &GaussianState::coherent(p.n_c, p.phi_c)?,
                &GaussianState::squeezed_vacuum(p.n_s)?,
            );
            let first = mzi(p.phi)?;
            let analyzer = mzi(p.control_phase + ANALYZER_OFFSET)?;
            match p.lo_model {
                LoModel::Displacement => {
                    let inject = lo_displacement(2, 0, p.n_lo, p.phi_lo)?;
                    Ok(Built {
                        input: two_mode_input,
                        map: first.then(&inject)?.then(&analyzer)?,
                        detection_modes: (0, 1),
                    })
                }
                LoModel::FiniteT(t) => {
                    let (mix, ancilla) = lo_injection(2, 0, p.n_lo, p.phi_lo, t)?;
                    let input = GaussianState::tensor(&two_mode_input, &ancilla);
                    let map = embed_map(&first, 3, &[0, 1])?
                        .then(&mix)?
                        .then(&embed_map(&analyzer, 3, &[0, 1])?)?;
                    Ok(Built {
                        input,
                        map,
                        detection_modes: (0, 1),
                    })
                }
            }
        }
    }
}

fn check_pair(n_modes: usize, i: usize, j: usize) -> Result<()> {
    if i == j {
        return Err(Error::usage(format!(
            "beam splitter needs two distinct modes, got {i} twice"
        )));
    }
    if i >= n_modes || j >= n_modes {
        return Err(Error::usage(format!(
            "mode pair ({i}, {j}) out of range for {n_modes} modes"
        )));
    }
    Ok(())
}

fn check_photons(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::domain(format!(
            "{name} must be finite and >= 0, got {value}"
        )));
    }
    Ok(())
}
