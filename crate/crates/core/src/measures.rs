//! Entanglement, coherence, uncertainty, entropy and fidelity of two-qubit states.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{sinc, static_average, ChannelParams};
use crate::error::{Error, Result};
use crate::linalg::{
    c, entropy_of_spectrum, hermitian_eigensystem, kron, partial_trace, partial_transpose_first,
    pauli_x, pauli_z, von_neumann_entropy, ComplexMatrix, DensityMatrix, Subsystem,
};
use crate::spin::{thermal_state, SpinParams, XState};

/// Partial-transpose eigenvalues above this are not counted as negative.
pub const NEGATIVITY_EIGEN_CUTOFF: f64 = -1e-14;

/// `2 Σ |λ⁻|` over the negative eigenvalues of the partial transpose, unclamped.
pub fn negativity_raw(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose_first(rho.matrix())?;
    let eig = hermitian_eigensystem(&pt)?;
    Ok(2.0
        * eig
            .values
            .iter()
            .filter(|&&v| v < NEGATIVITY_EIGEN_CUTOFF)
            .map(|v| v.abs())
            .sum::<f64>())
}

/// Negativity clamped to `[0, 1]`: 1 for a Bell state, 0 for separable states.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    Ok(negativity_raw(rho)?.clamp(0.0, 1.0))
}

/// ℓ1-norm coherence: sum of the moduli of all off-diagonal entries.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let n = m.dim();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total += m[(i, j)].norm();
            }
        }
    }
    total
}

/// State after measuring `observable` on the first qubit and forgetting the
/// outcome: `Σ_i (Π_i ⊗ I) ρ (Π_i ⊗ I)`.
pub fn measured_state(rho: &DensityMatrix, observable: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigensystem(observable)?;
    let id = ComplexMatrix::identity(2)?;
    let mut out = ComplexMatrix::zeros(4)?;
    for k in 0..2 {
        let projector = kron(&ComplexMatrix::outer(&eig.vectors.column(k))?, &id)?;
        let term = &(&projector * rho.matrix()) * &projector;
        out = &out + &term;
    }
    Ok(out)
}

/// Conditional entropy `S(ρ_OB) − S(ρ_B)` of the outcome of `observable` on
/// the first qubit given the second qubit as quantum memory.
pub fn conditional_measurement_entropy(rho: &DensityMatrix, observable: &ComplexMatrix) -> Result<f64> {
    let post = measured_state(rho, observable)?;
    let s_post = entropy_of_spectrum(&hermitian_eigensystem(&post)?.values)?;
    let rho_b = partial_trace(rho.matrix(), Subsystem::Second)?;
    let s_b = entropy_of_spectrum(&hermitian_eigensystem(&rho_b)?.values)?;
    Ok(s_post - s_b)
}

/// Memory-assisted entropic uncertainty `S(X|B) + S(Z|B)` with `σx`, `σz`
/// measured on the first qubit and the second qubit as memory.
pub fn entropic_uncertainty(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    Ok(conditional_measurement_entropy(rho, &pauli_x())?
        + conditional_measurement_entropy(rho, &pauli_z())?)
}

/// Mixedness `−Tr[ρ log₂ ρ]`.
pub fn mixedness_entropy(rho: &DensityMatrix) -> Result<f64> {
    von_neumann_entropy(rho)
}

/// `Tr[ρσ] + 2 sqrt(det ρ · det σ)`.
pub fn fidelity_pair(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::InvalidArgument(format!(
            "fidelity of {}x{} and {}x{} states",
            rho.dim(),
            rho.dim(),
            sigma.dim(),
            sigma.dim()
        )));
    }
    let overlap = (rho.matrix() * sigma.matrix()).trace().re;
    let det_rho = rho.matrix().hermitian_determinant()?.max(0.0);
    let det_sigma = sigma.matrix().hermitian_determinant()?.max(0.0);
    Ok(overlap + 2.0 * (det_rho * det_sigma).sqrt())
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::InvalidArgument(format!(
            "expected a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    Ok(())
}

/// `|Φ⁺><Φ⁺|`, the Bell target of the second fidelity.
pub fn bell_target() -> DensityMatrix {
    XState::bell_phi_plus()
        .to_density_matrix()
        .expect("Bell state is a valid density matrix")
}

/// Closed-form fidelity `X1 + X2 + X3` between the dephased state at time
/// `t` and the undephased `initial` state.
pub fn fidelity_to_initial_state(initial: &XState, ch: &ChannelParams, t: f64) -> f64 {
    let s = initial;
    let envelope = sinc(2.0 * ch.delta_q * ch.lambda * t);
    let r14_sq = s.r14.norm_sqr();
    let r23_sq = s.r23.norm_sqr();
    let x1 = s.r11.powi(2) + s.r22.powi(2) + s.r33.powi(2) + s.r44.powi(2) + 2.0 * r23_sq;
    // sin(2Δ_Qλt)/(Δ_Qλt) = 2·sinc
    let x2 = r14_sq * 2.0 * envelope * (4.0 * ch.delta_o * ch.lambda * t).cos();
    // The printed radicand divided by (Δ_Qλt)² becomes the factor 4·(… sinc² …).
    let radicand = (r14_sq - s.r11 * s.r44)
        * (s.r22 * s.r33 - r23_sq).powi(2)
        * 4.0
        * (r14_sq * envelope * envelope - s.r11 * s.r44);
    let x3 = radicand.max(0.0).sqrt();
    x1 + x2 + x3
}

/// Closed-form fidelity between the dephased state at time `t` and `|Φ⁺><Φ⁺|`.
///
/// Returns the real part; the imaginary part vanishes identically.
pub fn fidelity_to_bell_state(initial: &XState, ch: &ChannelParams, t: f64) -> f64 {
    fidelity_to_bell_complex(initial, ch, t).re
}

pub(crate) fn fidelity_to_bell_complex(initial: &XState, ch: &ChannelParams, t: f64) -> Complex64 {
    let s = initial;
    let envelope = sinc(2.0 * ch.delta_q * ch.lambda * t);
    let theta = 4.0 * ch.delta_o * ch.lambda * t;
    let rotated = Complex64::from_polar(1.0, -theta)
        * (s.r14 + s.r14.conj() * Complex64::from_polar(1.0, 2.0 * theta));
    (c(2.0 * (s.r11 + s.r44), 0.0) + rotated * (2.0 * envelope)) * 0.25
}

/// Fidelity between `ρ_st(t, T)` and the thermal state `ρ(0, T)`.
pub fn fidelity_to_initial(p: &SpinParams, ch: &ChannelParams, t: f64) -> Result<f64> {
    ch.validate()?;
    Ok(fidelity_to_initial_state(&thermal_state(p)?, ch, t))
}

/// Fidelity between `ρ_st(t, T)` and `|Φ⁺><Φ⁺|`.
pub fn fidelity_to_bell(p: &SpinParams, ch: &ChannelParams, t: f64) -> Result<f64> {
    ch.validate()?;
    Ok(fidelity_to_bell_state(&thermal_state(p)?, ch, t))
}

/// The quantities a sweep can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "NG")]
    Negativity,
    #[serde(rename = "EU")]
    EntropicUncertainty,
    #[serde(rename = "LC")]
    L1Coherence,
    #[serde(rename = "EN")]
    Entropy,
    #[serde(rename = "FID1")]
    FidelityInitial,
    #[serde(rename = "FID2")]
    FidelityBell,
}

impl Measure {
    /// Column order of emitted tables.
    pub const ALL: [Measure; 6] = [
        Measure::Negativity,
        Measure::EntropicUncertainty,
        Measure::L1Coherence,
        Measure::Entropy,
        Measure::FidelityInitial,
        Measure::FidelityBell,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Measure::Negativity => "NG",
            Measure::EntropicUncertainty => "EU",
            Measure::L1Coherence => "LC",
            Measure::Entropy => "EN",
            Measure::FidelityInitial => "FID1",
            Measure::FidelityBell => "FID2",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Measure::ALL
            .into_iter()
            .find(|m| m.label() == s)
            .ok_or_else(|| format!("unknown measure `{s}` (expected one of NG, EU, LC, EN, FID1, FID2)"))
    }
}

/// A set of measures, always iterated in [`Measure::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureSet([bool; 6]);

impl MeasureSet {
    pub fn all() -> Self {
        Self([true; 6])
    }

    pub fn from_measures(measures: impl IntoIterator<Item = Measure>) -> Self {
        let mut set = [false; 6];
        for m in measures {
            set[Self::slot(m)] = true;
        }
        Self(set)
    }

    fn slot(m: Measure) -> usize {
        Measure::ALL.iter().position(|&x| x == m).expect("listed")
    }

    pub fn contains(&self, m: Measure) -> bool {
        self.0[Self::slot(m)]
    }

    pub fn is_empty(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = Measure> + '_ {
        Measure::ALL.into_iter().filter(|&m| self.contains(m))
    }
}

impl Default for MeasureSet {
    fn default() -> Self {
        Self::all()
    }
}

/// Values of the requested measures at one time point; absent ones are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureRecord {
    pub t: f64,
    #[serde(rename = "NG")]
    pub ng: Option<f64>,
    #[serde(rename = "EU")]
    pub eu: Option<f64>,
    #[serde(rename = "LC")]
    pub lc: Option<f64>,
    #[serde(rename = "EN")]
    pub en: Option<f64>,
    #[serde(rename = "FID1")]
    pub fid1: Option<f64>,
    #[serde(rename = "FID2")]
    pub fid2: Option<f64>,
}

impl MeasureRecord {
    pub fn get(&self, m: Measure) -> Option<f64> {
        match m {
            Measure::Negativity => self.ng,
            Measure::EntropicUncertainty => self.eu,
            Measure::L1Coherence => self.lc,
            Measure::Entropy => self.en,
            Measure::FidelityInitial => self.fid1,
            Measure::FidelityBell => self.fid2,
        }
    }
}

/// Evaluate `measures` on `ρ_st(t, T)` obtained from the thermal state `initial`.
pub fn evaluate(initial: &XState, ch: &ChannelParams, t: f64, measures: MeasureSet) -> Result<MeasureRecord> {
    let state = static_average(initial, ch, t);
    let needs_matrix = [
        Measure::Negativity,
        Measure::EntropicUncertainty,
        Measure::L1Coherence,
        Measure::Entropy,
    ]
    .into_iter()
    .any(|m| measures.contains(m));
    let rho = if needs_matrix {
        Some(state.to_density_matrix()?)
    } else {
        None
    };
    let on_rho = |m: Measure, f: &dyn Fn(&DensityMatrix) -> Result<f64>| -> Result<Option<f64>> {
        match (&rho, measures.contains(m)) {
            (Some(r), true) => f(r).map(Some),
            _ => Ok(None),
        }
    };
    Ok(MeasureRecord {
        t,
        ng: on_rho(Measure::Negativity, &negativity)?,
        eu: on_rho(Measure::EntropicUncertainty, &entropic_uncertainty)?,
        lc: on_rho(Measure::L1Coherence, &|r| Ok(l1_coherence(r)))?,
        en: on_rho(Measure::Entropy, &mixedness_entropy)?,
        fid1: measures
            .contains(Measure::FidelityInitial)
            .then(|| fidelity_to_initial_state(initial, ch, t)),
        fid2: measures
            .contains(Measure::FidelityBell)
            .then(|| fidelity_to_bell_state(initial, ch, t)),
    })
}
