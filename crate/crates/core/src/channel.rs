//! Classical dephasing field acting identically on both qubits, and its
//! average over a uniform static-noise distribution.
//!
//! Each qubit sees `H_P = diag(ε + Δ_P λ, ε − Δ_P λ)`. For identical
//! sub-channels (`Δ_X = Δ_Y`) only the `|00>↔|11>` coherence picks up a
//! phase, `r14 ↦ r14 e^{-4iΔλt}`. Averaging that phase over `Δ` uniform on
//! `[δ₀ − Δ_Q/2, δ₀ + Δ_Q/2]` gives the sinc envelope
//! `sin(2Δ_Qλt) / (2Δ_Qλt)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, kron, ComplexMatrix};
use crate::spin::XState;

/// Parameters of the classical channel and its static noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Coupling constant `λ`.
    pub lambda: f64,
    /// Disorder width `Δ_Q ≥ 0`.
    pub delta_q: f64,
    /// Noise mean `δ₀`.
    pub delta_o: f64,
    /// Equal energy splitting `ε`.
    pub epsilon: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            delta_q: 1.0,
            delta_o: 1.0,
            epsilon: 1.0,
        }
    }
}

impl ChannelParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("lambda", self.lambda),
            ("Delta_Q", self.delta_q),
            ("delta_o", self.delta_o),
            ("epsilon", self.epsilon),
        ];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be finite, got {v}")));
        }
        if self.delta_q < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "Delta_Q must be non-negative, got {}",
                self.delta_q
            )));
        }
        Ok(())
    }
}

/// The 4×4 time-evolution matrix in its printed symmetric form
///
/// ```text
/// [U11 U12 U13 U14]
/// [U12 U11 U14 U13]
/// [U13 U14 U11 U12]
/// [U14 U13 U12 U11]
/// ```
///
/// with `U11 = e^{-2itε} cos(Δ_Xλt) cos(Δ_Yλt)`, `U12 = -i e^{-2itε} cos(Δ_Xλt) sin(Δ_Yλt)`,
/// `U13 = -i e^{-2itε} sin(Δ_Xλt) cos(Δ_Yλt)`, `U14 = -e^{-2itε} sin(Δ_Xλt) sin(Δ_Yλt)`.
///
/// This is `exp(-it(2ε + λΔ_X σx⊗I + λΔ_Y I⊗σx))`, i.e. the field written
/// in the `σx` eigenbasis. It coincides with [`field_unitary`] after a
/// Hadamard change of basis on both qubits; [`evolve_state`] follows the
/// `σz`-diagonal form.
pub fn evolution_unitary(ch: &ChannelParams, delta_x: f64, delta_y: f64, t: f64) -> ComplexMatrix {
    let phase = Complex64::from_polar(1.0, -2.0 * t * ch.epsilon);
    let (sx, cx) = (delta_x * ch.lambda * t).sin_cos();
    let (sy, cy) = (delta_y * ch.lambda * t).sin_cos();
    let u11 = phase * (cx * cy);
    let u12 = phase * c(0.0, -cx * sy);
    let u13 = phase * c(0.0, -sx * cy);
    let u14 = phase * (-sx * sy);
    ComplexMatrix::from_row_major(
        4,
        &[
            u11, u12, u13, u14, //
            u12, u11, u14, u13, //
            u13, u14, u11, u12, //
            u14, u13, u12, u11,
        ],
    )
    .expect("4x4")
}

/// Single-qubit field Hamiltonian `diag(ε + Δλ, ε − Δλ)`.
pub fn qubit_field_hamiltonian(ch: &ChannelParams, delta: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[ch.epsilon + delta * ch.lambda, ch.epsilon - delta * ch.lambda])
        .expect("2x2")
}

/// `H_X ⊗ I + I ⊗ H_Y`.
pub fn field_hamiltonian(ch: &ChannelParams, delta_x: f64, delta_y: f64) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2).expect("2x2");
    let hx = kron(&qubit_field_hamiltonian(ch, delta_x), &id).expect("2x2 operands");
    let hy = kron(&id, &qubit_field_hamiltonian(ch, delta_y)).expect("2x2 operands");
    &hx + &hy
}

/// `exp(-i t (H_X ⊗ I + I ⊗ H_Y))`, diagonal in the computational basis.
pub fn field_unitary(ch: &ChannelParams, delta_x: f64, delta_y: f64, t: f64) -> ComplexMatrix {
    let h = field_hamiltonian(ch, delta_x, delta_y);
    let mut u = ComplexMatrix::zeros(4).expect("4x4");
    for i in 0..4 {
        u[(i, i)] = Complex64::from_polar(1.0, -t * h[(i, i)].re);
    }
    u
}

/// Evolve an X-state through identical sub-channels `Δ_X = Δ_Y`.
///
/// Populations and `r23` are untouched; `r14` rotates by `e^{-4iΔ_Xλt}`.
pub fn evolve_state(s: &XState, ch: &ChannelParams, delta_x: f64, t: f64) -> XState {
    XState {
        r14: s.r14 * Complex64::from_polar(1.0, -4.0 * delta_x * ch.lambda * t),
        ..*s
    }
}

/// Below this `|2Δ_Qλt|` the sinc is evaluated by its Taylor series.
pub const SINC_TAYLOR_THRESHOLD: f64 = 1e-6;

/// `sin(x)/x` with `x = 2Δ_Qλt`, equal to 1 at `x = 0`.
pub fn sinc_dephasing_factor(delta_q: f64, lambda: f64, t: f64) -> f64 {
    sinc(2.0 * delta_q * lambda * t)
}

pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_TAYLOR_THRESHOLD {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Average of [`evolve_state`] over the static-noise distribution of `Δ_X`.
pub fn static_average(s: &XState, ch: &ChannelParams, t: f64) -> XState {
    let phase = Complex64::from_polar(1.0, -4.0 * ch.delta_o * ch.lambda * t);
    XState {
        r14: s.r14 * phase * sinc_dephasing_factor(ch.delta_q, ch.lambda, t),
        ..*s
    }
}
