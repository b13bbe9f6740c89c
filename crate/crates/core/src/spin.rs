//! Two-qubit XXZ Heisenberg model with DM and KSEA couplings in a homogeneous
//! field, its closed-form spectrum, and the Gibbs state `exp(-H/T)/Z`.
//!
//! Units: `ħ = k_B = 1`, every parameter is dimensionless.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigensystem, ComplexMatrix, DensityMatrix};

/// Physical parameters of the spin Hamiltonian plus the bath temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinParams {
    /// Heisenberg exchange `J` (`J > 0` antiferromagnetic).
    pub j: f64,
    /// Anisotropy `Δ_z` of the `S^z S^z` term.
    pub delta_z: f64,
    /// Dzyaloshinskii–Moriya strength `D_z`.
    pub d_z: f64,
    /// KSEA strength `K_z`.
    pub k_z: f64,
    /// Homogeneous magnetic field `B`.
    pub b: f64,
    /// Temperature `T`; must be positive.
    pub temperature: f64,
}

impl Default for SpinParams {
    fn default() -> Self {
        Self {
            j: 1.0,
            delta_z: 1.0,
            d_z: 1.0,
            k_z: 5.0,
            b: 1.0,
            temperature: 1.0,
        }
    }
}

impl SpinParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("J", self.j),
            ("delta_z", self.delta_z),
            ("D_z", self.d_z),
            ("K_z", self.k_z),
            ("B", self.b),
            ("T", self.temperature),
        ];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be finite, got {v}")));
        }
        if self.temperature <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "temperature must be positive, got {}",
                self.temperature
            )));
        }
        Ok(())
    }

    /// `sqrt(B² + K_z²)`, half of `Λ`.
    fn field_radius(&self) -> f64 {
        self.b.hypot(self.k_z)
    }

    /// `sqrt(J² + D_z²)`, half of `υ`.
    fn exchange_radius(&self) -> f64 {
        self.j.hypot(self.d_z)
    }
}

/// Energy scales derived from [`SpinParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScales {
    /// `Λ = sqrt(4B² + 4K_z²)`
    pub lambda: f64,
    /// `υ = sqrt(4J² + 4D_z²)`
    pub upsilon: f64,
    /// `φ = 2 sqrt(B² + K_z²) / T`
    pub phi: f64,
    /// `ϖ = 2 sqrt(D_z² + J²) / T`
    pub varpi: f64,
    /// `ln Z`. Kept in log form because `Z` overflows at low temperature.
    pub ln_z: f64,
}

impl DerivedScales {
    pub fn new(p: &SpinParams) -> Result<Self> {
        p.validate()?;
        let lambda = 2.0 * p.field_radius();
        let upsilon = 2.0 * p.exchange_radius();
        let t = p.temperature;
        let w = BoltzmannWeights::new(p);
        Ok(Self {
            lambda,
            upsilon,
            phi: lambda / t,
            varpi: upsilon / t,
            ln_z: -w.ground / t + w.z.ln(),
        })
    }

    /// Partition function `Z = 2 e^{-Δ_z/T} (e^{2Δ_z/T} cosh ϖ + cosh φ)`; may be `inf`.
    pub fn partition_function(&self) -> f64 {
        self.ln_z.exp()
    }
}

/// Boltzmann factors measured from the ground energy, grouped by the two
/// invariant blocks `{|00>,|11>}` and `{|01>,|10>}`.
///
/// `cosh_14 = e^{E0/T} e^{-Δ_z/T} cosh φ`, `sinh_14 = e^{E0/T} e^{-Δ_z/T} sinh φ`,
/// and likewise for the `23` block with `e^{+Δ_z/T}` and `ϖ`.
struct BoltzmannWeights {
    ground: f64,
    cosh_14: f64,
    sinh_14: f64,
    cosh_23: f64,
    sinh_23: f64,
    z: f64,
}

impl BoltzmannWeights {
    fn new(p: &SpinParams) -> Self {
        let t = p.temperature;
        let lambda = 2.0 * p.field_radius();
        let upsilon = 2.0 * p.exchange_radius();
        let low_14 = p.delta_z - lambda;
        let low_23 = -p.delta_z - upsilon;
        let ground = low_14.min(low_23);

        let w14 = (-(low_14 - ground) / t).exp();
        let w23 = (-(low_23 - ground) / t).exp();
        // e^{-2Λ/T} gap inside each block, expm1 for small gaps.
        let gap_14 = (-2.0 * lambda / t).exp_m1();
        let gap_23 = (-2.0 * upsilon / t).exp_m1();
        let cosh_14 = w14 * (2.0 + gap_14) / 2.0;
        let sinh_14 = -w14 * gap_14 / 2.0;
        let cosh_23 = w23 * (2.0 + gap_23) / 2.0;
        let sinh_23 = -w23 * gap_23 / 2.0;
        Self {
            ground,
            cosh_14,
            sinh_14,
            cosh_23,
            sinh_23,
            z: 2.0 * (cosh_14 + cosh_23),
        }
    }
}

/// The Hamiltonian in the computational basis.
pub fn build_hamiltonian(p: &SpinParams) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(4).expect("4x4");
    h[(0, 0)] = c(2.0 * p.b + p.delta_z, 0.0);
    h[(1, 1)] = c(-p.delta_z, 0.0);
    h[(2, 2)] = c(-p.delta_z, 0.0);
    h[(3, 3)] = c(-2.0 * p.b + p.delta_z, 0.0);
    h[(0, 3)] = c(0.0, -2.0 * p.k_z);
    h[(3, 0)] = c(0.0, 2.0 * p.k_z);
    h[(1, 2)] = c(2.0 * p.j, 2.0 * p.d_z);
    h[(2, 1)] = c(2.0 * p.j, -2.0 * p.d_z);
    h
}

/// Closed-form eigenpairs of the Hamiltonian.
///
/// Ordered as `Δ_z+Λ, Δ_z−Λ, −Δ_z+υ, −Δ_z−υ`; `states[k]` is the normalized
/// eigenvector for `energies[k]` with its first nonzero component real positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub energies: [f64; 4],
    pub states: [[Complex64; 4]; 4],
}

/// Relative size of `Λ ± 2B` (or `υ`) below which the closed-form
/// eigenvectors are replaced by a numeric diagonalization of the block.
const DEGENERATE_BLOCK_TOL: f64 = 1e-12;

pub fn hamiltonian_spectrum(p: &SpinParams) -> Result<Spectrum> {
    let lambda = 2.0 * p.field_radius();
    let upsilon = 2.0 * p.exchange_radius();
    let energies = [
        p.delta_z + lambda,
        p.delta_z - lambda,
        -p.delta_z + upsilon,
        -p.delta_z - upsilon,
    ];

    let zero = c(0.0, 0.0);
    let scale_14 = lambda.max(1.0);
    let (theta_1, theta_4) = if lambda + 2.0 * p.b > DEGENERATE_BLOCK_TOL * scale_14
        && lambda - 2.0 * p.b > DEGENERATE_BLOCK_TOL * scale_14
    {
        let up = lambda + 2.0 * p.b;
        let down = lambda - 2.0 * p.b;
        let n_up = (up / (2.0 * lambda)).sqrt();
        let n_down = (down / (2.0 * lambda)).sqrt();
        (
            [c(n_up, 0.0), zero, zero, c(0.0, 2.0 * p.k_z / up) * n_up],
            [c(n_down, 0.0), zero, zero, c(0.0, -2.0 * p.k_z / down) * n_down],
        )
    } else {
        let block = [
            c(2.0 * p.b + p.delta_z, 0.0),
            c(0.0, -2.0 * p.k_z),
            c(0.0, 2.0 * p.k_z),
            c(-2.0 * p.b + p.delta_z, 0.0),
        ];
        let (hi, lo) = block_eigenvectors(&block)?;
        ([hi[0], zero, zero, hi[1]], [lo[0], zero, zero, lo[1]])
    };

    let (theta_2, theta_3) = if upsilon > DEGENERATE_BLOCK_TOL * upsilon.max(1.0) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ratio = c(2.0 * p.j, -2.0 * p.d_z) / upsilon;
        (
            [zero, c(s, 0.0), ratio * s, zero],
            [zero, c(s, 0.0), -ratio * s, zero],
        )
    } else {
        let block = [
            c(-p.delta_z, 0.0),
            c(2.0 * p.j, 2.0 * p.d_z),
            c(2.0 * p.j, -2.0 * p.d_z),
            c(-p.delta_z, 0.0),
        ];
        let (hi, lo) = block_eigenvectors(&block)?;
        ([zero, hi[0], hi[1], zero], [zero, lo[0], lo[1], zero])
    };

    Ok(Spectrum {
        energies,
        states: [theta_1, theta_4, theta_2, theta_3],
    })
}

/// Eigenvectors (upper, lower) of a 2×2 Hermitian block.
fn block_eigenvectors(block: &[Complex64; 4]) -> Result<([Complex64; 2], [Complex64; 2])> {
    let m = ComplexMatrix::from_row_major(2, block)?;
    let eig = hermitian_eigensystem(&m)?;
    let v = eig.vectors;
    Ok(([v[(0, 1)], v[(1, 1)]], [v[(0, 0)], v[(1, 0)]]))
}

/// A two-qubit X-state: diagonal plus anti-diagonal entries only.
///
/// ```text
/// [ r11   0     0     r14 ]
/// [ 0     r22   r23   0   ]
/// [ 0     r23*  r33   0   ]
/// [ r14*  0     0     r44 ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r44: f64,
    pub r14: Complex64,
    pub r23: Complex64,
}

/// Tolerances of the [`XState`] invariants.
pub const XSTATE_TRACE_TOL: f64 = 1e-12;
pub const XSTATE_POPULATION_TOL: f64 = 1e-12;
pub const XSTATE_POSITIVITY_TOL: f64 = 1e-10;

impl XState {
    pub fn new(r11: f64, r22: f64, r33: f64, r44: f64, r14: Complex64, r23: Complex64) -> Result<Self> {
        let s = Self {
            r11,
            r22,
            r33,
            r44,
            r14,
            r23,
        };
        s.validate()?;
        Ok(s)
    }

    /// `|Φ⁺><Φ⁺|` with `|Φ⁺> = (|00> + |11>)/√2`.
    pub fn bell_phi_plus() -> Self {
        Self {
            r11: 0.5,
            r22: 0.0,
            r33: 0.0,
            r44: 0.5,
            r14: c(0.5, 0.0),
            r23: c(0.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let pops = [self.r11, self.r22, self.r33, self.r44];
        if pops.iter().chain([self.r14.re, self.r14.im, self.r23.re, self.r23.im].iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("X-state entries must be finite".into()));
        }
        let trace: f64 = pops.iter().sum();
        if (trace - 1.0).abs() > XSTATE_TRACE_TOL {
            return Err(Error::InvalidArgument(format!("X-state trace is {trace}, expected 1")));
        }
        if let Some(p) = pops.iter().find(|&&p| p < -XSTATE_POPULATION_TOL) {
            return Err(Error::InvalidArgument(format!("negative population {p}")));
        }
        if self.r14.norm_sqr() > self.r11 * self.r44 + XSTATE_POSITIVITY_TOL {
            return Err(Error::InvalidArgument("|r14|² exceeds r11·r44".into()));
        }
        if self.r23.norm_sqr() > self.r22 * self.r33 + XSTATE_POSITIVITY_TOL {
            return Err(Error::InvalidArgument("|r23|² exceeds r22·r33".into()));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::from_real_diagonal(&[self.r11, self.r22, self.r33, self.r44])
            .expect("4x4");
        m[(0, 3)] = self.r14;
        m[(3, 0)] = self.r14.conj();
        m[(1, 2)] = self.r23;
        m[(2, 1)] = self.r23.conj();
        m
    }

    pub fn to_density_matrix(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.to_matrix())
    }

    /// `2(|r14| + |r23|)`, the ℓ1 coherence of an X-state.
    pub fn l1_coherence(&self) -> f64 {
        2.0 * (self.r14.norm() + self.r23.norm())
    }
}

/// Gibbs state `exp(-H/T)/Z` from the closed-form entries.
pub fn thermal_state(p: &SpinParams) -> Result<XState> {
    p.validate()?;
    let w = BoltzmannWeights::new(p);
    let field = p.field_radius();
    let exchange = p.exchange_radius();

    // Ratios B/√(B²+K²) etc. are defined as 0 in the singular limit where
    // the corresponding block of H is proportional to the identity.
    let ratio = |num: f64, radius: f64| if radius > 0.0 { num / radius } else { 0.0 };

    let r11 = (w.cosh_14 - ratio(p.b, field) * w.sinh_14) / w.z;
    let r44 = (w.cosh_14 + ratio(p.b, field) * w.sinh_14) / w.z;
    let r14 = c(0.0, ratio(p.k_z, field) * w.sinh_14 / w.z);
    let r22 = w.cosh_23 / w.z;
    let r23 = c(-ratio(p.j, exchange), -ratio(p.d_z, exchange)) * (w.sinh_23 / w.z);

    Ok(XState {
        r11,
        r22,
        r33: r22,
        r44,
        r14,
        r23,
    })
}

/// Eigenvalues of an X-state from the closed forms of each 2×2 block,
/// ordered `(E1+, E2−, E3+, E4−)`.
pub fn thermal_state_eigenvalues(s: &XState) -> [f64; 4] {
    let outer = 0.5 * ((s.r11 - s.r44).powi(2) + 4.0 * s.r14.norm_sqr()).sqrt();
    let inner = 0.5 * ((s.r22 - s.r33).powi(2) + 4.0 * s.r23.norm_sqr()).sqrt();
    let mid_14 = 0.5 * (s.r11 + s.r44);
    let mid_23 = 0.5 * (s.r22 + s.r33);
    [mid_14 + outer, mid_14 - outer, mid_23 + inner, mid_23 - inner]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigensystem;

    fn fig1() -> SpinParams {
        SpinParams::default()
    }

    /// Independent route: `V diag(e^{-(E-E0)/T}) V† / Σ` from the numeric eigensystem.
    fn gibbs_oracle(p: &SpinParams) -> ComplexMatrix {
        let eig = hermitian_eigensystem(&build_hamiltonian(p)).unwrap();
        let e0 = eig.values[0];
        let z: f64 = eig.values.iter().map(|e| (-(e - e0) / p.temperature).exp()).sum();
        eig.map_spectrum(|e| (-(e - e0) / p.temperature).exp() / z)
    }

    #[test]
    fn hamiltonian_zero_params() {
        let p = SpinParams { j: 0.0, delta_z: 0.0, d_z: 0.0, k_z: 0.0, b: 0.0, temperature: 1.0 };
        assert_eq!(build_hamiltonian(&p), ComplexMatrix::zeros(4).unwrap());
    }

    #[test]
    fn hamiltonian_fig1_entries() {
        let h = build_hamiltonian(&fig1());
        assert_eq!(h[(0, 3)], c(0.0, -10.0));
        assert_eq!(h[(1, 2)], c(2.0, 2.0));
        assert_eq!(h[(0, 0)], c(3.0, 0.0));
        assert!(h.is_hermitian(0.0));
    }

    #[test]
    fn spectrum_matches_numeric_and_eigenvectors() {
        let p = fig1();
        let spec = hamiltonian_spectrum(&p).unwrap();
        assert!((spec.energies[0] - (1.0 + 104f64.sqrt())).abs() < 1e-14);
        let h = build_hamiltonian(&p);
        let mut closed = spec.energies.to_vec();
        closed.sort_by(f64::total_cmp);
        let numeric = hermitian_eigensystem(&h).unwrap().values;
        for (a, b) in closed.iter().zip(&numeric) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        for (e, v) in spec.energies.iter().zip(&spec.states) {
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            for i in 0..4 {
                let hv: Complex64 = (0..4).map(|k| h[(i, k)] * v[k]).sum();
                assert!((hv - v[i] * e).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn spectrum_kz_zero_collapses() {
        let p = SpinParams { k_z: 0.0, b: 1.0, delta_z: 1.0, ..fig1() };
        let spec = hamiltonian_spectrum(&p).unwrap();
        assert_eq!(spec.energies[0], 3.0);
        assert_eq!(spec.energies[1], -1.0);
        // degenerate branch uses the numeric block
        assert!((spec.states[0][0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((spec.states[1][3] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn spectrum_fully_degenerate_block() {
        let p = SpinParams { k_z: 0.0, b: 0.0, j: 0.0, d_z: 0.0, delta_z: 0.7, temperature: 1.0 };
        let spec = hamiltonian_spectrum(&p).unwrap();
        assert_eq!(spec.energies[0], 0.7);
        assert_eq!(spec.energies[1], 0.7);
        let h = build_hamiltonian(&p);
        for (e, v) in spec.energies.iter().zip(&spec.states) {
            for i in 0..4 {
                let hv: Complex64 = (0..4).map(|k| h[(i, k)] * v[k]).sum();
                assert!((hv - v[i] * e).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn thermal_state_matches_gibbs_oracle_fig1() {
        let p = fig1();
        let s = thermal_state(&p).unwrap();
        assert!(s.to_matrix().max_abs_diff(&gibbs_oracle(&p)) < 1e-10);
        s.validate().unwrap();
    }

    #[test]
    fn thermal_state_high_temperature() {
        let p = SpinParams { j: 1.0, delta_z: 1.0, d_z: 1.0, k_z: 1.0, b: 1.0, temperature: 1e6 };
        let s = thermal_state(&p).unwrap();
        let quarter = ComplexMatrix::identity(4).unwrap().scale(c(0.25, 0.0));
        assert!(s.to_matrix().max_abs_diff(&quarter) < 1e-5);
    }

    #[test]
    fn thermal_state_zero_field_symmetry() {
        let s = thermal_state(&SpinParams { b: 0.0, ..fig1() }).unwrap();
        assert_eq!(s.r11, s.r44);
    }

    #[test]
    fn thermal_state_singular_limits() {
        let p = SpinParams { b: 0.0, k_z: 0.0, j: 0.0, d_z: 0.0, ..fig1() };
        let s = thermal_state(&p).unwrap();
        assert_eq!(s.r14, c(0.0, 0.0));
        assert_eq!(s.r23, c(0.0, 0.0));
        assert!(s.to_matrix().max_abs_diff(&gibbs_oracle(&p)) < 1e-12);
    }

    #[test]
    fn thermal_state_rejects_nonpositive_temperature() {
        for t in [0.0, -1.0, f64::NAN] {
            let p = SpinParams { temperature: t, ..fig1() };
            assert!(matches!(thermal_state(&p), Err(Error::InvalidArgument(_))));
        }
    }

    #[test]
    fn thermal_state_cold_and_strong_does_not_overflow() {
        let p = SpinParams { j: -10.0, delta_z: -10.0, d_z: 10.0, k_z: 10.0, b: 10.0, temperature: 0.05 };
        let s = thermal_state(&p).unwrap();
        s.validate().unwrap();
        assert!(s.to_matrix().max_abs_diff(&gibbs_oracle(&p)) < 1e-10);
        assert!(DerivedScales::new(&p).unwrap().ln_z.is_finite());
    }

    #[test]
    fn derived_scales_consistent() {
        let p = fig1();
        let d = DerivedScales::new(&p).unwrap();
        assert!((d.phi - d.lambda / p.temperature).abs() < 1e-15);
        assert!((d.varpi - d.upsilon / p.temperature).abs() < 1e-15);
        let t = p.temperature;
        let printed = 2.0 * (-p.delta_z / t).exp()
            * ((2.0 * p.delta_z / t).exp() * d.varpi.cosh() + d.phi.cosh());
        assert!((d.partition_function() - printed).abs() / printed < 1e-12);
    }

    #[test]
    fn state_eigenvalues_examples() {
        let diag = XState::new(0.1, 0.2, 0.3, 0.4, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let mut ev = thermal_state_eigenvalues(&diag).to_vec();
        ev.sort_by(f64::total_cmp);
        for (a, b) in ev.iter().zip([0.1, 0.2, 0.3, 0.4]) {
            assert!((a - b).abs() < 1e-15);
        }

        let mut ev = thermal_state_eigenvalues(&XState::bell_phi_plus()).to_vec();
        ev.sort_by(f64::total_cmp);
        assert_eq!(ev, vec![0.0, 0.0, 0.0, 1.0]);

        let s = thermal_state(&fig1()).unwrap();
        let mut ev = thermal_state_eigenvalues(&s).to_vec();
        ev.sort_by(f64::total_cmp);
        let numeric = hermitian_eigensystem(&s.to_matrix()).unwrap().values;
        for (a, b) in ev.iter().zip(&numeric) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn xstate_validation() {
        assert!(XState::new(0.5, 0.0, 0.0, 0.5, c(0.6, 0.0), c(0.0, 0.0)).is_err());
        assert!(XState::new(0.5, 0.0, 0.0, 0.6, c(0.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(XState::new(0.5, 0.3, 0.3, -0.1, c(0.0, 0.0), c(0.0, 0.0)).is_err());
        XState::bell_phi_plus().validate().unwrap();
    }
}
