#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use tmcc::channel::{field_unitary, ChannelParams};
use tmcc::linalg::{hermitian_eigensystem, ComplexMatrix, DensityMatrix};
use tmcc::spin::{build_hamiltonian, SpinParams, XState};
use tmcc::Complex64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim).unwrap();
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.gen_range(-3.0..3.0), 0.0);
        for j in i + 1..dim {
            let z = random_complex(rng) * 3.0;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Eigenvector matrix of a random Hermitian matrix.
pub fn random_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    hermitian_eigensystem(&random_hermitian(rng, 4)).unwrap().vectors
}

/// `A A† / Tr(A A†)` for a random complex `A`.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let mut a = ComplexMatrix::zeros(dim).unwrap();
    for i in 0..dim {
        for j in 0..dim {
            a[(i, j)] = random_complex(rng);
        }
    }
    let m = &a * &a.adjoint();
    let tr = m.trace().re;
    let mut rho = m.scale(Complex64::new(1.0 / tr, 0.0));
    // exact Hermitian symmetry
    for i in 0..dim {
        rho[(i, i)] = Complex64::new(rho[(i, i)].re, 0.0);
        for j in i + 1..dim {
            rho[(j, i)] = rho[(i, j)].conj();
        }
    }
    DensityMatrix::new(rho).unwrap()
}

pub fn random_spin_params(rng: &mut impl Rng) -> SpinParams {
    SpinParams {
        j: rng.gen_range(-10.0..=10.0),
        delta_z: rng.gen_range(-10.0..=10.0),
        d_z: rng.gen_range(-10.0..=10.0),
        k_z: rng.gen_range(-10.0..=10.0),
        b: rng.gen_range(-10.0..=10.0),
        temperature: rng.gen_range(0.05..=20.0),
    }
}

/// `exp(-H/T)/Z` through the numeric eigensystem of `H`, with energies
/// shifted by the ground level.
pub fn gibbs_oracle(p: &SpinParams) -> ComplexMatrix {
    let eig = hermitian_eigensystem(&build_hamiltonian(p)).unwrap();
    let e0 = eig.values[0];
    let z: f64 = eig.values.iter().map(|e| (-(e - e0) / p.temperature).exp()).sum();
    eig.map_spectrum(|e| (-(e - e0) / p.temperature).exp() / z)
}

/// `ln Σ_k e^{-E_k/T}` by log-sum-exp.
pub fn log_sum_exp_partition(energies: &[f64], temperature: f64) -> f64 {
    let e0 = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    -e0 / temperature + energies.iter().map(|e| (-(e - e0) / temperature).exp()).sum::<f64>().ln()
}

/// Full-matrix evolution `U ρ U†` with `U = exp(-i t H_XY)` at `Δ_X = Δ_Y = delta`.
pub fn conjugated(s: &XState, ch: &ChannelParams, delta: f64, t: f64) -> ComplexMatrix {
    s.to_matrix().conjugate_by(&field_unitary(ch, delta, delta, t))
}

/// Composite Simpson rule for the noise average
/// `(1/Δ_Q) ∫ U ρ U† dΔ` over `[δ₀ − Δ_Q/2, δ₀ + Δ_Q/2]`.
pub fn simpson_noise_average(s: &XState, ch: &ChannelParams, t: f64, panels: usize) -> ComplexMatrix {
    assert!(panels.is_multiple_of(2));
    let lo = ch.delta_o - ch.delta_q / 2.0;
    let h = ch.delta_q / panels as f64;
    let mut acc = ComplexMatrix::zeros(4).unwrap();
    for k in 0..=panels {
        let w = if k == 0 || k == panels {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let term = conjugated(s, ch, lo + h * k as f64, t).scale(Complex64::new(w, 0.0));
        acc = &acc + &term;
    }
    acc.scale(Complex64::new(h / 3.0 / ch.delta_q, 0.0))
}

/// Stratified sampling: one uniform draw of `Δ` in each of `n` equal strata.
pub fn stratified_noise_average(s: &XState, ch: &ChannelParams, t: f64, n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let lo = ch.delta_o - ch.delta_q / 2.0;
    let width = ch.delta_q / n as f64;
    let mut acc = ComplexMatrix::zeros(4).unwrap();
    for k in 0..n {
        let delta = lo + width * (k as f64 + rng.gen::<f64>());
        acc = &acc + &conjugated(s, ch, delta, t);
    }
    acc.scale(Complex64::new(1.0 / n as f64, 0.0))
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}
