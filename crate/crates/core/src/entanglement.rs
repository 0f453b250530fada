//! Bipartite entanglement measures for two-site states.
//!
//! Pure states of two n-level sites get a Schmidt spectrum and the
//! generalized concurrence C = √(n/(n−1) (1 − Tr ρ_A²)), which is 0 on
//! product states and 1 on maximally entangled ones for every n. Two-qubit
//! mixed states get the spin-flip concurrence, computed from the square
//! roots of the eigenvalues of ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y). The two measures
//! coincide on two-qubit pure states.

use crate::error::{Error, Result};
use crate::linalg::{func_hermitian, hermitian_eig, outer, partial_trace, vec_norm, C64, CMatrix, Keep};

const NORM_TOL: f64 = 1e-12;
const DENSITY_TOL: f64 = 1e-10;

/// Tiny negative radicands below this relative size are rounding noise and
/// clamp to zero; anything larger is a real numerical failure.
const RADICAND_SLACK: f64 = 1e-12;

/// Schmidt decomposition data of a pure two-site state.
#[derive(Debug, Clone)]
pub struct SchmidtSpectrum {
    /// Schmidt coefficients κ_i ≥ 0 in descending order, Σ κ_i² = 1.
    pub coefficients: Vec<f64>,
    /// Tr ρ_A² = Σ κ_i⁴.
    pub purity: f64,
}

/// Which formula produced a concurrence value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcurrenceMethod {
    /// Purity-based pure-state formula, any site dimension.
    Generalized,
    /// Spin-flip eigenvalue formula, two-qubit density matrices.
    Wootters,
}

#[derive(Debug, Clone, Copy)]
pub struct ConcurrenceValue {
    pub value: f64,
    pub method: ConcurrenceMethod,
}

fn reduced_density(state: &[C64], n: usize) -> Result<CMatrix> {
    if n * n != state.len() {
        return Err(Error::DimensionMismatch(format!(
            "state length {} does not factor as {n} x {n}",
            state.len()
        )));
    }
    let norm = vec_norm(state);
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized((norm - 1.0).abs()));
    }
    partial_trace(&outer(state, state), (n, n), Keep::A)
}

/// Schmidt spectrum of a normalized two-site state (|λμ⟩ at index λ·n + μ).
pub fn schmidt(state: &[C64], n: usize) -> Result<SchmidtSpectrum> {
    let rho_a = reduced_density(state, n)?;
    let eig = hermitian_eig(&rho_a)?;
    let mut coefficients: Vec<f64> = eig
        .values
        .iter()
        .map(|&v| v.max(0.0).sqrt())
        .collect();
    coefficients.sort_by(|a, b| b.total_cmp(a));
    let purity = coefficients.iter().map(|k| k.powi(4)).sum();
    Ok(SchmidtSpectrum {
        coefficients,
        purity,
    })
}

/// Generalized concurrence of a normalized pure two-site state,
/// C = √(n/(n−1) (1 − Tr ρ_A²)).
pub fn generalized_concurrence(state: &[C64], n: usize) -> Result<ConcurrenceValue> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!(
            "concurrence needs site dimension >= 2, got {n}"
        )));
    }
    let rho_a = reduced_density(state, n)?;
    let purity = (&rho_a * &rho_a).trace().re;
    let radicand = (n as f64) / (n as f64 - 1.0) * (1.0 - purity);
    let value = sqrt_clamped(radicand)?;
    Ok(ConcurrenceValue {
        value: value.min(1.0),
        method: ConcurrenceMethod::Generalized,
    })
}

/// Spin-flip concurrence of a two-qubit density matrix.
///
/// The eigenvalues of the Hermitian product √ρ ρ̃ √ρ are those of ρρ̃; with
/// their square roots λ_1 ≥ … ≥ λ_4 the concurrence is
/// max(0, λ_1 − λ_2 − λ_3 − λ_4).
pub fn wootters_concurrence(rho: &CMatrix) -> Result<ConcurrenceValue> {
    validate_density(rho)?;
    // The needed square-rooted eigenvalues of rho * rho-tilde are exactly
    // the singular values of G = sqrt(rho) S conj(sqrt(rho)), since
    // G G^H = sqrt(rho) rho-tilde sqrt(rho). Reading them from the
    // Hermitian embedding [[0, G], [G^H, 0]] avoids squaring G, so the
    // small values keep absolute accuracy near machine precision instead
    // of the sqrt-of-epsilon floor the squared product would give them.
    let sqrt_rho = func_hermitian(rho, |v| C64::new(v.max(0.0).sqrt(), 0.0))?;
    let g = &(&sqrt_rho * &flip_matrix()) * &sqrt_rho.conj();
    let mut embed = CMatrix::zeros(8, 8);
    for i in 0..4 {
        for j in 0..4 {
            embed[(i, 4 + j)] = g[(i, j)];
            embed[(4 + j, i)] = g[(i, j)].conj();
        }
    }
    let eig = hermitian_eig(&embed)?;
    // The embedding's spectrum is the plus-minus paired singular values;
    // the top four of the ascending list are the four largest.
    let top = &eig.values[4..8];
    let value =
        (top[3] - top[2].max(0.0) - top[1].max(0.0) - top[0].max(0.0)).max(0.0);
    Ok(ConcurrenceValue {
        value,
        method: ConcurrenceMethod::Wootters,
    })
}

/// σ_y ⊗ σ_y in the basis {00, 01, 10, 11}: the antidiagonal with signs
/// (−1, +1, +1, −1). The spin-flipped state is ρ̃ = S ρ* S.
fn flip_matrix() -> CMatrix {
    let sign = [-1.0, 1.0, 1.0, -1.0];
    CMatrix::from_fn(4, 4, |i, j| {
        if i + j == 3 {
            C64::new(sign[i], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn validate_density(rho: &CMatrix) -> Result<()> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::NotDensityMatrix(format!(
            "expected a 4x4 matrix, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    let herm = rho.hermiticity_residual();
    if herm > DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!(
            "Hermiticity residual {herm:.3e}"
        )));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!("trace {tr}")));
    }
    let eig = hermitian_eig(rho)?;
    if eig.values[0] < -DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!(
            "negative eigenvalue {:.3e}",
            eig.values[0]
        )));
    }
    Ok(())
}

/// Square root that treats small negative inputs as rounding noise.
fn sqrt_clamped(x: f64) -> Result<f64> {
    if x >= 0.0 {
        return Ok(x.sqrt());
    }
    if x >= -RADICAND_SLACK {
        return Ok(0.0);
    }
    Err(Error::Numeric(format!(
        "square root of {x:.3e} is outside rounding slack"
    )))
}
