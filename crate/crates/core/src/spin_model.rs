//! Two-qubit spin model obtained by braiding a diagonal Hamiltonian.
//!
//! The starting point is H₀ = μ₁S₁^z + μ₂S₂^z + g S₁^z S₂^z with the
//! convention S^z|0⟩ = +½|0⟩ and ħ = k_B = 1, so H₀ is diagonal with
//! entries (B+g/4, J−g/4, −J−g/4, −B+g/4) where B = (μ₁+μ₂)/2 and
//! J = (μ₁−μ₂)/2. Conjugating by the braid operator at x = i,
//! H = R̆(i) H₀ R̆(i)⁻¹, produces an XXZ-type Hamiltonian whose middle
//! block carries the loop parameter:
//!
//! ```text
//!     H = diag(B+g/4, Jη−g/4, −Jη−g/4, −B+g/4)
//!         with off-diagonal −J κ e^{±iφ} between |01⟩ and |10⟩,
//!     η = 1 − 8/d²,   κ = 4√(d²−4)/d²,   η² + κ² = 1.
//! ```
//!
//! The braid uses the q ≤ 1 root of q + 1/q = d; the q ≥ 1 root produces
//! the same Hamiltonian with φ shifted by π. Both the closed form and the
//! brute conjugation are exposed so they can be checked against each other.

use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix};
use crate::tl::{family_generator, FamilySpec};
use crate::yang_baxter::yang_baxterize;

/// Fields, coupling, loop parameter, and generator phase of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    mu1: f64,
    mu2: f64,
    g: f64,
    d: f64,
    phi: f64,
}

impl ModelParams {
    /// Validates d ≥ 2 (the qubit family domain) and B ≥ 0.
    pub fn new(mu1: f64, mu2: f64, g: f64, d: f64, phi: f64) -> Result<Self> {
        if !(d >= 2.0) {
            return Err(Error::LoopOutOfDomain {
                got: d,
                requires: "d >= 2",
            });
        }
        let b = (mu1 + mu2) / 2.0;
        if !(b >= 0.0) {
            return Err(Error::InvalidSpec(format!(
                "mean field B = (mu1+mu2)/2 must be >= 0, got {b}"
            )));
        }
        Ok(ModelParams {
            mu1,
            mu2,
            g,
            d,
            phi,
        })
    }

    /// Same model specified through B = (μ₁+μ₂)/2 and J = (μ₁−μ₂)/2.
    pub fn from_field_coupling(b: f64, j: f64, g: f64, d: f64, phi: f64) -> Result<Self> {
        ModelParams::new(b + j, b - j, g, d, phi)
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    /// Mean field B.
    pub fn b(&self) -> f64 {
        (self.mu1 + self.mu2) / 2.0
    }

    /// Field inhomogeneity J, the effective exchange coupling.
    pub fn j(&self) -> f64 {
        (self.mu1 - self.mu2) / 2.0
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Diagonal inhomogeneity factor η = 1 − 8/d².
    pub fn eta(&self) -> f64 {
        1.0 - 8.0 / (self.d * self.d)
    }

    /// Flip-flop coupling factor κ = 4√(d²−4)/d², with η² + κ² = 1.
    pub fn kappa(&self) -> f64 {
        4.0 * (self.d * self.d - 4.0).sqrt() / (self.d * self.d)
    }

    /// The q ≤ 1 root of q + 1/q = d, the branch whose braid reproduces
    /// the minus sign on the flip-flop coupling.
    pub fn q(&self) -> f64 {
        (self.d - (self.d * self.d - 4.0).sqrt()) / 2.0
    }
}

/// The conjugated Hamiltonian together with the parameters that built it.
#[derive(Debug, Clone)]
pub struct SpinHamiltonian {
    params: ModelParams,
    h: CMatrix,
}

impl SpinHamiltonian {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.h
    }
}

/// Diagonal seed Hamiltonian diag(B+g/4, J−g/4, −J−g/4, −B+g/4).
pub fn build_h0(params: &ModelParams) -> CMatrix {
    let b = params.b();
    let j = params.j();
    let g4 = params.g / 4.0;
    CMatrix::diag(&[
        C64::new(b + g4, 0.0),
        C64::new(j - g4, 0.0),
        C64::new(-j - g4, 0.0),
        C64::new(-b + g4, 0.0),
    ])
}

/// Closed-form conjugated Hamiltonian.
pub fn conjugated_hamiltonian(params: &ModelParams) -> SpinHamiltonian {
    let b = params.b();
    let j = params.j();
    let g4 = params.g / 4.0;
    let eta = params.eta();
    let kappa = params.kappa();
    let mut h = CMatrix::zeros(4, 4);
    h[(0, 0)] = C64::new(b + g4, 0.0);
    h[(1, 1)] = C64::new(j * eta - g4, 0.0);
    h[(2, 2)] = C64::new(-j * eta - g4, 0.0);
    h[(3, 3)] = C64::new(-b + g4, 0.0);
    h[(1, 2)] = C64::from_polar(1.0, params.phi) * (-j * kappa);
    h[(2, 1)] = h[(1, 2)].conj();
    SpinHamiltonian {
        params: *params,
        h,
    }
}

/// Conjugated Hamiltonian by brute force: builds the qubit generator on
/// the q ≤ 1 branch, Yang-Baxterizes at x = i, and computes R̆ H₀ R̆⁻¹.
pub fn conjugated_hamiltonian_numeric(params: &ModelParams) -> Result<CMatrix> {
    let spec = FamilySpec::two_dim_with_phase(params.q(), params.phi);
    let gen = family_generator(&spec)?;
    let braid = yang_baxterize(&gen, C64::new(0.0, 1.0))?;
    let h0 = build_h0(params);
    Ok(&(braid.matrix() * &h0) * braid.inverse())
}

/// The four analytic eigenpairs of the conjugated Hamiltonian.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// (B+g/4, −B+g/4, J−g/4, −J−g/4) in this order.
    pub energies: [f64; 4],
    /// Normalized eigenvectors matching `energies`.
    pub states: [Vec<C64>; 4],
}

/// Eigensystem of the conjugated Hamiltonian. |00⟩ and |11⟩ stay
/// eigenvectors; the middle block mixes |01⟩ and |10⟩ through the loop
/// parameter:
///
/// ```text
///     Ψ₃ = (2/d)(−(√(d²−4) e^{iφ}/2)|01⟩ + |10⟩),   E₃ = J − g/4,
///     Ψ₄ = (2/d)(|01⟩ + (√(d²−4) e^{−iφ}/2)|10⟩),   E₄ = −J − g/4.
/// ```
pub fn eigensystem(params: &ModelParams) -> EigenSystem {
    let b = params.b();
    let j = params.j();
    let g4 = params.g / 4.0;
    let d = params.d;
    let s = (d * d - 4.0).sqrt();
    let w = 2.0 / d;
    let zero = C64::new(0.0, 0.0);
    let phase = C64::from_polar(1.0, params.phi);

    let psi1 = vec![C64::new(1.0, 0.0), zero, zero, zero];
    let psi2 = vec![zero, zero, zero, C64::new(1.0, 0.0)];
    let psi3 = vec![
        zero,
        phase * (-s / 2.0 * w),
        C64::new(w, 0.0),
        zero,
    ];
    let psi4 = vec![
        zero,
        C64::new(w, 0.0),
        phase.conj() * (s / 2.0 * w),
        zero,
    ];

    EigenSystem {
        energies: [b + g4, -b + g4, j - g4, -j - g4],
        states: [psi1, psi2, psi3, psi4],
    }
}
