//! Spectral-parameter braid operators built from the two-qubit generator.
//!
//! The trigonometric ansatz promotes a qubit generator U with loop
//! parameter d = q + 1/q to a one-parameter operator family
//!
//! ```text
//!     R̆(x) = N(x) [ (q x − q⁻¹x⁻¹) 1 − (x − x⁻¹) U ],
//!     N(x) = [q² + q⁻² − (x² + x⁻²)]^{−1/2},
//! ```
//!
//! which satisfies the braided Yang-Baxter equation
//! R̆₁(x) R̆₂(xy) R̆₁(y) = R̆₂(y) R̆₁(xy) R̆₂(x). The closed-form inverse is
//! R̆(x)⁻¹ = N(x) [ (q x⁻¹ − q⁻¹x) 1 + (x − x⁻¹) U ] = R̆(x⁻¹), and on the
//! unit circle x = e^{iθ} the operator is unitary, with the inverse sitting
//! at the reflected point θ → −θ. The square root in N uses the principal
//! complex branch.

use crate::error::{Error, Result};
use crate::linalg::{kron, C64, CMatrix};
use crate::tl::TLGenerator;

/// Radicands of the normalization smaller than this count as singular.
const SINGULAR_TOL: f64 = 1e-12;

/// Gate for recognizing the qubit generator pattern and its loop parameter.
const PATTERN_TOL: f64 = 1e-8;

/// A Yang-Baxterized braid operator R̆(x) and its closed-form inverse.
#[derive(Debug, Clone)]
pub struct BraidOperator {
    q: f64,
    d: f64,
    x: C64,
    r: CMatrix,
    r_inv: CMatrix,
    normalization: C64,
}

impl BraidOperator {
    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn loop_parameter(&self) -> f64 {
        self.d
    }

    pub fn spectral_parameter(&self) -> C64 {
        self.x
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.r
    }

    /// Inverse from the closed formula, not from numerical inversion.
    pub fn inverse(&self) -> &CMatrix {
        &self.r_inv
    }

    pub fn normalization(&self) -> C64 {
        self.normalization
    }
}

/// Core construction from a generator matrix and its q value; callers have
/// already validated the pattern.
fn braid_from_u(u: &CMatrix, q: f64, x: C64) -> Result<BraidOperator> {
    if x.norm() == 0.0 {
        return Err(Error::InvalidSpec(
            "spectral parameter must be nonzero".into(),
        ));
    }
    let x_inv = C64::new(1.0, 0.0) / x;
    let qq = q * q + 1.0 / (q * q);
    let radicand = C64::new(qq, 0.0) - (x * x + x_inv * x_inv);
    if radicand.norm() < SINGULAR_TOL {
        return Err(Error::SingularNormalization);
    }
    let normalization = C64::new(1.0, 0.0) / radicand.sqrt();

    let a = x * q - x_inv / q;
    let a_inv = x_inv * q - x / q;
    let b = x - x_inv;

    let eye = CMatrix::identity(4);
    let r = (&eye.scale(a) - &u.scale(b)).scale(normalization);
    let r_inv = (&eye.scale(a_inv) + &u.scale(b)).scale(normalization);

    Ok(BraidOperator {
        q,
        d: q + 1.0 / q,
        x,
        r,
        r_inv,
        normalization,
    })
}

/// Reads q off a qubit generator supported on the {|01⟩, |10⟩} block and
/// checks the block is consistent with the generator's loop parameter.
fn extract_q(gen: &TLGenerator) -> Result<f64> {
    if gen.site_dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "braid construction needs two-level sites, got n = {}",
            gen.site_dim()
        )));
    }
    let u = gen.matrix();
    let scale = u.max_abs().max(1.0);
    for i in 0..4 {
        for j in 0..4 {
            let inside = (1..=2).contains(&i) && (1..=2).contains(&j);
            if !inside && u[(i, j)].norm() > PATTERN_TOL * scale {
                return Err(Error::InvalidSpec(format!(
                    "generator entry ({i},{j}) = {} lies outside the \
                     |01⟩,|10⟩ block",
                    u[(i, j)]
                )));
            }
        }
    }
    let q = u[(1, 1)].re;
    let q_inv = u[(2, 2)].re;
    if !(q > 0.0) || !(q_inv > 0.0) || u[(1, 1)].im.abs() > PATTERN_TOL {
        return Err(Error::InvalidSpec(
            "generator block diagonal must be real positive".into(),
        ));
    }
    if (q * q_inv - 1.0).abs() > PATTERN_TOL || (u[(1, 2)].norm() - 1.0).abs() > PATTERN_TOL {
        return Err(Error::InvalidSpec(format!(
            "generator block [[{q}, ..], [.., {q_inv}]] is not a loop-\
             normalized projector"
        )));
    }
    if (q + 1.0 / q - gen.loop_parameter()).abs() > PATTERN_TOL {
        return Err(Error::InvalidSpec(format!(
            "loop parameter {} does not match q + 1/q for q = {q}",
            gen.loop_parameter()
        )));
    }
    Ok(q)
}

/// Builds R̆(x) from a qubit generator.
pub fn yang_baxterize(gen: &TLGenerator, x: C64) -> Result<BraidOperator> {
    let q = extract_q(gen)?;
    braid_from_u(gen.matrix(), q, x)
}

/// Frobenius defect of the braided Yang-Baxter equation on three sites:
/// ‖R̆₁(x) R̆₂(xy) R̆₁(y) − R̆₂(y) R̆₁(xy) R̆₂(x)‖_F with R̆₁ = R̆ ⊗ 1 and
/// R̆₂ = 1 ⊗ R̆.
pub fn verify_ybe(gen: &TLGenerator, x: C64, y: C64) -> Result<f64> {
    let rx = yang_baxterize(gen, x)?;
    let rxy = yang_baxterize(gen, x * y)?;
    let ry = yang_baxterize(gen, y)?;
    Ok(ybe_residual(rx.matrix(), rxy.matrix(), ry.matrix()))
}

fn ybe_residual(rx: &CMatrix, rxy: &CMatrix, ry: &CMatrix) -> f64 {
    let eye = CMatrix::identity(2);
    let one = |m: &CMatrix| kron(m, &eye);
    let two = |m: &CMatrix| kron(&eye, m);
    let lhs = &(&one(rx) * &two(rxy)) * &one(ry);
    let rhs = &(&two(ry) * &one(rxy)) * &two(rx);
    (&lhs - &rhs).frobenius_norm()
}

/// Worst-case unitarity defects over a grid of unit-circle parameters.
#[derive(Debug, Clone, Copy)]
pub struct UnitarityReport {
    /// max over the grid of ‖R̆† − R̆⁻¹‖_F.
    pub max_dagger_vs_inverse: f64,
    /// max over the grid of ‖R̆⁻¹ − R̆(x⁻¹)‖_F; x⁻¹ is the reflection
    /// θ → −θ on the unit circle.
    pub max_inverse_vs_reflected: f64,
}

impl UnitarityReport {
    pub fn max_residual(&self) -> f64 {
        self.max_dagger_vs_inverse.max(self.max_inverse_vs_reflected)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Checks R̆† = R̆⁻¹ = R̆(x⁻¹) at x = e^{iθ} over the given angles.
///
/// Both identities are exact on the unit circle: the first because the
/// normalization is real there and U is Hermitian, the second because
/// inverting x swaps the two scalar coefficients in the closed form.
pub fn verify_unitarity(gen: &TLGenerator, thetas: &[f64]) -> Result<UnitarityReport> {
    let mut dagger = 0.0f64;
    let mut reflected = 0.0f64;
    for &theta in thetas {
        let x = C64::from_polar(1.0, theta);
        let braid = yang_baxterize(gen, x)?;
        let mirror = yang_baxterize(gen, C64::new(1.0, 0.0) / x)?;
        let d1 = (&braid.matrix().dagger() - braid.inverse()).frobenius_norm();
        let d2 = (braid.inverse() - mirror.matrix()).frobenius_norm();
        dagger = dagger.max(d1);
        reflected = reflected.max(d2);
    }
    Ok(UnitarityReport {
        max_dagger_vs_inverse: dagger,
        max_inverse_vs_reflected: reflected,
    })
}
