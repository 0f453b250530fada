//! Projector representations of the Temperley-Lieb algebra.
//!
//! A single generator acting on two n-level sites is the rank-one projector
//! U = d |Ψ⟩⟨Ψ| built from a normalized two-site state |Ψ⟩ = Σ α_{λμ}|λμ⟩
//! whose amplitude matrix has exactly one nonzero entry per row and per
//! column. The loop parameter d fixes the algebra
//!
//! ```text
//!     U_i² = d U_i,   U_i U_{i±1} U_i = U_i,
//! ```
//!
//! and holds iff the amplitudes satisfy a quartic constraint system. Three
//! closed-form families are provided: the maximally entangled diagonal
//! family with d = n, a one-parameter qubit family with d = q + 1/q, and
//! three qutrit branches with d = q + 1/q + 1. [`solve_constraints`] finds
//! amplitude moduli for an arbitrary permutation pattern numerically.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{kron, outer, vec_norm, C64, CMatrix};

/// Amplitudes below this magnitude count as structural zeros when checking
/// the one-entry-per-row-and-column pattern.
const PATTERN_TOL: f64 = 1e-10;

/// Normalization gate for amplitude matrices and input states.
const NORM_TOL: f64 = 1e-12;

/// Residual at which a numerically solved amplitude set is accepted.
const SOLVER_ACCEPT: f64 = 1e-9;

/// Two solved amplitude sets within this distance (moduli and d) collapse
/// into one reported solution.
const SOLVER_DEDUP: f64 = 1e-8;

const SOLVER_STARTS: usize = 32;
const SOLVER_MAX_ITER: usize = 200;

/// Closed-form representation families.
///
/// Phases multiply individual kets and are pure gauge: they never change a
/// residual or a concurrence. Each variant determines its loop parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// Σ_λ n^{-1/2} e^{i k_λ} |λλ⟩ with d = n.
    MaxEntangled { n: usize, phases: Vec<f64> },
    /// (1+q²)^{-1/2} (q e^{i k01}|01⟩ + e^{i k10}|10⟩) with d = q + 1/q.
    TwoDim { q: f64, k01: f64, k10: f64 },
    /// Qutrit branches with d = q + 1/q + 1, amplitude pattern by branch:
    ///   1: q|02⟩ + √q|11⟩ + |20⟩
    ///   2: q|01⟩ + |10⟩ + √q|22⟩
    ///   3: √q|00⟩ + q|12⟩ + |21⟩
    /// all scaled by (1+q+q²)^{-1/2}; `phases` follow the listed ket order.
    ThreeDim { branch: u8, q: f64, phases: [f64; 3] },
}

impl FamilySpec {
    /// Diagonal maximally entangled family with zero phases.
    pub fn max_entangled(n: usize) -> Self {
        FamilySpec::MaxEntangled {
            n,
            phases: vec![0.0; n],
        }
    }

    /// Qubit family with zero phases.
    pub fn two_dim(q: f64) -> Self {
        FamilySpec::TwoDim {
            q,
            k01: 0.0,
            k10: 0.0,
        }
    }

    /// Qubit family with the off-diagonal generator phase set to `phi`
    /// (realized as k01 = phi, k10 = 0).
    pub fn two_dim_with_phase(q: f64, phi: f64) -> Self {
        FamilySpec::TwoDim {
            q,
            k01: phi,
            k10: 0.0,
        }
    }

    /// Qutrit family with zero phases.
    pub fn three_dim(branch: u8, q: f64) -> Self {
        FamilySpec::ThreeDim {
            branch,
            q,
            phases: [0.0; 3],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::MaxEntangled { n, phases } => {
                if *n < 2 {
                    return Err(Error::InvalidSpec(format!(
                        "maximally entangled family needs n >= 2, got {n}"
                    )));
                }
                if phases.len() != *n {
                    return Err(Error::InvalidSpec(format!(
                        "expected {n} phases, got {}",
                        phases.len()
                    )));
                }
            }
            FamilySpec::TwoDim { q, .. } => {
                if !(*q > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "qubit family needs q > 0, got {q}"
                    )));
                }
            }
            FamilySpec::ThreeDim { branch, q, .. } => {
                if !(1..=3).contains(branch) {
                    return Err(Error::InvalidSpec(format!(
                        "qutrit branch must be 1, 2 or 3, got {branch}"
                    )));
                }
                if !(*q > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "qutrit family needs q > 0, got {q}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Site dimension n.
    pub fn site_dim(&self) -> usize {
        match self {
            FamilySpec::MaxEntangled { n, .. } => *n,
            FamilySpec::TwoDim { .. } => 2,
            FamilySpec::ThreeDim { .. } => 3,
        }
    }

    /// Loop parameter determined by the family.
    pub fn loop_parameter(&self) -> f64 {
        match self {
            FamilySpec::MaxEntangled { n, .. } => *n as f64,
            FamilySpec::TwoDim { q, .. } => q + 1.0 / q,
            FamilySpec::ThreeDim { q, .. } => q + 1.0 / q + 1.0,
        }
    }
}

/// Amplitude matrix α of a two-site state Σ α_{λμ}|λμ⟩ supported on a
/// permutation pattern: exactly one nonzero entry per row and per column,
/// with Σ|α|² = 1.
#[derive(Debug, Clone)]
pub struct AmplitudeMatrix {
    n: usize,
    alpha: CMatrix,
    perm: Vec<usize>,
}

impl AmplitudeMatrix {
    pub fn new(alpha: CMatrix) -> Result<Self> {
        if !alpha.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude matrix must be square, got {}x{}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        let n = alpha.rows();
        let norm = alpha.frobenius_norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        let mut perm = vec![usize::MAX; n];
        let mut col_used = vec![false; n];
        for row in 0..n {
            let mut hit = None;
            for col in 0..n {
                if alpha[(row, col)].norm() > PATTERN_TOL {
                    if hit.is_some() {
                        return Err(Error::InvalidSpec(format!(
                            "amplitude row {row} has more than one nonzero entry"
                        )));
                    }
                    hit = Some(col);
                }
            }
            let col = hit.ok_or_else(|| {
                Error::InvalidSpec(format!("amplitude row {row} is entirely zero"))
            })?;
            if col_used[col] {
                return Err(Error::InvalidSpec(format!(
                    "amplitude column {col} has more than one nonzero entry"
                )));
            }
            col_used[col] = true;
            perm[row] = col;
        }
        Ok(AmplitudeMatrix { n, alpha, perm })
    }

    /// Builds the amplitude matrix of a closed-form family.
    pub fn from_family(spec: &FamilySpec) -> Result<Self> {
        spec.validate()?;
        let n = spec.site_dim();
        let mut alpha = CMatrix::zeros(n, n);
        match spec {
            FamilySpec::MaxEntangled { n, phases } => {
                let w = 1.0 / (*n as f64).sqrt();
                for lam in 0..*n {
                    alpha[(lam, lam)] = C64::from_polar(w, phases[lam]);
                }
            }
            FamilySpec::TwoDim { q, k01, k10 } => {
                let w = 1.0 / (1.0 + q * q).sqrt();
                alpha[(0, 1)] = C64::from_polar(q * w, *k01);
                alpha[(1, 0)] = C64::from_polar(w, *k10);
            }
            FamilySpec::ThreeDim { branch, q, phases } => {
                let w = 1.0 / (1.0 + q + q * q).sqrt();
                let sq = q.sqrt();
                let slots: [(usize, usize, f64); 3] = match branch {
                    1 => [(0, 2, *q), (1, 1, sq), (2, 0, 1.0)],
                    2 => [(0, 1, *q), (1, 0, 1.0), (2, 2, sq)],
                    _ => [(0, 0, sq), (1, 2, *q), (2, 1, 1.0)],
                };
                for (slot, phase) in slots.iter().zip(phases) {
                    alpha[(slot.0, slot.1)] = C64::from_polar(slot.2 * w, *phase);
                }
            }
        }
        AmplitudeMatrix::new(alpha)
    }

    /// Reshapes a two-site state vector (|λμ⟩ at index λ·n + μ) into an
    /// amplitude matrix, validating the permutation pattern.
    pub fn from_state(state: &[C64]) -> Result<Self> {
        let n = (state.len() as f64).sqrt().round() as usize;
        if n * n != state.len() {
            return Err(Error::DimensionMismatch(format!(
                "state length {} is not a perfect square",
                state.len()
            )));
        }
        let alpha = CMatrix::from_fn(n, n, |i, j| state[i * n + j]);
        AmplitudeMatrix::new(alpha)
    }

    /// Builds an amplitude matrix from positive moduli placed on a
    /// permutation pattern, with zero phases.
    pub fn from_moduli(moduli: &[f64], perm: &[usize]) -> Result<Self> {
        let n = moduli.len();
        validate_permutation(n, perm)?;
        let mut alpha = CMatrix::zeros(n, n);
        for (row, (&m, &col)) in moduli.iter().zip(perm).enumerate() {
            alpha[(row, col)] = C64::new(m, 0.0);
        }
        AmplitudeMatrix::new(alpha)
    }

    pub fn site_dim(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &CMatrix {
        &self.alpha
    }

    /// The column permutation carrying the nonzero pattern.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Moduli |α_{λ, π(λ)}| in row order.
    pub fn moduli(&self) -> Vec<f64> {
        (0..self.n)
            .map(|row| self.alpha[(row, self.perm[row])].norm())
            .collect()
    }

    /// Flattens back to a two-site state vector.
    pub fn state_vector(&self) -> Vec<C64> {
        (0..self.n * self.n)
            .map(|k| self.alpha[(k / self.n, k % self.n)])
            .collect()
    }
}

/// A single Temperley-Lieb generator U = d |Ψ⟩⟨Ψ| on the two-site space.
///
/// By construction U is Hermitian, rank one, and satisfies U² = d U; the
/// braid relations additionally require the amplitude constraints and are
/// checked by [`verify_tl_relations`].
#[derive(Debug, Clone)]
pub struct TLGenerator {
    n: usize,
    d: f64,
    u: CMatrix,
}

impl TLGenerator {
    pub fn site_dim(&self) -> usize {
        self.n
    }

    pub fn loop_parameter(&self) -> f64 {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.u
    }
}

/// Two-site state vector of a closed-form family.
pub fn build_state(spec: &FamilySpec) -> Result<Vec<C64>> {
    Ok(AmplitudeMatrix::from_family(spec)?.state_vector())
}

/// Generator U = d |state⟩⟨state| from a normalized two-site state.
pub fn build_generator(state: &[C64], d: f64) -> Result<TLGenerator> {
    let n = (state.len() as f64).sqrt().round() as usize;
    if n * n != state.len() {
        return Err(Error::DimensionMismatch(format!(
            "state length {} is not a perfect square",
            state.len()
        )));
    }
    let norm = vec_norm(state);
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized((norm - 1.0).abs()));
    }
    if !(d > 0.0) {
        return Err(Error::NonPositiveLoop(d));
    }
    let u = outer(state, state).scale(C64::new(d, 0.0));
    Ok(TLGenerator { n, d, u })
}

/// Generator of a closed-form family at its own loop parameter.
pub fn family_generator(spec: &FamilySpec) -> Result<TLGenerator> {
    build_generator(&build_state(spec)?, spec.loop_parameter())
}

/// Residuals of the defining algebra on three sites.
#[derive(Debug, Clone, Copy)]
pub struct TlRelationReport {
    /// max over i of ‖U_i² − d U_i‖_F.
    pub projector_residual: f64,
    /// ‖U₁U₂U₁ − U₁‖_F.
    pub braid_left_residual: f64,
    /// ‖U₂U₁U₂ − U₂‖_F.
    pub braid_right_residual: f64,
}

impl TlRelationReport {
    pub fn max_residual(&self) -> f64 {
        self.projector_residual
            .max(self.braid_left_residual)
            .max(self.braid_right_residual)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Checks U² = dU and both braid relations on the three-site space, with
/// U₁ = U ⊗ 1 and U₂ = 1 ⊗ U.
pub fn verify_tl_relations(gen: &TLGenerator) -> TlRelationReport {
    let eye = CMatrix::identity(gen.n);
    let u1 = kron(&gen.u, &eye);
    let u2 = kron(&eye, &gen.u);
    let d = C64::new(gen.d, 0.0);

    let sq1 = (&(&u1 * &u1) - &u1.scale(d)).frobenius_norm();
    let sq2 = (&(&u2 * &u2) - &u2.scale(d)).frobenius_norm();
    let left = (&(&(&u1 * &u2) * &u1) - &u1).frobenius_norm();
    let right = (&(&(&u2 * &u1) * &u2) - &u2).frobenius_norm();

    TlRelationReport {
        projector_residual: sq1.max(sq2),
        braid_left_residual: left,
        braid_right_residual: right,
    }
}

/// Residuals of the quartic amplitude constraint system.
#[derive(Debug, Clone, Copy)]
pub struct ConstraintReport {
    /// max over (μ, β) of |d² Σ_{λνσ} α*_{νλ} α_{λμ} α_{νσ} α*_{σβ} − δ_{μβ}|.
    pub first_residual: f64,
    /// Same for the transposed condition
    /// d² Σ_{λνσ} α_{μλ} α*_{λν} α*_{βσ} α_{σν} = δ_{μβ}.
    pub second_residual: f64,
}

impl ConstraintReport {
    pub fn max_residual(&self) -> f64 {
        self.first_residual.max(self.second_residual)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Evaluates both quartic constraint conditions for amplitudes `alpha` at
/// loop parameter `d`. The sums are evaluated in full rather than reduced
/// through the permutation pattern, so a wrong d or wrong moduli show up
/// directly as residual.
pub fn verify_constraints(alpha: &AmplitudeMatrix, d: f64) -> ConstraintReport {
    constraint_report(alpha.alpha(), d)
}

fn constraint_report(alpha: &CMatrix, d: f64) -> ConstraintReport {
    let n = alpha.rows();
    let d2 = d * d;
    let mut first: f64 = 0.0;
    let mut second: f64 = 0.0;
    for mu in 0..n {
        for beta in 0..n {
            let delta = if mu == beta { 1.0 } else { 0.0 };
            let mut s1 = C64::new(0.0, 0.0);
            let mut s2 = C64::new(0.0, 0.0);
            for lam in 0..n {
                for nu in 0..n {
                    for sig in 0..n {
                        s1 += alpha[(nu, lam)].conj()
                            * alpha[(lam, mu)]
                            * alpha[(nu, sig)]
                            * alpha[(sig, beta)].conj();
                        s2 += alpha[(mu, lam)]
                            * alpha[(lam, nu)].conj()
                            * alpha[(beta, sig)].conj()
                            * alpha[(sig, nu)];
                    }
                }
            }
            first = first.max((s1 * d2 - delta).norm());
            second = second.max((s2 * d2 - delta).norm());
        }
    }
    ConstraintReport {
        first_residual: first,
        second_residual: second,
    }
}

/// One solution of the constraint system on a fixed permutation pattern.
#[derive(Debug, Clone)]
pub struct ConstraintSolution {
    pub alpha: AmplitudeMatrix,
    pub d: f64,
    pub residual: f64,
}

/// Solves the quartic constraints for amplitude moduli on the permutation
/// pattern `perm`, optionally solving for the loop parameter as well
/// (`d = None`).
///
/// Damped Gauss-Newton least squares over the stacked constraint residuals
/// with the normalization defect Σa² − 1 appended as one more residual,
/// restarted from 32 random simplex points. Accepted solutions
/// (residual ≤ 1e-9) are renormalized exactly, deduplicated to 1e-8 in
/// moduli and d, and returned sorted lexicographically by moduli so the
/// output is deterministic.
pub fn solve_constraints(
    n: usize,
    perm: &[usize],
    d: Option<f64>,
) -> Result<Vec<ConstraintSolution>> {
    validate_permutation(n, perm)?;
    if let Some(d) = d {
        if !(d > 0.0) {
            return Err(Error::NonPositiveLoop(d));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x746c_u64);
    let mut found: Vec<(Vec<f64>, f64, f64)> = Vec::new();

    for _ in 0..SOLVER_STARTS {
        // Uniform point on the probability simplex for the squared moduli.
        let mut weights: Vec<f64> = (0..n).map(|_| -rng.gen::<f64>().ln()).collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        let moduli: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();

        if let Some((m, dv, res)) = gauss_newton(n, perm, moduli, d) {
            if res <= SOLVER_ACCEPT {
                let duplicate = found.iter().any(|(fm, fd, _)| {
                    (fd - dv).abs() <= SOLVER_DEDUP
                        && fm
                            .iter()
                            .zip(&m)
                            .all(|(a, b)| (a - b).abs() <= SOLVER_DEDUP)
                });
                if !duplicate {
                    found.push((m, dv, res));
                }
            }
        }
    }

    found.sort_by(|a, b| {
        for (x, y) in a.0.iter().zip(&b.0) {
            match x.total_cmp(y) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        a.1.total_cmp(&b.1)
    });

    found
        .into_iter()
        .map(|(m, dv, res)| {
            Ok(ConstraintSolution {
                alpha: AmplitudeMatrix::from_moduli(&m, perm)?,
                d: dv,
                residual: res,
            })
        })
        .collect()
}

fn validate_permutation(n: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "expected {n} images, got {}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPermutation(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Stacked residual vector for the solver: both constraint conditions over
/// all (μ, β) pairs, evaluated at real moduli on the pattern.
fn residual_vector(n: usize, perm: &[usize], moduli: &[f64], d: f64) -> Vec<f64> {
    let mut alpha = CMatrix::zeros(n, n);
    for (row, (&m, &col)) in moduli.iter().zip(perm).enumerate() {
        alpha[(row, col)] = C64::new(m, 0.0);
    }
    let d2 = d * d;
    let mut out = Vec::with_capacity(2 * n * n);
    for mu in 0..n {
        for beta in 0..n {
            let delta = if mu == beta { 1.0 } else { 0.0 };
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            for lam in 0..n {
                for nu in 0..n {
                    for sig in 0..n {
                        s1 += alpha[(nu, lam)].re
                            * alpha[(lam, mu)].re
                            * alpha[(nu, sig)].re
                            * alpha[(sig, beta)].re;
                        s2 += alpha[(mu, lam)].re
                            * alpha[(lam, nu)].re
                            * alpha[(beta, sig)].re
                            * alpha[(sig, nu)].re;
                    }
                }
            }
            out.push(d2 * s1 - delta);
            out.push(d2 * s2 - delta);
        }
    }
    out
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Least-squares initial loop parameter for a fresh start: on the pattern
/// the diagonal conditions read d² P_μ = 1 with P_μ = m_μ² m_{π(μ)}², so
/// d² = Σ P_μ / Σ P_μ² is the least-squares fit.
fn initial_d(n: usize, perm: &[usize], moduli: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for mu in 0..n {
        let p = moduli[mu] * moduli[mu] * moduli[perm[mu]] * moduli[perm[mu]];
        num += p;
        den += p * p;
    }
    if den <= 0.0 {
        return n as f64;
    }
    (num / den).sqrt().clamp(0.5, 100.0)
}

/// Constraint residuals with the normalization defect Σa² − 1 appended, so
/// unconstrained Gauss-Newton can drive both at once.
fn objective(n: usize, perm: &[usize], moduli: &[f64], d: f64) -> Vec<f64> {
    let mut f = residual_vector(n, perm, moduli, d);
    f.push(moduli.iter().map(|m| m * m).sum::<f64>() - 1.0);
    f
}

fn gauss_newton(
    n: usize,
    perm: &[usize],
    mut moduli: Vec<f64>,
    fixed_d: Option<f64>,
) -> Option<(Vec<f64>, f64, f64)> {
    let mut d = fixed_d.unwrap_or_else(|| initial_d(n, perm, &moduli));
    let free_d = fixed_d.is_none();
    let nvars = n + usize::from(free_d);
    let mut f = objective(n, perm, &moduli, d);
    let mut fnorm = l2(&f);

    for _ in 0..SOLVER_MAX_ITER {
        if fnorm <= 1e-13 {
            break;
        }
        // Central-difference Jacobian; the system is tiny.
        let mut jac = vec![vec![0.0; nvars]; f.len()];
        for var in 0..nvars {
            let h = 1e-6;
            let (mut mp, mut dp) = (moduli.clone(), d);
            let (mut mm, mut dm) = (moduli.clone(), d);
            if var < n {
                mp[var] += h;
                mm[var] -= h;
            } else {
                dp += h;
                dm -= h;
            }
            let fp = objective(n, perm, &mp, dp);
            let fm = objective(n, perm, &mm, dm);
            for (row, slot) in jac.iter_mut().enumerate() {
                slot[var] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }

        // Normal equations with a small ridge: families of solutions make
        // JᵀJ rank-deficient along the family direction.
        let mut jtj = vec![vec![0.0; nvars]; nvars];
        let mut jtf = vec![0.0; nvars];
        for i in 0..nvars {
            for j in 0..nvars {
                jtj[i][j] = jac.iter().map(|row| row[i] * row[j]).sum();
            }
            jtj[i][i] += 1e-12;
            jtf[i] = jac.iter().zip(&f).map(|(row, fv)| row[i] * fv).sum();
        }
        let step = solve_dense(&mut jtj, &mut jtf)?;

        // Halve the step while it fails to reduce the residual.
        let mut scale = 1.0;
        let mut improved = false;
        while scale >= 1e-12 {
            let mut tm = moduli.clone();
            let mut td = d;
            for (i, m) in tm.iter_mut().enumerate() {
                *m -= scale * step[i];
            }
            if free_d {
                td -= scale * step[n];
            }
            let tf = objective(n, perm, &tm, td);
            let tnorm = l2(&tf);
            if tnorm < fnorm {
                moduli = tm;
                d = td;
                f = tf;
                fnorm = tnorm;
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if !improved {
            break;
        }
    }

    // Every residual depends on the moduli and d only through squares, so
    // signs are a gauge choice; fix them positive and renormalize exactly
    // before reporting.
    for m in moduli.iter_mut() {
        *m = m.abs();
    }
    let norm = l2(&moduli);
    if !(norm > 0.0) {
        return None;
    }
    for m in moduli.iter_mut() {
        *m /= norm;
    }
    d = d.abs().max(1e-6);
    if let Some(fd) = fixed_d {
        d = fd;
    }
    let residual = l2(&residual_vector(n, perm, &moduli, d));
    Some((moduli, d, residual))
}

/// Gaussian elimination with partial pivoting on a small dense system.
#[allow(clippy::needless_range_loop)]
fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOL;

    #[test]
    fn family_loop_parameters() {
        assert_eq!(FamilySpec::max_entangled(3).loop_parameter(), 3.0);
        assert!((FamilySpec::two_dim(2.0).loop_parameter() - 2.5).abs() < 1e-15);
        assert!((FamilySpec::three_dim(1, 2.0).loop_parameter() - 3.5).abs() < 1e-15);
    }

    #[test]
    fn family_validation_errors() {
        assert!(FamilySpec::max_entangled(1).validate().is_err());
        assert!(FamilySpec::two_dim(0.0).validate().is_err());
        assert!(FamilySpec::two_dim(-1.0).validate().is_err());
        assert!(FamilySpec::three_dim(4, 1.0).validate().is_err());
        assert!(FamilySpec::MaxEntangled {
            n: 3,
            phases: vec![0.0; 2]
        }
        .validate()
        .is_err());
    }

    #[test]
    fn built_states_are_normalized_on_permutation_patterns() {
        let specs = [
            FamilySpec::max_entangled(2),
            FamilySpec::max_entangled(4),
            FamilySpec::two_dim_with_phase(3.0, 0.7),
            FamilySpec::three_dim(1, 2.0),
            FamilySpec::three_dim(2, 0.5),
            FamilySpec::three_dim(3, 1.7),
        ];
        for spec in &specs {
            let amp = AmplitudeMatrix::from_family(spec).unwrap();
            assert!((vec_norm(&amp.state_vector()) - 1.0).abs() < 1e-14);
            // Round trip through the state vector keeps the pattern.
            let back = AmplitudeMatrix::from_state(&amp.state_vector()).unwrap();
            assert_eq!(back.permutation(), amp.permutation());
        }
    }

    #[test]
    fn qubit_family_amplitudes_at_q2() {
        let amp = AmplitudeMatrix::from_family(&FamilySpec::two_dim(2.0)).unwrap();
        let a = amp.alpha();
        assert!((a[(0, 1)].re - 2.0 / 5.0_f64.sqrt()).abs() < 1e-15);
        assert!((a[(1, 0)].re - 1.0 / 5.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(a[(0, 0)], C64::new(0.0, 0.0));
        assert_eq!(a[(1, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn generator_matches_projector_entries() {
        // U entries are d α_{λμ} α*_{λ'μ'} in the row-major two-site basis.
        let spec = FamilySpec::two_dim_with_phase(2.0, 0.9);
        let amp = AmplitudeMatrix::from_family(&spec).unwrap();
        let gen = family_generator(&spec).unwrap();
        let d = spec.loop_parameter();
        let n = 2;
        for (r, s) in [(0usize, 1usize), (1, 0)] {
            for (rp, sp) in [(0usize, 1usize), (1, 0)] {
                let expected = amp.alpha()[(r, s)] * amp.alpha()[(rp, sp)].conj() * d;
                let got = gen.matrix()[(r * n + s, rp * n + sp)];
                assert!((got - expected).norm() < 1e-14);
            }
        }
        // Middle block is [[q, e^{i phi}], [e^{-i phi}, 1/q]] with
        // phi = k01 - k10 by the projector formula.
        let u = gen.matrix();
        assert!((u[(1, 1)].re - 2.0).abs() < 1e-14);
        assert!((u[(2, 2)].re - 0.5).abs() < 1e-14);
        let phi = u[(1, 2)].arg();
        assert!((phi - 0.9).abs() < 1e-14);
        assert!((u[(1, 2)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn generator_rejects_bad_input() {
        let state = vec![C64::new(1.0, 0.0); 4];
        assert!(matches!(
            build_generator(&state, 2.0),
            Err(Error::NotNormalized(_))
        ));
        let ok = build_state(&FamilySpec::two_dim(1.0)).unwrap();
        assert!(matches!(
            build_generator(&ok, 0.0),
            Err(Error::NonPositiveLoop(_))
        ));
        assert!(matches!(
            build_generator(&ok[..3], 2.0),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn projector_and_hermiticity_hold_for_any_normalized_state() {
        // Rank-one structure makes U² = dU automatic even off the families.
        let state = [
            C64::new(0.5, 0.0),
            C64::new(0.0, 0.5),
            C64::new(-0.5, 0.0),
            C64::new(0.0, -0.5),
        ];
        let gen = build_generator(&state, 3.3).unwrap();
        let u = gen.matrix();
        assert!(u.hermiticity_residual() < 1e-14);
        let sq = &(u * u) - &u.scale(C64::new(3.3, 0.0));
        assert!(sq.frobenius_norm() < 1e-13);
    }

    #[test]
    fn tl_relations_hold_on_families() {
        let specs = [
            FamilySpec::max_entangled(2),
            FamilySpec::max_entangled(3),
            FamilySpec::two_dim_with_phase(0.5, 1.1),
            FamilySpec::two_dim(4.0),
            FamilySpec::three_dim(1, 0.5),
            FamilySpec::three_dim(2, 2.0),
            FamilySpec::three_dim(3, 5.0),
        ];
        for spec in &specs {
            let gen = family_generator(spec).unwrap();
            let report = verify_tl_relations(&gen);
            assert!(
                report.passes(DEFAULT_TOL),
                "family {spec:?} fails: {report:?}"
            );
        }
    }

    #[test]
    fn tl_relations_fail_for_wrong_loop_parameter() {
        let state = build_state(&FamilySpec::two_dim(1.0)).unwrap();
        let gen = build_generator(&state, 5.0).unwrap();
        let report = verify_tl_relations(&gen);
        assert!(report.braid_left_residual > 0.1);
        assert!(!report.passes(DEFAULT_TOL));
    }

    #[test]
    fn constraints_hold_on_families_and_detect_wrong_d() {
        let amp = AmplitudeMatrix::from_family(&FamilySpec::three_dim(3, 2.0)).unwrap();
        let report = verify_constraints(&amp, 3.5);
        assert!(report.passes(DEFAULT_TOL), "{report:?}");

        let off = verify_constraints(&amp, 3.4);
        assert!(off.max_residual() > 1e-3);
    }

    #[test]
    fn constraints_are_phase_gauge_invariant() {
        let base = AmplitudeMatrix::from_family(&FamilySpec::three_dim(1, 1.3)).unwrap();
        let gauged = AmplitudeMatrix::from_family(&FamilySpec::ThreeDim {
            branch: 1,
            q: 1.3,
            phases: [2.3, -0.4, 5.9],
        })
        .unwrap();
        let d = FamilySpec::three_dim(1, 1.3).loop_parameter();
        let a = verify_constraints(&base, d);
        let b = verify_constraints(&gauged, d);
        assert!((a.max_residual() - b.max_residual()).abs() < 1e-12);
    }

    #[test]
    fn amplitude_matrix_rejects_non_permutation_support() {
        let w = C64::new(0.5_f64.sqrt(), 0.0);
        // Two entries in one row.
        let m = CMatrix::new(
            2,
            2,
            vec![w, w, C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            AmplitudeMatrix::new(m),
            Err(Error::InvalidSpec(_))
        ));
        // Diagonal pair sharing a column.
        let m = CMatrix::new(
            2,
            2,
            vec![w, C64::new(0.0, 0.0), w, C64::new(0.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            AmplitudeMatrix::new(m),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn solver_recovers_maximal_family_on_identity_pattern() {
        let sols = solve_constraints(2, &[0, 1], None).unwrap();
        assert!(!sols.is_empty());
        for sol in &sols {
            assert!((sol.d - 2.0).abs() < 1e-8, "d = {}", sol.d);
            for m in sol.alpha.moduli() {
                assert!((m - 0.5_f64.sqrt()).abs() < 1e-8);
            }
            assert!(verify_constraints(&sol.alpha, sol.d).passes(DEFAULT_TOL));
        }
    }

    #[test]
    fn solver_recovers_qubit_family_at_fixed_d() {
        // d = 2.5 meets the swap-pattern family at q = 2 and q = 1/2.
        let sols = solve_constraints(2, &[1, 0], Some(2.5)).unwrap();
        assert_eq!(sols.len(), 2, "{sols:?}");
        let expect_low = [1.0 / 5.0_f64.sqrt(), 2.0 / 5.0_f64.sqrt()];
        let expect_high = [2.0 / 5.0_f64.sqrt(), 1.0 / 5.0_f64.sqrt()];
        let got: Vec<Vec<f64>> = sols.iter().map(|s| s.alpha.moduli()).collect();
        assert!((got[0][0] - expect_low[0]).abs() < 1e-7);
        assert!((got[0][1] - expect_low[1]).abs() < 1e-7);
        assert!((got[1][0] - expect_high[0]).abs() < 1e-7);
        assert!((got[1][1] - expect_high[1]).abs() < 1e-7);
    }

    #[test]
    fn solver_rejects_bad_patterns() {
        assert!(matches!(
            solve_constraints(3, &[0, 1], None),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            solve_constraints(2, &[0, 0], None),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            solve_constraints(2, &[1, 0], Some(-1.0)),
            Err(Error::NonPositiveLoop(_))
        ));
    }
}
