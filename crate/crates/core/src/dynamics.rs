//! Unitary dynamics under the conjugated Hamiltonian and entanglement
//! sudden death.
//!
//! Evolving the Werner-like state (1−γ)/4 · 1 + γ|ψ⟩⟨ψ| with
//! ψ = sin α|01⟩ + cos α|10⟩ keeps the density matrix X-shaped, so the
//! concurrence is available in closed form. At α = π/4, γ = 1/2, J = 1/2,
//! φ = π it reduces to
//!
//! ```text
//!     C(t) = max(0, √((A + E cos t)² + d⁴ E sin²t) / (2d⁴) − 1/4),
//!     A = 16(d²−4),   E = (d²−8)²,
//! ```
//!
//! independent of B and g, equal to 1/4 at t = 0 for every d and constant
//! when d = 2√2. For loop parameters where the pre-clamp expression dips
//! below zero the entanglement dies on an interval and revives, with
//! period 2π; [`esd_windows`] locates those intervals.

use crate::entanglement::{wootters_concurrence, ConcurrenceMethod, ConcurrenceValue};
use crate::error::{Error, Result};
use crate::linalg::{outer, C64, CMatrix};
use crate::spin_model::{eigensystem, ModelParams};

/// Window boundaries are bisected until the bracket is this narrow.
const WINDOW_BISECT_TOL: f64 = 1e-11;

/// Werner-like initial state (1−γ)/4 · 1 + γ |ψ⟩⟨ψ| with
/// ψ = sin α|01⟩ + cos α|10⟩.
#[derive(Debug, Clone)]
pub struct InitialState {
    gamma: f64,
    alpha_angle: f64,
    rho0: CMatrix,
}

impl InitialState {
    pub fn new(gamma: f64, alpha_angle: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "mixing weight must lie in (0, 1], got {gamma}"
            )));
        }
        let zero = C64::new(0.0, 0.0);
        let psi = [
            zero,
            C64::new(alpha_angle.sin(), 0.0),
            C64::new(alpha_angle.cos(), 0.0),
            zero,
        ];
        let mixed = CMatrix::identity(4).scale(C64::new((1.0 - gamma) / 4.0, 0.0));
        let rho0 = &mixed + &outer(&psi, &psi).scale(C64::new(gamma, 0.0));
        Ok(InitialState {
            gamma,
            alpha_angle,
            rho0,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn alpha_angle(&self) -> f64 {
        self.alpha_angle
    }

    pub fn rho0(&self) -> &CMatrix {
        &self.rho0
    }
}

/// Propagator U(t) = e^{−iHt} as a spectral sum over the analytic
/// eigensystem.
pub fn propagator(params: &ModelParams, t: f64) -> CMatrix {
    let sys = eigensystem(params);
    let mut u = CMatrix::zeros(4, 4);
    for (energy, state) in sys.energies.iter().zip(&sys.states) {
        let phase = C64::from_polar(1.0, -energy * t);
        u = &u + &outer(state, state).scale(phase);
    }
    u
}

/// Propagator from its closed-form matrix elements; the cross-check path
/// for [`propagator`]. The middle block mixes |01⟩ and |10⟩ through
/// η = 1 − 8/d² and κ = 4√(d²−4)/d²:
///
/// ```text
///     U₂₂/U₃₃ = e^{igt/4} (cos Jt ∓ iη sin Jt),
///     U₂₃/U₃₂ = e^{igt/4} iκ e^{±iφ} sin Jt.
/// ```
pub fn propagator_elements(params: &ModelParams, t: f64) -> CMatrix {
    let b = params.b();
    let j = params.j();
    let g4 = params.g() / 4.0;
    let eta = params.eta();
    let kappa = params.kappa();
    let block_phase = C64::from_polar(1.0, g4 * t);
    let (sin_jt, cos_jt) = (j * t).sin_cos();
    let i = C64::new(0.0, 1.0);
    let phi = C64::from_polar(1.0, params.phi());

    let mut u = CMatrix::zeros(4, 4);
    u[(0, 0)] = C64::from_polar(1.0, -(b + g4) * t);
    u[(3, 3)] = C64::from_polar(1.0, (b - g4) * t);
    u[(1, 1)] = block_phase * (C64::new(cos_jt, 0.0) - i * (eta * sin_jt));
    u[(2, 2)] = block_phase * (C64::new(cos_jt, 0.0) + i * (eta * sin_jt));
    u[(1, 2)] = block_phase * i * phi * (kappa * sin_jt);
    u[(2, 1)] = block_phase * i * phi.conj() * (kappa * sin_jt);
    u
}

/// ρ(t) = U(t) ρ₀ U(t)†.
pub fn evolved_state(params: &ModelParams, init: &InitialState, t: f64) -> CMatrix {
    let u = propagator(params, t);
    &(&u * init.rho0()) * &u.dagger()
}

/// Concurrence of the evolved state.
pub fn evolved_concurrence(
    params: &ModelParams,
    init: &InitialState,
    t: f64,
) -> Result<ConcurrenceValue> {
    wootters_concurrence(&evolved_state(params, init, t))
}

/// Pre-clamp value of the closed-form concurrence at α = π/4, γ = 1/2,
/// J = 1/2, φ = π; negative values mean the entanglement is dead.
pub fn esd_signed(d: f64, t: f64) -> f64 {
    let d2 = d * d;
    let d4 = d2 * d2;
    let a = 16.0 * (d2 - 4.0);
    let e = (d2 - 8.0) * (d2 - 8.0);
    let (sin_t, cos_t) = t.sin_cos();
    let radicand = (a + e * cos_t).powi(2) + d4 * e * sin_t * sin_t;
    radicand.sqrt() / (2.0 * d4) - 0.25
}

/// Closed-form concurrence of the standard sudden-death configuration.
pub fn esd_closed_form(d: f64, t: f64) -> Result<ConcurrenceValue> {
    if !(d >= 2.0) {
        return Err(Error::LoopOutOfDomain {
            got: d,
            requires: "d >= 2",
        });
    }
    Ok(ConcurrenceValue {
        value: esd_signed(d, t).max(0.0),
        method: ConcurrenceMethod::Wootters,
    })
}

/// One interval of zero concurrence: death at the left edge, revival at
/// the right. A window cut off by the scan range ends at t_max even if the
/// revival lies beyond it.
#[derive(Debug, Clone, Copy)]
pub struct EsdWindow {
    pub t_death: f64,
    pub t_revival: f64,
}

/// Scans [0, t_max] for intervals where the pre-clamp concurrence is
/// negative. Sign changes on the grid (default step t_max/4096) are
/// refined by bisection; boundaries satisfy |esd_signed| ≤ 1e-9. Grid
/// points where the expression merely touches zero do not open a window.
pub fn esd_windows(d: f64, t_max: f64, grid_step: Option<f64>) -> Result<Vec<EsdWindow>> {
    if !(d >= 2.0) {
        return Err(Error::LoopOutOfDomain {
            got: d,
            requires: "d >= 2",
        });
    }
    if !(t_max > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "scan range must be positive, got {t_max}"
        )));
    }
    let step = grid_step.unwrap_or(t_max / 4096.0);
    if !(step > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "grid step must be positive, got {step}"
        )));
    }

    let f = |t: f64| esd_signed(d, t);
    let mut windows = Vec::new();
    let mut open: Option<f64> = None;
    let mut prev_t = 0.0;
    let mut prev_dead = f(0.0) < 0.0;

    let steps = (t_max / step).ceil() as usize;
    for i in 1..=steps {
        let t = (i as f64 * step).min(t_max);
        let dead = f(t) < 0.0;
        if dead != prev_dead {
            let boundary = bisect_sign_change(&f, prev_t, t);
            if dead {
                open = Some(boundary);
            } else if let Some(death) = open.take() {
                windows.push(EsdWindow {
                    t_death: death,
                    t_revival: boundary,
                });
            }
        }
        prev_t = t;
        prev_dead = dead;
    }
    if let Some(death) = open {
        windows.push(EsdWindow {
            t_death: death,
            t_revival: t_max,
        });
    }
    Ok(windows)
}

/// Bisects f over [lo, hi], where the deadness of the two edges differs,
/// down to a bracket of width 1e-11.
fn bisect_sign_change(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_dead = f(lo) < 0.0;
    while hi - lo > WINDOW_BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == lo_dead {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{func_hermitian, hermitian_eig};
    use crate::spin_model::conjugated_hamiltonian;
    use crate::DEFAULT_TOL;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

    const SQRT8: f64 = 2.8284271247461903;

    fn params(b: f64, j: f64, g: f64, d: f64, phi: f64) -> ModelParams {
        ModelParams::from_field_coupling(b, j, g, d, phi).unwrap()
    }

    #[test]
    fn initial_state_shape() {
        let init = InitialState::new(0.5, FRAC_PI_4).unwrap();
        let rho = init.rho0();
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
        let eig = hermitian_eig(rho).unwrap();
        assert!(eig.values[0] > 0.0);
        assert!((rho[(1, 2)].re - 0.25).abs() < 1e-14);

        assert!(InitialState::new(0.0, 0.0).is_err());
        assert!(InitialState::new(1.2, 0.0).is_err());
    }

    #[test]
    fn propagator_paths_agree() {
        let p = params(1.3, 0.8, 0.6, 3.2, 1.7);
        let h = conjugated_hamiltonian(&p);
        for t in [0.0, 0.37, 1.9, 6.1] {
            let spectral = propagator(&p, t);
            let elements = propagator_elements(&p, t);
            let exponential = func_hermitian(h.matrix(), |v| {
                C64::from_polar(1.0, -v * t)
            })
            .unwrap();
            assert!(
                (&spectral - &elements).frobenius_norm() < 1e-12,
                "t = {t}"
            );
            assert!(
                (&spectral - &exponential).frobenius_norm() < DEFAULT_TOL,
                "t = {t}"
            );
        }
    }

    #[test]
    fn propagator_at_zero_time_is_identity() {
        let p = params(1.0, 0.5, 0.3, 4.0, 0.2);
        let diff = (&propagator(&p, 0.0) - &CMatrix::identity(4)).frobenius_norm();
        assert!(diff < 1e-14);
    }

    #[test]
    fn propagator_is_unitary() {
        let p = params(0.9, -0.4, 1.1, 2.6, 2.9);
        for t in [0.21, 1.4, 13.7] {
            let u = propagator(&p, t);
            let diff = (&(&u.dagger() * &u) - &CMatrix::identity(4)).frobenius_norm();
            assert!(diff < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn balanced_d_quarter_period_swaps_the_middle_block() {
        let p = params(1.0, 1.0, 0.7, SQRT8, 0.4);
        let u = propagator_elements(&p, FRAC_PI_2);
        assert!(u[(1, 1)].norm() < 1e-14);
        assert!(u[(2, 2)].norm() < 1e-14);
        assert!((u[(1, 2)].norm() - 1.0).abs() < 1e-14);
        assert!((u[(2, 1)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn evolution_preserves_trace_and_positivity() {
        let p = params(1.1, 0.6, -0.3, 3.4, 0.8);
        let init = InitialState::new(0.7, 0.9).unwrap();
        for t in [0.3, 2.2, 9.9] {
            let rho = evolved_state(&p, &init, t);
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            let eig = hermitian_eig(&rho).unwrap();
            assert!(eig.values[0] > -1e-12);
        }
    }

    #[test]
    fn werner_mixture_starts_at_quarter_concurrence() {
        let p = params(1.0, 0.5, 0.3, 3.0, PI);
        let init = InitialState::new(0.5, FRAC_PI_4).unwrap();
        let c = evolved_concurrence(&p, &init, 0.0).unwrap();
        assert!((c.value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn pure_product_start_has_no_concurrence() {
        let p = params(1.0, 0.5, 0.3, 3.0, PI);
        let init = InitialState::new(1.0, 0.0).unwrap();
        let c = evolved_concurrence(&p, &init, 0.0).unwrap();
        assert!(c.value < 1e-10);
    }

    #[test]
    fn pure_bell_start_stays_maximal_at_balanced_d() {
        let p = params(1.0, 0.5, 0.3, SQRT8, PI);
        let init = InitialState::new(1.0, FRAC_PI_4).unwrap();
        for t in [0.0, 0.7, 2.9, 5.3] {
            let c = evolved_concurrence(&p, &init, t).unwrap();
            assert!((c.value - 1.0).abs() < 1e-10, "t = {t}: {}", c.value);
        }
    }

    #[test]
    fn closed_form_matches_pipeline() {
        let init = InitialState::new(0.5, FRAC_PI_4).unwrap();
        for d in [2.1, 3.0, 5.0] {
            for t in [0.0, 1.0, PI, 4.4] {
                for (b, g) in [(0.7, 0.3), (2.0, -1.1)] {
                    let p = params(b, 0.5, g, d, PI);
                    let pipeline = evolved_concurrence(&p, &init, t).unwrap().value;
                    let closed = esd_closed_form(d, t).unwrap().value;
                    assert!(
                        (pipeline - closed).abs() < DEFAULT_TOL,
                        "d = {d}, t = {t}, (B, g) = ({b}, {g}): {pipeline} vs {closed}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_reference_values() {
        for d in [2.0, 2.1, 3.0, SQRT8, 6.0] {
            assert!((esd_closed_form(d, 0.0).unwrap().value - 0.25).abs() < 1e-12);
        }
        for t in [0.0, 0.9, PI, 5.0] {
            assert!((esd_closed_form(SQRT8, t).unwrap().value - 0.25).abs() < 1e-12);
        }
        assert_eq!(esd_closed_form(2.1, PI).unwrap().value, 0.0);
        assert!((esd_signed(2.1, PI) + 0.25 - 0.16269).abs() < 1e-4);
        assert!(matches!(
            esd_closed_form(1.9, 0.0),
            Err(Error::LoopOutOfDomain { .. })
        ));
    }

    #[test]
    fn closed_form_is_periodic() {
        for d in [2.1, 4.0, 7.3] {
            for t in [0.0, 0.4, 2.9] {
                assert!((esd_signed(d, t) - esd_signed(d, t + TAU)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn windows_for_narrow_loop_parameter() {
        let windows = esd_windows(2.1, 2.0 * TAU, None).unwrap();
        assert_eq!(windows.len(), 2, "{windows:?}");
        let first = windows[0];
        assert!(first.t_death < PI && PI < first.t_revival);
        assert!((windows[1].t_death - first.t_death - TAU).abs() < 1e-8);
        assert!((windows[1].t_revival - first.t_revival - TAU).abs() < 1e-8);
        for w in &windows {
            assert!(esd_signed(2.1, w.t_death).abs() < 1e-9);
            assert!(esd_signed(2.1, w.t_revival).abs() < 1e-9);
            let step = 2.0 * TAU / 4096.0;
            assert!(esd_signed(2.1, w.t_death - 10.0 * step) > 0.0);
            assert!(esd_signed(2.1, (w.t_revival + 10.0 * step).min(2.0 * TAU)) > 0.0);
            let inside = 0.5 * (w.t_death + w.t_revival);
            assert!(esd_closed_form(2.1, inside).unwrap().value == 0.0);
        }
    }

    #[test]
    fn no_windows_when_concurrence_stays_positive() {
        assert!(esd_windows(SQRT8, 2.0 * TAU, None).unwrap().is_empty());
        // Tangency: the expression touches zero at t = pi without dipping.
        assert!(esd_signed(4.0, PI).abs() < 1e-12);
        assert!(esd_windows(4.0, 2.0 * TAU, None).unwrap().is_empty());
    }

    #[test]
    fn clipped_window_ends_at_scan_edge() {
        let full = esd_windows(2.1, 2.0 * TAU, None).unwrap();
        let cut = full[0].t_death + 0.2;
        let clipped = esd_windows(2.1, cut, None).unwrap();
        assert_eq!(clipped.len(), 1);
        assert!((clipped[0].t_revival - cut).abs() < 1e-12);
    }

    #[test]
    fn window_scan_validates_input() {
        assert!(matches!(
            esd_windows(1.5, 1.0, None),
            Err(Error::LoopOutOfDomain { .. })
        ));
        assert!(matches!(
            esd_windows(3.0, 0.0, None),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            esd_windows(3.0, 1.0, Some(0.0)),
            Err(Error::InvalidSpec(_))
        ));
    }
}
