//! Thermal states of the conjugated Hamiltonian and their entanglement.
//!
//! The Gibbs state ρ(T) = e^{−H/T}/Z of the braided two-qubit model is an
//! X-shaped matrix, so its spin-flip concurrence has a closed form,
//!
//! ```text
//!     C(T) = max(0, [κ e^{g/2T} sinh(|J|/T) − 1] /
//!                   [cosh(B/T) + e^{g/2T} cosh(J/T)]),
//! ```
//!
//! with κ = 4√(d²−4)/d². Entanglement survives up to the critical
//! temperature T_c solving κ e^{g/2T} sinh(|J|/T) = 1 and, at T → 0,
//! jumps between κ, κ/2, and 0 as |B| crosses |J| + g/2. All closed forms
//! are evaluated with max-shifted exponents so they stay finite at
//! temperatures far below the couplings, where e^{B/T} alone overflows.

use crate::entanglement::{wootters_concurrence, ConcurrenceMethod, ConcurrenceValue};
use crate::error::{Error, Result};
use crate::linalg::{func_hermitian, hermitian_eig, C64, CMatrix};
use crate::spin_model::{conjugated_hamiltonian, ModelParams};

/// Relative tolerance for detecting the |B| = |J| + g/2 boundary case.
const BOUNDARY_TOL: f64 = 1e-12;

/// Geometric bracket expansion limit for the critical temperature: 2^80
/// covers every double-precision regime where the defining function can
/// still change sign.
const BRACKET_DOUBLINGS: usize = 80;

/// A Gibbs state together with its temperature, normalization, and
/// concurrence.
#[derive(Debug, Clone)]
pub struct ThermalPoint {
    pub temperature: f64,
    pub rho: CMatrix,
    /// Partition function Tr e^{−H/T}. The density matrix itself is built
    /// from shifted exponents and stays finite even where this overflows.
    pub partition: f64,
    pub concurrence: ConcurrenceValue,
}

/// Shifted Boltzmann weights shared by the thermal formulas: all exponents
/// are ≤ 0 after subtracting m = max(B, g/2 + |J|), so nothing overflows.
struct Weights {
    shift: f64,
    e_down: f64,
    e_up: f64,
    p: f64,
    q: f64,
    /// (e_down + e_up + p + q)/2 = Z e^{g/4T − m/T}/2, always ≥ 1/2.
    scale: f64,
}

fn weights(params: &ModelParams, t: f64) -> Weights {
    let b = params.b();
    let j = params.j();
    let g = params.g();
    let m = b.max(g / 2.0 + j.abs());
    let e_down = ((-b - m) / t).exp();
    let e_up = ((b - m) / t).exp();
    let p = ((g / 2.0 + j - m) / t).exp();
    let q = ((g / 2.0 - j - m) / t).exp();
    Weights {
        shift: m,
        e_down,
        e_up,
        p,
        q,
        scale: (e_down + e_up + p + q) / 2.0,
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t > 0.0) {
        return Err(Error::TemperatureNonPositive(t));
    }
    Ok(())
}

/// Gibbs state from the closed form, with its Wootters concurrence.
pub fn thermal_state(params: &ModelParams, t: f64) -> Result<ThermalPoint> {
    check_temperature(t)?;
    let w = weights(params, t);
    let eta = params.eta();
    let kappa = params.kappa();
    let norm = 2.0 * w.scale;

    let mut rho = CMatrix::zeros(4, 4);
    rho[(0, 0)] = C64::new(w.e_down / norm, 0.0);
    rho[(3, 3)] = C64::new(w.e_up / norm, 0.0);
    rho[(1, 1)] = C64::new((w.p * (1.0 - eta) + w.q * (1.0 + eta)) / (2.0 * norm), 0.0);
    rho[(2, 2)] = C64::new((w.p * (1.0 + eta) + w.q * (1.0 - eta)) / (2.0 * norm), 0.0);
    rho[(1, 2)] = C64::from_polar(1.0, params.phi()) * (kappa * (w.p - w.q) / (2.0 * norm));
    rho[(2, 1)] = rho[(1, 2)].conj();

    let partition = 2.0 * ((w.shift - params.g() / 4.0) / t).exp() * w.scale;
    let concurrence = wootters_concurrence(&rho)?;
    Ok(ThermalPoint {
        temperature: t,
        rho,
        partition,
        concurrence,
    })
}

/// Gibbs state by matrix exponential of the conjugated Hamiltonian; the
/// oracle path for [`thermal_state`]. Eigenvalues are shifted by their
/// minimum before exponentiating.
pub fn thermal_state_numeric(params: &ModelParams, t: f64) -> Result<ThermalPoint> {
    check_temperature(t)?;
    let h = conjugated_hamiltonian(params);
    let eig = hermitian_eig(h.matrix())?;
    let lambda_min = eig.values[0];
    let unnorm = func_hermitian(h.matrix(), |v| {
        C64::new((-(v - lambda_min) / t).exp(), 0.0)
    })?;
    let trace = unnorm.trace().re;
    let rho = unnorm.scale(C64::new(1.0 / trace, 0.0));
    let partition = (-lambda_min / t).exp() * trace;
    let concurrence = wootters_concurrence(&rho)?;
    Ok(ThermalPoint {
        temperature: t,
        rho,
        partition,
        concurrence,
    })
}

/// Analytic thermal concurrence; must agree with the Wootters value of the
/// Gibbs state.
pub fn thermal_concurrence(params: &ModelParams, t: f64) -> Result<ConcurrenceValue> {
    check_temperature(t)?;
    let b = params.b();
    let j = params.j().abs();
    let g = params.g();
    let kappa = params.kappa();
    let m = b.max(g / 2.0 + j);
    // Shifted form of [κ e^{g/2T} sinh(|J|/T) − 1] over
    // [cosh(B/T) + e^{g/2T} cosh(J/T)].
    let p = ((g / 2.0 + j - m) / t).exp();
    let q = ((g / 2.0 - j - m) / t).exp();
    let numerator = kappa * (p - q) / 2.0 - (-m / t).exp();
    let e_down = ((-b - m) / t).exp();
    let e_up = ((b - m) / t).exp();
    let denominator = (e_down + e_up + p + q) / 2.0;
    Ok(ConcurrenceValue {
        value: (numerator / denominator).max(0.0),
        method: ConcurrenceMethod::Wootters,
    })
}

/// T → 0⁺ limit of the thermal concurrence. The limit compares the mean
/// field against the threshold |J| + g/2:
///
/// ```text
///     |B| < |J| + g/2  →  κ          (the middle-block ground state wins)
///     |B| = |J| + g/2  →  κ/2        (degenerate crossing)
///     |B| > |J| + g/2  →  0          (a product ground state wins)
/// ```
///
/// J = 0 gives 0 at every temperature, and a non-positive threshold means
/// the entangled level never reaches the bottom of the spectrum.
pub fn zero_t_limit(params: &ModelParams) -> ConcurrenceValue {
    let value = zero_t_value(params);
    ConcurrenceValue {
        value,
        method: ConcurrenceMethod::Wootters,
    }
}

fn zero_t_value(params: &ModelParams) -> f64 {
    let j = params.j().abs();
    if j == 0.0 {
        return 0.0;
    }
    let threshold = j + params.g() / 2.0;
    if threshold <= 0.0 {
        return 0.0;
    }
    let kappa = params.kappa();
    let b = params.b();
    if (b - threshold).abs() <= BOUNDARY_TOL * threshold.max(1.0) {
        return kappa / 2.0;
    }
    if b < threshold {
        kappa
    } else {
        0.0
    }
}

/// Largest concurrence the model can reach, C_max = 4√(d²−4)/d²: zero at
/// d = 2, one at d = 2√2, decaying like 4/d afterwards.
pub fn c_max(d: f64) -> Result<f64> {
    if !(d >= 2.0) {
        return Err(Error::LoopOutOfDomain {
            got: d,
            requires: "d >= 2",
        });
    }
    Ok(4.0 * (d * d - 4.0).sqrt() / (d * d))
}

/// Root-finding summary for the critical temperature.
#[derive(Debug, Clone, Copy)]
pub struct CriticalTemperature {
    /// The critical temperature, 0 when no entangled regime exists.
    pub tc: f64,
    /// Final bisection bracket; the defining function changes sign across
    /// it. None for the degenerate tc = 0 outcomes.
    pub bracket: Option<(f64, f64)>,
    /// κ e^{g/2Tc} sinh(|J|/Tc) − 1 evaluated at the reported tc; 0 for the
    /// degenerate outcomes.
    pub residual: f64,
    /// Whether a sign change was found. False means tc = 0 was reported
    /// because the state is separable at every temperature.
    pub sign_change: bool,
}

/// Log of the defining function, ln[κ e^{g/2T} sinh(|J|/T)], which shares
/// its sign with the function minus one and never overflows.
fn log_defining(kappa: f64, g: f64, j_abs: f64, t: f64) -> f64 {
    kappa.ln() + g / (2.0 * t) + ln_sinh(j_abs / t)
}

/// ln sinh z for z > 0 without overflow: z + ln(1 − e^{−2z}) − ln 2.
fn ln_sinh(z: f64) -> f64 {
    z + (-(-2.0 * z).exp_m1()).ln() - std::f64::consts::LN_2
}

/// Solves κ e^{g/2T} sinh(|J|/T) = 1 for the critical temperature by
/// bisection on the log form, bracketing with geometric expansion from
/// T = 1. Returns tc = 0 (flagged) when the function never changes sign.
pub fn critical_temperature(params: &ModelParams) -> Result<CriticalTemperature> {
    let no_root = CriticalTemperature {
        tc: 0.0,
        bracket: None,
        residual: 0.0,
        sign_change: false,
    };
    let j = params.j().abs();
    if params.d() <= 2.0 || j == 0.0 {
        return Ok(no_root);
    }
    let kappa = params.kappa();
    let g = params.g();
    let f = |t: f64| log_defining(kappa, g, j, t);

    // Expand geometrically until the bracket [lo, hi] has f(lo) > 0 and
    // f(hi) < 0; f decreases through its root because the Boltzmann factors
    // flatten as T grows.
    let mut lo = 1.0;
    let mut hi = 1.0;
    if f(1.0) >= 0.0 {
        let mut found = false;
        for _ in 0..BRACKET_DOUBLINGS {
            hi *= 2.0;
            if f(hi) < 0.0 {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(no_root);
        }
    } else {
        let mut found = false;
        for _ in 0..BRACKET_DOUBLINGS {
            lo /= 2.0;
            if f(lo) >= 0.0 {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(no_root);
        }
    }

    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let tc = 0.5 * (lo + hi);
    Ok(CriticalTemperature {
        tc,
        bracket: Some((lo, hi)),
        residual: f(tc).exp_m1(),
        sign_change: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOL;

    const SQRT8: f64 = 2.8284271247461903;

    fn params(b: f64, j: f64, g: f64, d: f64, phi: f64) -> ModelParams {
        ModelParams::from_field_coupling(b, j, g, d, phi).unwrap()
    }

    #[test]
    fn corner_population_has_the_closed_form() {
        let p = params(2.0, 1.0, 1.0, 3.0, 0.4);
        let t = 0.7;
        let point = thermal_state(&p, t).unwrap();
        let expected = (-2.0 / t).exp()
            / (2.0 * ((2.0 / t).cosh() + (0.5 / t).exp() * (1.0 / t).cosh()));
        assert!((point.rho[(0, 0)].re - expected).abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_matrix_exponential() {
        let p = params(2.0, 1.0, 1.0, SQRT8, 0.9);
        let a = thermal_state(&p, 1.0).unwrap();
        let b = thermal_state_numeric(&p, 1.0).unwrap();
        let diff = (&a.rho - &b.rho).frobenius_norm();
        assert!(diff < DEFAULT_TOL, "{diff}");
        assert!((a.partition - b.partition).abs() / b.partition < DEFAULT_TOL);
        assert!((a.concurrence.value - b.concurrence.value).abs() < DEFAULT_TOL);
    }

    #[test]
    fn closed_form_survives_deep_cold() {
        // e^{B/T} alone overflows here; the shifted form must not.
        let p = params(3.0, 1.0, 1.0, 3.0, 0.0);
        let point = thermal_state(&p, 1e-3).unwrap();
        assert!((point.rho.trace().re - 1.0).abs() < 1e-12);
        assert!(point.rho[(0, 0)].re.is_finite());
        assert!(point.partition.is_infinite());
    }

    #[test]
    fn infinite_temperature_limit_is_maximally_mixed() {
        let p = params(1.0, 0.5, 0.8, 3.0, 1.2);
        let point = thermal_state(&p, 1e6).unwrap();
        let target = CMatrix::identity(4).scale(C64::new(0.25, 0.0));
        assert!((&point.rho - &target).frobenius_norm() < 1e-5);
    }

    #[test]
    fn gibbs_state_is_normalized_and_positive() {
        for t in [0.05, 0.3, 1.0, 10.0] {
            let p = params(1.5, -0.7, 0.6, 4.0, 2.1);
            let point = thermal_state(&p, t).unwrap();
            assert!((point.rho.trace().re - 1.0).abs() < 1e-12);
            let eig = hermitian_eig(&point.rho).unwrap();
            assert!(eig.values[0] > -1e-14);
            assert!(point.partition > 0.0);
        }
    }

    #[test]
    fn analytic_concurrence_matches_wootters() {
        for d in [2.0, 2.5, SQRT8, 4.0] {
            for t in [0.2, 0.7, 1.5] {
                for b in [0.0, 1.0, 2.5] {
                    let p = params(b, 1.0, 1.0, d, 0.8);
                    let analytic = thermal_concurrence(&p, t).unwrap().value;
                    let oracle = thermal_state_numeric(&p, t).unwrap().concurrence.value;
                    assert!(
                        (analytic - oracle).abs() < DEFAULT_TOL,
                        "d = {d}, T = {t}, B = {b}: {analytic} vs {oracle}"
                    );
                }
            }
        }
    }

    #[test]
    fn minimal_loop_parameter_is_always_separable() {
        let p = params(1.0, 1.0, 1.0, 2.0, 0.0);
        for t in [0.1, 1.0, 5.0] {
            assert_eq!(thermal_concurrence(&p, t).unwrap().value, 0.0);
        }
    }

    #[test]
    fn concurrence_vanishes_above_the_critical_temperature() {
        let p = params(0.0, 1.0, 1.0, SQRT8, 0.0);
        let tc = critical_temperature(&p).unwrap().tc;
        assert!(thermal_concurrence(&p, tc - 0.01).unwrap().value > 0.0);
        assert_eq!(thermal_concurrence(&p, tc + 0.01).unwrap().value, 0.0);
    }

    #[test]
    fn cold_limit_cases() {
        // Entangled level at the bottom: the limit is kappa.
        let p = params(0.5, 1.0, 1.0, SQRT8, 0.0);
        assert!((zero_t_limit(&p).value - 1.0).abs() < 1e-12);

        // Exact crossing: half of kappa.
        let p = params(1.5, 1.0, 1.0, 3.0, 0.0);
        let expected = 2.0 * 5.0_f64.sqrt() / 9.0;
        assert!((zero_t_limit(&p).value - expected).abs() < 1e-12);

        // Product ground state: no entanglement.
        let p = params(3.0, 1.0, 1.0, SQRT8, 0.0);
        assert_eq!(zero_t_limit(&p).value, 0.0);

        // No exchange coupling: separable at all temperatures.
        let p = params(0.1, 0.0, 1.0, SQRT8, 0.0);
        assert_eq!(zero_t_limit(&p).value, 0.0);

        // Threshold below zero: likewise.
        let p = params(0.0, 0.5, -2.0, SQRT8, 0.0);
        assert_eq!(zero_t_limit(&p).value, 0.0);
    }

    #[test]
    fn cold_limit_matches_cold_thermal_concurrence() {
        for (b, expected_of) in [
            (0.5, 1.0_f64),
            (3.0, 0.0),
        ] {
            let p = params(b, 1.0, 1.0, SQRT8, 0.0);
            let cold = thermal_concurrence(&p, 1e-3).unwrap().value;
            let limit = zero_t_limit(&p).value;
            assert!((limit - expected_of).abs() < 1e-12);
            assert!((cold - limit).abs() < 1e-2, "B = {b}: {cold} vs {limit}");
        }
    }

    #[test]
    fn peak_concurrence_values() {
        assert_eq!(c_max(2.0).unwrap(), 0.0);
        assert_eq!(c_max(SQRT8).unwrap(), 1.0);
        assert!((c_max(3.0).unwrap() - 4.0 * 5.0_f64.sqrt() / 9.0).abs() < 1e-15);
        assert!(matches!(c_max(1.9), Err(Error::LoopOutOfDomain { .. })));
    }

    #[test]
    fn critical_temperature_reference_point() {
        let p = params(0.0, 1.0, 1.0, SQRT8, 0.0);
        let root = critical_temperature(&p).unwrap();
        assert!(root.sign_change);
        assert!((root.tc - 1.5).abs() < 0.1, "{}", root.tc);
        assert!(root.residual.abs() <= DEFAULT_TOL, "{}", root.residual);
        let (lo, hi) = root.bracket.unwrap();
        assert!(lo <= root.tc && root.tc <= hi);
    }

    #[test]
    fn critical_temperature_degenerate_cases() {
        let minimal = critical_temperature(&params(0.0, 1.0, 1.0, 2.0, 0.0)).unwrap();
        assert_eq!(minimal.tc, 0.0);
        assert!(!minimal.sign_change);

        let uncoupled = critical_temperature(&params(1.0, 0.0, 1.0, 4.0, 0.0)).unwrap();
        assert_eq!(uncoupled.tc, 0.0);
        assert!(!uncoupled.sign_change);
    }

    #[test]
    fn critical_temperature_peaks_at_balanced_d() {
        let grid = [2.2, 2.5, SQRT8, 3.5, 4.0, 6.0];
        let tcs: Vec<f64> = grid
            .iter()
            .map(|&d| {
                critical_temperature(&params(0.0, 1.0, 1.0, d, 0.0))
                    .unwrap()
                    .tc
            })
            .collect();
        let best = tcs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(grid[best], SQRT8, "{tcs:?}");
    }

    #[test]
    fn cold_entanglement_threshold_is_d_independent() {
        let threshold = 1.5;
        for d in [3.0, 10.0] {
            let below = params(threshold - 0.1, 1.0, 1.0, d, 0.0);
            let above = params(threshold + 0.1, 1.0, 1.0, d, 0.0);
            assert!(zero_t_limit(&below).value > 0.0, "d = {d}");
            assert_eq!(zero_t_limit(&above).value, 0.0, "d = {d}");
        }
    }

    #[test]
    fn temperature_must_be_positive() {
        let p = params(1.0, 0.5, 0.5, 3.0, 0.0);
        assert!(matches!(
            thermal_state(&p, 0.0),
            Err(Error::TemperatureNonPositive(_))
        ));
        assert!(matches!(
            thermal_concurrence(&p, -1.0),
            Err(Error::TemperatureNonPositive(_))
        ));
        assert!(matches!(
            thermal_state_numeric(&p, 0.0),
            Err(Error::TemperatureNonPositive(_))
        ));
    }
}
