//! C ABI for the tlent library.
//!
//! Every function returns a [`TlentStatus`]. Results come back through out
//! pointers, written only when the status is `TLENT_STATUS_OK`, except for
//! the window count in [`tlent_esd_windows`], which is also written on
//! `TLENT_STATUS_BUFFER_TOO_SMALL` so callers can size the buffer first.
//! Handles returned by the constructors own their data and must be released
//! with [`tlent_generator_free`].

use std::os::raw::c_char;
use std::ptr;

use tlent::dynamics::{esd_closed_form, esd_windows, evolved_concurrence, InitialState};
use tlent::entanglement::generalized_concurrence;
use tlent::spin_model::ModelParams;
use tlent::thermal::{c_max, critical_temperature, thermal_concurrence, zero_t_limit};
use tlent::tl::{
    family_generator, verify_constraints, verify_tl_relations, AmplitudeMatrix, FamilySpec,
    TLGenerator,
};
use tlent::yang_baxter::{verify_ybe, yang_baxterize};
use tlent::{C64, Error};

/// Outcome of a library call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlentStatus {
    /// The call succeeded and all out parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument violated a documented domain or validity rule.
    InvalidArgument = 2,
    /// An iterative routine failed to converge or produced a non-finite
    /// intermediate value.
    NumericFailure = 3,
    /// The supplied buffer cannot hold the full result.
    BufferTooSmall = 4,
}

fn status_of(err: &Error) -> TlentStatus {
    match err {
        Error::NoConvergence(_) | Error::Numeric(_) => TlentStatus::NumericFailure,
        _ => TlentStatus::InvalidArgument,
    }
}

/// Opaque handle bundling a projector state, its amplitude matrix, and the
/// generator built from them.
pub struct TlentGenerator {
    generator: TLGenerator,
    amplitude: AmplitudeMatrix,
    state: Vec<C64>,
}

/// Largest site dimension the constructors accept.
pub const TLENT_MAX_SITE_DIM: usize = 16;

fn try_build(spec: &FamilySpec) -> tlent::Result<TlentGenerator> {
    let generator = family_generator(spec)?;
    let amplitude = AmplitudeMatrix::from_family(spec)?;
    let state = amplitude.state_vector();
    Ok(TlentGenerator {
        generator,
        amplitude,
        state,
    })
}

unsafe fn emit_handle(spec: FamilySpec, out: *mut *mut TlentGenerator) -> TlentStatus {
    match try_build(&spec) {
        Ok(handle) => {
            *out = Box::into_raw(Box::new(handle));
            TlentStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Builds the generator for the maximally entangled family on `n`-state
/// sites. `phases` may be null for all-zero phases, otherwise it must point
/// to `n` values. `n` must lie in `2..=TLENT_MAX_SITE_DIM`.
///
/// # Safety
/// `out` must be a valid pointer. `phases`, when non-null, must point to at
/// least `n` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_max_entangled(
    n: usize,
    phases: *const f64,
    out: *mut *mut TlentGenerator,
) -> TlentStatus {
    if out.is_null() {
        return TlentStatus::NullPointer;
    }
    *out = ptr::null_mut();
    if !(2..=TLENT_MAX_SITE_DIM).contains(&n) {
        return TlentStatus::InvalidArgument;
    }
    let phases = if phases.is_null() {
        vec![0.0; n]
    } else {
        std::slice::from_raw_parts(phases, n).to_vec()
    };
    emit_handle(FamilySpec::MaxEntangled { n, phases }, out)
}

/// Builds the generator for the two-state family with amplitude ratio `q`
/// (loop parameter q + 1/q) and ket phases `k01`, `k10`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_two_dim(
    q: f64,
    k01: f64,
    k10: f64,
    out: *mut *mut TlentGenerator,
) -> TlentStatus {
    if out.is_null() {
        return TlentStatus::NullPointer;
    }
    *out = ptr::null_mut();
    emit_handle(FamilySpec::TwoDim { q, k01, k10 }, out)
}

/// Builds the generator for a three-state family branch (1, 2 or 3) with
/// amplitude ratio `q` (loop parameter q + 1/q + 1). `phases` may be null
/// for all-zero phases, otherwise it must point to 3 values.
///
/// # Safety
/// `out` must be a valid pointer. `phases`, when non-null, must point to at
/// least 3 readable doubles.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_three_dim(
    branch: u8,
    q: f64,
    phases: *const f64,
    out: *mut *mut TlentGenerator,
) -> TlentStatus {
    if out.is_null() {
        return TlentStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let phases = if phases.is_null() {
        [0.0; 3]
    } else {
        let s = std::slice::from_raw_parts(phases, 3);
        [s[0], s[1], s[2]]
    };
    emit_handle(FamilySpec::ThreeDim { branch, q, phases }, out)
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must be null or a pointer returned by one of the constructors
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_free(handle: *mut TlentGenerator) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Writes the site dimension n (the generator matrix is n² by n²).
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_site_dim(
    handle: *const TlentGenerator,
    out: *mut usize,
) -> TlentStatus {
    if handle.is_null() || out.is_null() {
        return TlentStatus::NullPointer;
    }
    *out = (*handle).generator.site_dim();
    TlentStatus::Ok
}

/// Writes the loop parameter d.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_loop_parameter(
    handle: *const TlentGenerator,
    out: *mut f64,
) -> TlentStatus {
    if handle.is_null() || out.is_null() {
        return TlentStatus::NullPointer;
    }
    *out = (*handle).generator.loop_parameter();
    TlentStatus::Ok
}

/// Writes one entry of the n²-by-n² generator matrix.
///
/// # Safety
/// `handle` must be a live handle; `out_re` and `out_im` must be valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_entry(
    handle: *const TlentGenerator,
    row: usize,
    col: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> TlentStatus {
    if handle.is_null() || out_re.is_null() || out_im.is_null() {
        return TlentStatus::NullPointer;
    }
    let m = (*handle).generator.matrix();
    if row >= m.rows() || col >= m.cols() {
        return TlentStatus::InvalidArgument;
    }
    let v = m[(row, col)];
    *out_re = v.re;
    *out_im = v.im;
    TlentStatus::Ok
}

/// Writes the worst residual over the generator identities (idempotency up
/// to d, the braid-monoid contraction, Hermiticity) and the quadratic
/// amplitude constraints.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_relation_residual(
    handle: *const TlentGenerator,
    out: *mut f64,
) -> TlentStatus {
    if handle.is_null() || out.is_null() {
        return TlentStatus::NullPointer;
    }
    let h = &*handle;
    let relations = verify_tl_relations(&h.generator).max_residual();
    let constraints =
        verify_constraints(&h.amplitude, h.generator.loop_parameter()).max_residual();
    *out = relations.max(constraints);
    TlentStatus::Ok
}

/// Writes the generalized concurrence of the underlying two-site state.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_state_concurrence(
    handle: *const TlentGenerator,
    out: *mut f64,
) -> TlentStatus {
    if handle.is_null() || out.is_null() {
        return TlentStatus::NullPointer;
    }
    let h = &*handle;
    match generalized_concurrence(&h.state, h.generator.site_dim()) {
        Ok(c) => {
            *out = c.value;
            TlentStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes one entry of the braid matrix at spectral parameter e^{iθ}.
///
/// # Safety
/// `handle` must be a live handle; `out_re` and `out_im` must be valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_braid_entry(
    handle: *const TlentGenerator,
    theta: f64,
    row: usize,
    col: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> TlentStatus {
    if handle.is_null() || out_re.is_null() || out_im.is_null() {
        return TlentStatus::NullPointer;
    }
    let h = &*handle;
    let braid = match yang_baxterize(&h.generator, C64::from_polar(1.0, theta)) {
        Ok(b) => b,
        Err(e) => return status_of(&e),
    };
    let m = braid.matrix();
    if row >= m.rows() || col >= m.cols() {
        return TlentStatus::InvalidArgument;
    }
    let v = m[(row, col)];
    *out_re = v.re;
    *out_im = v.im;
    TlentStatus::Ok
}

/// Writes the braid-relation residual for spectral parameters e^{iθx} and
/// e^{iθy}.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_generator_braid_residual(
    handle: *const TlentGenerator,
    theta_x: f64,
    theta_y: f64,
    out: *mut f64,
) -> TlentStatus {
    if handle.is_null() || out.is_null() {
        return TlentStatus::NullPointer;
    }
    match verify_ybe(
        &(*handle).generator,
        C64::from_polar(1.0, theta_x),
        C64::from_polar(1.0, theta_y),
    ) {
        Ok(r) => {
            *out = r;
            TlentStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

fn model(b: f64, j: f64, g: f64, d: f64, phi: f64) -> tlent::Result<ModelParams> {
    ModelParams::from_field_coupling(b, j, g, d, phi)
}

/// Writes the largest thermal concurrence reachable at loop parameter `d`,
/// attained in the cold limit at zero field.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_c_max(d: f64, out: *mut f64) -> TlentStatus {
    if out.is_null() {
        return TlentStatus::NullPointer;
    }
    match c_max(d) {
        Ok(v) => {
            *out = v;
            TlentStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the temperature above which the thermal state stays separable,
/// or 0 when no entangled regime exists. The value does not depend on the
/// magnetic field or the generator phase.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_critical_temperature(
    j: f64,
    g: f64,
    d: f64,
    out: *mut f64,
) -> TlentStatus {
    if out.is_null() {
        return TlentStatus::NullPointer;
    }
    let params = match model(0.0, j, g, d, std::f64::consts::PI) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match critical_temperature(&params) {
        Ok(c) => {
            *out = c.tc;
            TlentStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the concurrence of the Gibbs state at temperature `t` for the
/// two-site model with field `b`, exchange coupling `j`, interaction
/// strength `g`, loop parameter `d`, and generator phase `phi`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_thermal_concurrence(
    b: f64,
    j: f64,
    g: f64,
    d: f64,
    phi: f64,
    t: f64,
    out: *mut f64,
) -> TlentStatus {
    if out.is_null() {
        return TlentStatus::NullPointer;
    }
    let params = match model(b, j, g, d, phi) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match thermal_concurrence(&params, t) {
        Ok(c) => {
            *out = c.value;
            TlentStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the zero-temperature limit of the thermal concurrence.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_zero_t_limit(
    b: f64,
    j: f64,
    g: f64,
    d: f64,
    phi: f64,
    out: *mut f64,
) -> TlentStatus {
    if out.is_null() {
        return TlentStatus::NullPointer;
    }
    let params = match model(b, j, g, d, phi) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    *out = zero_t_limit(&params).value;
    TlentStatus::Ok
}

/// Writes the concurrence at time `t` of a state evolved under the braid
/// conjugated Hamiltonian from the Werner-like start
/// (1−γ)/4 · 1 + γ|ψ⟩⟨ψ| with ψ = sin(α)|01⟩ + cos(α)|10⟩.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn tlent_evolved_concurrence(
    b: f64,
    j: f64,
    g: f64,
    d: f64,
    phi: f64,
    gamma: f64,
    alpha_angle: f64,
    t: f64,
    out: *mut f64,
) -> TlentStatus {
    if out.is_null() {
        return TlentStatus::NullPointer;
    }
    let params = match model(b, j, g, d, phi) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    let init = match InitialState::new(gamma, alpha_angle) {
        Ok(i) => i,
        Err(e) => return status_of(&e),
    };
    match evolved_concurrence(&params, &init, t) {
        Ok(c) => {
            *out = c.value;
            TlentStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the closed-form concurrence of the standard sudden-death
/// trajectory at loop parameter `d` and time `t`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tlent_esd_concurrence(d: f64, t: f64, out: *mut f64) -> TlentStatus {
    if out.is_null() {
        return TlentStatus::NullPointer;
    }
    match esd_closed_form(d, t) {
        Ok(c) => {
            *out = c.value;
            TlentStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Finds the zero-concurrence windows of the standard sudden-death
/// trajectory on [0, t_max]. Each window occupies two slots of `out_pairs`
/// (death time, revival time). The window count is always written to
/// `out_count`; when it exceeds `capacity_pairs` nothing is copied and the
/// call returns `TLENT_STATUS_BUFFER_TOO_SMALL`, so a first call with
/// capacity 0 sizes the buffer.
///
/// # Safety
/// `out_count` must be a valid pointer. `out_pairs` must point to at least
/// `2 * capacity_pairs` writable doubles, or may be null when
/// `capacity_pairs` is 0.
#[no_mangle]
pub unsafe extern "C" fn tlent_esd_windows(
    d: f64,
    t_max: f64,
    out_pairs: *mut f64,
    capacity_pairs: usize,
    out_count: *mut usize,
) -> TlentStatus {
    if out_count.is_null() || (out_pairs.is_null() && capacity_pairs > 0) {
        return TlentStatus::NullPointer;
    }
    match esd_windows(d, t_max, None) {
        Ok(windows) => {
            *out_count = windows.len();
            if windows.len() > capacity_pairs {
                return TlentStatus::BufferTooSmall;
            }
            for (i, w) in windows.iter().enumerate() {
                *out_pairs.add(2 * i) = w.t_death;
                *out_pairs.add(2 * i + 1) = w.t_revival;
            }
            TlentStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Returns a static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn tlent_status_message(status: TlentStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        TlentStatus::Ok => b"ok\0",
        TlentStatus::NullPointer => b"null pointer argument\0",
        TlentStatus::InvalidArgument => b"invalid argument\0",
        TlentStatus::NumericFailure => b"numerical failure\0",
        TlentStatus::BufferTooSmall => b"buffer too small\0",
    };
    text.as_ptr() as *const c_char
}

/// Returns the library version as a static, NUL-terminated string.
#[no_mangle]
pub extern "C" fn tlent_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
