//! Exercises the C ABI end to end: handle lifecycle, out-parameter
//! contracts, error mapping, and agreement with the underlying library.

use std::ffi::CStr;
use std::ptr;

use tlent_ffi::*;

const TOL: f64 = 1e-12;
const SQRT8: f64 = 2.8284271247461903;

fn two_dim_handle(q: f64) -> *mut TlentGenerator {
    let mut h = ptr::null_mut();
    let st = unsafe { tlent_generator_two_dim(q, 0.0, 0.0, &mut h) };
    assert_eq!(st, TlentStatus::Ok);
    assert!(!h.is_null());
    h
}

#[test]
fn qubit_handle_reports_dimensions_and_entries() {
    let h = two_dim_handle(2.0);
    unsafe {
        let mut n = 0usize;
        assert_eq!(tlent_generator_site_dim(h, &mut n), TlentStatus::Ok);
        assert_eq!(n, 2);

        let mut d = 0.0;
        assert_eq!(tlent_generator_loop_parameter(h, &mut d), TlentStatus::Ok);
        assert!((d - 2.5).abs() < TOL);

        let expect = [
            ((1usize, 1usize), 2.0),
            ((1, 2), 1.0),
            ((2, 1), 1.0),
            ((2, 2), 0.5),
            ((0, 0), 0.0),
            ((3, 3), 0.0),
        ];
        for ((r, c), want) in expect {
            let (mut re, mut im) = (0.0, 0.0);
            assert_eq!(
                tlent_generator_entry(h, r, c, &mut re, &mut im),
                TlentStatus::Ok
            );
            assert!((re - want).abs() < TOL, "entry ({r},{c}) = {re}");
            assert!(im.abs() < TOL);
        }

        let mut residual = f64::INFINITY;
        assert_eq!(
            tlent_generator_relation_residual(h, &mut residual),
            TlentStatus::Ok
        );
        assert!(residual < TOL, "residual {residual}");

        let mut c = 0.0;
        assert_eq!(
            tlent_generator_state_concurrence(h, &mut c),
            TlentStatus::Ok
        );
        assert!((c - 2.0 / 2.5).abs() < TOL);

        tlent_generator_free(h);
    }
}

#[test]
fn maximally_entangled_and_qutrit_handles_match_their_laws() {
    unsafe {
        let mut h = ptr::null_mut();
        let phases = [0.1, 0.2, 0.3];
        assert_eq!(
            tlent_generator_max_entangled(3, phases.as_ptr(), &mut h),
            TlentStatus::Ok
        );
        let (mut d, mut c) = (0.0, 0.0);
        assert_eq!(tlent_generator_loop_parameter(h, &mut d), TlentStatus::Ok);
        assert_eq!(tlent_generator_state_concurrence(h, &mut c), TlentStatus::Ok);
        assert!((d - 3.0).abs() < TOL);
        assert!((c - 1.0).abs() < TOL);
        tlent_generator_free(h);

        let mut h = ptr::null_mut();
        assert_eq!(
            tlent_generator_three_dim(2, 0.5, ptr::null(), &mut h),
            TlentStatus::Ok
        );
        assert_eq!(tlent_generator_loop_parameter(h, &mut d), TlentStatus::Ok);
        assert_eq!(tlent_generator_state_concurrence(h, &mut c), TlentStatus::Ok);
        assert!((d - 3.5).abs() < TOL);
        assert!((c - (3.0f64 / 3.5).sqrt()).abs() < TOL);
        tlent_generator_free(h);
    }
}

#[test]
fn braid_entries_and_relation_residual_are_exposed() {
    let h = two_dim_handle(2.0);
    unsafe {
        let mut r = f64::INFINITY;
        assert_eq!(
            tlent_generator_braid_residual(h, 0.4, 1.1, &mut r),
            TlentStatus::Ok
        );
        assert!(r < TOL, "braid residual {r}");

        let half_pi = std::f64::consts::FRAC_PI_2;
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(
            tlent_generator_braid_entry(h, half_pi, 0, 0, &mut re, &mut im),
            TlentStatus::Ok
        );
        assert!(re.abs() < TOL);
        assert!((im - 1.0).abs() < TOL);
        assert_eq!(
            tlent_generator_braid_entry(h, half_pi, 1, 1, &mut re, &mut im),
            TlentStatus::Ok
        );
        assert!(re.abs() < TOL);
        assert!((im + 0.6).abs() < TOL);

        tlent_generator_free(h);
    }
}

#[test]
fn invalid_arguments_map_to_their_status_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            tlent_generator_two_dim(0.0, 0.0, 0.0, &mut h),
            TlentStatus::InvalidArgument
        );
        assert!(h.is_null());
        assert_eq!(
            tlent_generator_max_entangled(1, ptr::null(), &mut h),
            TlentStatus::InvalidArgument
        );
        assert_eq!(
            tlent_generator_max_entangled(TLENT_MAX_SITE_DIM + 1, ptr::null(), &mut h),
            TlentStatus::InvalidArgument
        );
        assert_eq!(
            tlent_generator_three_dim(5, 1.0, ptr::null(), &mut h),
            TlentStatus::InvalidArgument
        );
        assert_eq!(
            tlent_generator_two_dim(1.0, 0.0, 0.0, ptr::null_mut()),
            TlentStatus::NullPointer
        );

        let mut n = 0usize;
        assert_eq!(
            tlent_generator_site_dim(ptr::null(), &mut n),
            TlentStatus::NullPointer
        );

        let h = two_dim_handle(2.0);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(
            tlent_generator_entry(h, 4, 0, &mut re, &mut im),
            TlentStatus::InvalidArgument
        );
        assert_eq!(
            tlent_generator_loop_parameter(h, ptr::null_mut()),
            TlentStatus::NullPointer
        );
        tlent_generator_free(h);
        tlent_generator_free(ptr::null_mut());

        let mut v = 0.0;
        assert_eq!(tlent_c_max(1.5, &mut v), TlentStatus::InvalidArgument);
        assert_eq!(
            tlent_esd_concurrence(1.9, 0.0, &mut v),
            TlentStatus::InvalidArgument
        );
        assert_eq!(
            tlent_thermal_concurrence(0.0, 1.0, 1.0, 3.0, 0.0, -1.0, &mut v),
            TlentStatus::InvalidArgument
        );
    }
}

#[test]
fn scalar_functions_agree_with_the_library() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(tlent_c_max(SQRT8, &mut v), TlentStatus::Ok);
        assert!((v - 1.0).abs() < TOL);

        assert_eq!(tlent_critical_temperature(1.0, 1.0, SQRT8, &mut v), TlentStatus::Ok);
        assert!((v - 1.5009).abs() < 1e-3, "tc {v}");
        assert_eq!(tlent_critical_temperature(1.0, 1.0, 2.0, &mut v), TlentStatus::Ok);
        assert_eq!(v, 0.0);

        let params =
            tlent::spin_model::ModelParams::from_field_coupling(0.5, 1.0, 1.0, 3.0, 0.7).unwrap();
        let want = tlent::thermal::thermal_concurrence(&params, 0.8).unwrap().value;
        assert_eq!(
            tlent_thermal_concurrence(0.5, 1.0, 1.0, 3.0, 0.7, 0.8, &mut v),
            TlentStatus::Ok
        );
        assert!((v - want).abs() < TOL);

        assert_eq!(
            tlent_zero_t_limit(0.5, 1.0, 1.0, 3.0, 0.7, &mut v),
            TlentStatus::Ok
        );
        assert!((v - params.kappa()).abs() < TOL);

        let want = tlent::dynamics::esd_closed_form(3.0, 2.0).unwrap().value;
        assert_eq!(
            tlent_evolved_concurrence(
                0.9,
                0.5,
                0.3,
                3.0,
                std::f64::consts::PI,
                0.5,
                std::f64::consts::FRAC_PI_4,
                2.0,
                &mut v
            ),
            TlentStatus::Ok
        );
        assert!((v - want).abs() < 1e-10);
    }
}

#[test]
fn sudden_death_windows_fill_a_sized_buffer() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(tlent_esd_concurrence(4.0, 0.0, &mut v), TlentStatus::Ok);
        assert!((v - 0.25).abs() < TOL);
        assert_eq!(tlent_esd_concurrence(SQRT8, 1.234, &mut v), TlentStatus::Ok);
        assert!((v - 0.25).abs() < TOL);

        let two_pi = std::f64::consts::TAU;
        let mut count = usize::MAX;
        assert_eq!(
            tlent_esd_windows(2.1, two_pi, ptr::null_mut(), 0, &mut count),
            TlentStatus::BufferTooSmall
        );
        assert_eq!(count, 1);

        let mut buf = [0.0f64; 2];
        assert_eq!(
            tlent_esd_windows(2.1, two_pi, buf.as_mut_ptr(), 1, &mut count),
            TlentStatus::Ok
        );
        assert_eq!(count, 1);
        assert!((buf[0] - 2.553).abs() < 5e-3, "death {}", buf[0]);
        assert!((buf[1] - 3.730).abs() < 5e-3, "revival {}", buf[1]);

        assert_eq!(
            tlent_esd_windows(4.0, two_pi, ptr::null_mut(), 0, &mut count),
            TlentStatus::Ok
        );
        assert_eq!(count, 0, "a tangency must not open a window");
    }
}

#[test]
fn status_messages_and_version_are_static_strings() {
    for status in [
        TlentStatus::Ok,
        TlentStatus::NullPointer,
        TlentStatus::InvalidArgument,
        TlentStatus::NumericFailure,
        TlentStatus::BufferTooSmall,
    ] {
        let msg = tlent_status_message(status);
        assert!(!msg.is_null());
        let text = unsafe { CStr::from_ptr(msg) }.to_str().unwrap();
        assert!(!text.is_empty());
    }
    let version = unsafe { CStr::from_ptr(tlent_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}
