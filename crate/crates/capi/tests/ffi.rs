//! Exercise the C entry points exactly as a foreign caller would: through
//! raw pointers and status codes.

use enstrolab_capi::*;

#[test]
fn bessel_values() {
    assert!((enstrolab_bessel_j0(0.0) - 1.0).abs() < 1e-15);
    assert!((enstrolab_bessel_j0(2.404825557695773)).abs() < 1e-12);
    assert!((enstrolab_bessel_j1(1.0) - 0.440050585744934).abs() < 1e-12);
}

#[test]
fn scalar_entry_points_and_error_paths() {
    let mut out = 0.0f64;
    unsafe {
        assert_eq!(
            enstrolab_circle_enstrophy(100.0, &mut out),
            EnstrolabStatus::Ok
        );
        assert!((out - std::f64::consts::PI / 200.0).abs() / out < 0.05);
        assert_eq!(
            enstrolab_circle_enstrophy(-1.0, &mut out),
            EnstrolabStatus::InvalidArgument
        );
        assert_eq!(
            enstrolab_circle_enstrophy(1.0, std::ptr::null_mut()),
            EnstrolabStatus::NullPointer
        );

        assert_eq!(
            enstrolab_logdatum_enstrophy(1e-4, 1.0, &mut out),
            EnstrolabStatus::Ok
        );
        assert!(out > 0.0);

        assert_eq!(
            enstrolab_rescaled_bump_enstrophy(1e-4, 0.5, &mut out),
            EnstrolabStatus::Ok
        );
        let scaled = out * 1e-4 * (1e-4f64).ln().abs();
        assert_eq!(
            enstrolab_rescaled_bump_enstrophy(1e-6, 0.5, &mut out),
            EnstrolabStatus::Ok
        );
        let scaled2 = out * 1e-6 * (1e-6f64).ln().abs();
        assert!((scaled - scaled2).abs() / scaled < 1e-12);

        // budget anchor: ν = 1e-8, δ = 0.1, T = 1 → 0.5365
        assert_eq!(
            enstrolab_dissipation_budget(
                EnstrolabBudgetKind::Delort,
                0.0,
                1e-8,
                0.1,
                1.0,
                &mut out
            ),
            EnstrolabStatus::Ok
        );
        assert!((out - 0.5365).abs() < 1e-4);
        // νT ≥ 1 rejected
        assert_eq!(
            enstrolab_dissipation_budget(
                EnstrolabBudgetKind::Algebraic,
                1.0,
                2.0,
                0.1,
                1.0,
                &mut out
            ),
            EnstrolabStatus::InvalidArgument
        );
    }
}

#[test]
fn cantor_entry_points() {
    let mut norms = EnstrolabCantorNorms {
        l1: 0.0,
        l2_sq_log: 0.0,
        h1_sq_log: 0.0,
        delta_log: 0.0,
        saturation: 0.0,
    };
    unsafe {
        assert_eq!(
            enstrolab_cantor_norms(0, 1.0, 3, &mut norms),
            EnstrolabStatus::Ok
        );
        assert!((norms.l1 - 7.330382858376184).abs() < 1e-12);
        assert!((norms.saturation - 4.5024759).abs() < 1e-6);
        // log-sparse stays finite in log-domain even when δ underflows
        assert_eq!(
            enstrolab_cantor_norms(1, 0.0, 4, &mut norms),
            EnstrolabStatus::Ok
        );
        assert!(norms.l2_sq_log.is_finite() && norms.delta_log == -65536.0);
        assert_eq!(
            enstrolab_cantor_norms(7, 0.0, 1, &mut norms),
            EnstrolabStatus::InvalidArgument
        );

        let mut mass = 0.0f64;
        assert_eq!(
            enstrolab_cantor_ball_mass(0, 1.0, 3, 0.49, &mut mass),
            EnstrolabStatus::Ok
        );
        assert!((mass - norms.l1).abs() < 1e-9);
        assert_eq!(
            enstrolab_cantor_ball_mass(0, 1.0, 3, 0.6, &mut mass),
            EnstrolabStatus::InvalidArgument
        );
    }
}

#[test]
fn solver_handle_lifecycle() {
    unsafe {
        let h = enstrolab_solver_new_taylor_green(64, 0.01);
        assert!(!h.is_null());
        let mut d = EnstrolabDiagnostics {
            time: 0.0,
            energy: 0.0,
            enstrophy: 0.0,
            palinstrophy: 0.0,
            h_minus_1: 0.0,
            sup_norm: 0.0,
        };
        assert_eq!(enstrolab_solver_diagnostics(h, &mut d), EnstrolabStatus::Ok);
        let z0 = d.enstrophy;
        assert!((z0 - 0.25).abs() < 1e-12);

        // a huge explicit dt violates the CFL policy
        let mut taken = 0.0f64;
        assert_eq!(
            enstrolab_solver_step(h, 100.0, &mut taken),
            EnstrolabStatus::CflViolation
        );
        assert_eq!(enstrolab_solver_step(h, -1.0, &mut taken), EnstrolabStatus::Ok);
        assert!(taken > 0.0);

        assert_eq!(enstrolab_solver_advance(h, 1.0), EnstrolabStatus::Ok);
        assert_eq!(enstrolab_solver_diagnostics(h, &mut d), EnstrolabStatus::Ok);
        let exact = z0 * (-4.0 * 0.01 * 1.0f64).exp();
        assert!((d.enstrophy - exact).abs() / exact < 1e-8);

        let mut buf = vec![0.0f64; 64 * 64];
        assert_eq!(
            enstrolab_solver_values(h, buf.as_mut_ptr(), buf.len()),
            EnstrolabStatus::Ok
        );
        assert!(buf.iter().any(|v| v.abs() > 1e-3));
        assert_eq!(
            enstrolab_solver_values(h, buf.as_mut_ptr(), 7),
            EnstrolabStatus::InvalidArgument
        );
        enstrolab_solver_free(h);

        // round-trip through raw values
        let field: Vec<f64> = (0..64 * 64)
            .map(|i| ((i % 64) as f64 * std::f64::consts::PI * 2.0 / 64.0).sin())
            .collect();
        let h2 = enstrolab_solver_new_from_values(64, 0.05, field.as_ptr());
        assert!(!h2.is_null());
        enstrolab_solver_free(h2);
        assert!(enstrolab_solver_new_from_values(64, 0.05, std::ptr::null()).is_null());
    }
}

#[test]
fn envelope_handle_roundtrip() {
    unsafe {
        for kind in 0..3 {
            let h = enstrolab_envelope_new(kind, 1.0, 1.0);
            assert!(!h.is_null(), "kind {kind}");
            let mut y = 0.0f64;
            let mut back = 0.0f64;
            for w in [0.5f64, 30.0, 4e4] {
                assert_eq!(enstrolab_envelope_f(h, w, &mut y), EnstrolabStatus::Ok);
                assert_eq!(
                    enstrolab_envelope_f_inv(h, y, &mut back),
                    EnstrolabStatus::Ok
                );
                assert!((back - w).abs() / w < 1e-10, "kind {kind} w {w}");
            }
            assert_eq!(
                enstrolab_envelope_f(h, -3.0, &mut y),
                EnstrolabStatus::InvalidArgument
            );
            enstrolab_envelope_free(h);
        }
        assert!(enstrolab_envelope_new(9, 1.0, 1.0).is_null());
        assert!(enstrolab_envelope_new(1, 5.0, 1.0).is_null()); // α ∉ (0,2)
    }
}

#[test]
fn header_is_generated() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("enstrolab.h");
    let text = std::fs::read_to_string(header).expect("cbindgen header exists");
    for symbol in [
        "enstrolab_bessel_j0",
        "enstrolab_circle_enstrophy",
        "enstrolab_solver_new_taylor_green",
        "enstrolab_solver_free",
        "enstrolab_envelope_f_inv",
        "EnstrolabStatus",
        "EnstrolabDiagnostics",
    ] {
        assert!(text.contains(symbol), "missing {symbol} in header");
    }
}
