// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use serde_json::Value;
use symdepol_ffi::*;

fn last_error() -> String {
    let p = sd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    sd_string_free(p);
    s
}

unsafe fn matrix(rows: usize, cols: usize, re: &[f64], im: &[f64]) -> *mut SdMatrix {
    let mut m = ptr::null_mut();
    let im_ptr = if im.is_empty() { ptr::null() } else { im.as_ptr() };
    assert_eq!(sd_matrix_new(rows, cols, re.as_ptr(), im_ptr, &mut m), SdStatus::Ok);
    m
}

unsafe fn entry(m: *const SdMatrix, i: usize, j: usize) -> (f64, f64) {
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(sd_matrix_get(m, i, j, &mut re, &mut im), SdStatus::Ok);
    (re, im)
}

#[test]
fn version_matches_the_package() {
    let v = unsafe { CStr::from_ptr(sd_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn matrix_round_trips_through_json() {
    unsafe {
        let m = matrix(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &[0.0, -1.0, 0.0, 0.5, 0.0, 0.0]);
        let (mut r, mut c) = (0, 0);
        assert_eq!(sd_matrix_shape(m, &mut r, &mut c), SdStatus::Ok);
        assert_eq!((r, c), (2, 3));
        assert_eq!(entry(m, 0, 1), (2.0, -1.0));
        assert_eq!(entry(m, 1, 0), (4.0, 0.5));

        let mut text = ptr::null_mut();
        assert_eq!(sd_matrix_to_json(m, &mut text), SdStatus::Ok);
        let json = CString::new(take_string(text)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(sd_matrix_from_json(json.as_ptr(), &mut back), SdStatus::Ok);
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(entry(m, i, j), entry(back, i, j));
            }
        }
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(sd_matrix_get(m, 2, 0, &mut re, &mut im), SdStatus::Argument);
        sd_matrix_free(m);
        sd_matrix_free(back);
    }
}

#[test]
fn bad_inputs_map_to_status_codes() {
    unsafe {
        let mut m = ptr::null_mut();
        let data = [1.0, 2.0];
        assert_eq!(sd_matrix_new(0, 2, data.as_ptr(), ptr::null(), &mut m), SdStatus::Shape);
        assert!(m.is_null());
        assert_eq!(sd_matrix_new(1, 2, ptr::null(), ptr::null(), &mut m), SdStatus::NullPointer);
        assert!(last_error().contains("re"));
        assert_eq!(sd_matrix_new(1, 2, data.as_ptr(), ptr::null(), ptr::null_mut()), SdStatus::NullPointer);

        let broken = CString::new("[[[1,0]").unwrap();
        assert_eq!(sd_matrix_from_json(broken.as_ptr(), &mut m), SdStatus::Parse);
        let not_utf8 = [0xffu8, 0xfe, 0];
        assert_eq!(sd_matrix_from_json(not_utf8.as_ptr().cast(), &mut m), SdStatus::InvalidUtf8);

        let mut g = ptr::null_mut();
        assert_eq!(sd_generator_qubit_depolarizer(-1.0, &mut g), SdStatus::Argument);
        assert!(!last_error().is_empty());

        let mut dim = 0;
        assert_eq!(sd_representation_dim(ptr::null(), &mut dim), SdStatus::NullPointer);

        // freeing null is a no-op
        sd_matrix_free(ptr::null_mut());
        sd_representation_free(ptr::null_mut());
        sd_generator_free(ptr::null_mut());
        sd_channel_free(ptr::null_mut());
        sd_string_free(ptr::null_mut());
    }
}

#[test]
fn error_messages_are_per_thread() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(sd_generator_qubit_depolarizer(-1.0, &mut g), SdStatus::Argument);
    }
    let here = last_error();
    std::thread::spawn(|| assert!(sd_last_error_message().is_null())).join().unwrap();
    assert_eq!(last_error(), here);
}

#[test]
fn representation_blocks() {
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(sd_representation_collective(2, &mut rep), SdStatus::Ok);
        let (mut dim, mut count) = (0, 0);
        assert_eq!(sd_representation_dim(rep, &mut dim), SdStatus::Ok);
        assert_eq!(sd_representation_block_count(rep, &mut count), SdStatus::Ok);
        assert_eq!((dim, count), (4, 2));
        let mut seen = Vec::new();
        for k in 0..count {
            let (mut j, mut c, mut d) = (0.0, 0.0, 0);
            assert_eq!(sd_representation_block(rep, k, &mut j, &mut c, &mut d), SdStatus::Ok);
            assert!((c - j * (j + 1.0)).abs() < 1e-12);
            assert_eq!(d as f64, 2.0 * j + 1.0);
            seen.push(d);
        }
        seen.sort();
        assert_eq!(seen, vec![1, 3]);
        let (mut j, mut c, mut d) = (0.0, 0.0, 0);
        assert_eq!(sd_representation_block(rep, 2, &mut j, &mut c, &mut d), SdStatus::Argument);

        let mut text = ptr::null_mut();
        assert_eq!(sd_representation_to_json(rep, &mut text), SdStatus::Ok);
        let json = CString::new(take_string(text)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(sd_representation_from_json(json.as_ptr(), &mut back), SdStatus::Ok);
        assert_eq!(sd_representation_block_count(back, &mut count), SdStatus::Ok);
        assert_eq!(count, 2);

        let mut spin = ptr::null_mut();
        assert_eq!(sd_representation_spin(100, &mut spin), SdStatus::Argument);
        sd_representation_free(rep);
        sd_representation_free(back);
    }
}

#[test]
fn qubit_depolarizer_shrinks_bloch_vector() {
    // s_z(t) = e^{-Γt} from the pole
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(sd_generator_qubit_depolarizer(1.0, &mut g), SdStatus::Ok);
        let rho = matrix(2, 2, &[1.0, 0.0, 0.0, 0.0], &[]);
        let mut out = ptr::null_mut();
        let t = 2f64.ln();
        assert_eq!(sd_propagate(g, rho, t, &mut out), SdStatus::Ok);
        assert!((entry(out, 0, 0).0 - 0.75).abs() < 1e-13);
        assert!((entry(out, 1, 1).0 - 0.25).abs() < 1e-13);

        let mut bad = ptr::null_mut();
        assert_eq!(sd_propagate(g, rho, -1.0, &mut bad), SdStatus::Argument);
        let not_state = matrix(2, 2, &[2.0, 0.0, 0.0, 0.0], &[]);
        assert_eq!(sd_propagate(g, not_state, 1.0, &mut bad), SdStatus::InvalidState);

        let mut count = 0;
        assert_eq!(sd_generator_fixed_point_count(g, &mut count), SdStatus::Ok);
        assert_eq!(count, 1);
        let mut fin = ptr::null_mut();
        assert_eq!(sd_asymptotic_state(g, rho, 0.0, 1e-10, &mut fin), SdStatus::Ok);
        assert!((entry(fin, 0, 0).0 - 0.5).abs() < 1e-9);

        for p in [rho, not_state, out, fin] {
            sd_matrix_free(p);
        }
        sd_generator_free(g);
    }
}

#[test]
fn symmetric_generators_from_representations() {
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(sd_representation_spin(2, &mut rep), SdStatus::Ok);
        let rate = [0.5];
        let kernels = [
            (SdGeneratorKind::Dephasing, 3),
            (SdGeneratorKind::Damping, 1),
            (SdGeneratorKind::SymmetricDepolarizer, 1),
        ];
        for (kind, want) in kernels {
            let mut g = ptr::null_mut();
            assert_eq!(sd_generator_symmetric(rep, kind, rate.as_ptr(), 1, &mut g), SdStatus::Ok);
            let (mut count, mut dim) = (0, 0);
            assert_eq!(sd_generator_fixed_point_count(g, &mut count), SdStatus::Ok);
            assert_eq!(sd_generator_dim(g, &mut dim), SdStatus::Ok);
            assert_eq!((count, dim), (want, 3), "{kind:?}");

            let mut text = ptr::null_mut();
            assert_eq!(sd_generator_to_json(g, &mut text), SdStatus::Ok);
            let json = CString::new(take_string(text)).unwrap();
            let mut back = ptr::null_mut();
            assert_eq!(sd_generator_from_json(json.as_ptr(), &mut back), SdStatus::Ok);
            sd_generator_free(back);
            sd_generator_free(g);
        }
        let mut g = ptr::null_mut();
        let too_many = [0.5, 0.5];
        assert_ne!(
            sd_generator_symmetric(rep, SdGeneratorKind::Damping, too_many.as_ptr(), 2, &mut g),
            SdStatus::Ok
        );
        sd_representation_free(rep);
    }
}

#[test]
fn channels_verify_and_apply() {
    unsafe {
        let mut ch = ptr::null_mut();
        assert_eq!(sd_channel_qubit_depolarizer(0.3, &mut ch), SdStatus::Ok);
        let (mut tp, mut eig, mut pass) = (1.0, -1.0, false);
        assert_eq!(sd_channel_verify(ch, 1e-10, &mut tp, &mut eig, &mut pass), SdStatus::Ok);
        assert!(pass && tp < 1e-12 && eig > 0.0);
        assert_eq!(sd_channel_verify(ch, 0.0, &mut tp, &mut eig, &mut pass), SdStatus::Argument);

        // (1-p)ρ + p/3 Σσρσ maps |0⟩⟨0| to diag(1 - 2p/3, 2p/3)
        let rho = matrix(2, 2, &[1.0, 0.0, 0.0, 0.0], &[]);
        let mut out = ptr::null_mut();
        assert_eq!(sd_channel_apply(ch, rho, &mut out), SdStatus::Ok);
        assert!((entry(out, 1, 1).0 - 0.2).abs() < 1e-15);
        sd_matrix_free(out);

        let wide = matrix(4, 4, &[0.25; 16], &[]);
        assert_eq!(sd_channel_apply(ch, wide, &mut out), SdStatus::Shape);
        sd_matrix_free(wide);

        let mut text = ptr::null_mut();
        assert_eq!(sd_channel_to_json(ch, &mut text), SdStatus::Ok);
        let doc: Value = serde_json::from_str(&take_string(text)).unwrap();
        assert_eq!(doc["kraus_ops"].as_array().unwrap().len(), 4);

        let leaky = CString::new(r#"{"dim":1,"kraus_ops":[[[[0.5,0.0]]]]}"#).unwrap();
        let mut bad = ptr::null_mut();
        assert_eq!(sd_channel_from_json(leaky.as_ptr(), &mut bad), SdStatus::Ok);
        assert_eq!(sd_channel_verify(bad, 1e-10, &mut tp, &mut eig, &mut pass), SdStatus::Ok);
        assert!(!pass && (tp - 0.75).abs() < 1e-15);

        let mut prod = ptr::null_mut();
        assert_eq!(sd_channel_pauli_product(2, 0.1, &mut prod), SdStatus::Ok);
        assert_eq!(sd_channel_verify(prod, 1e-10, &mut tp, &mut eig, &mut pass), SdStatus::Ok);
        assert!(pass);

        let mut g = ptr::null_mut();
        assert_eq!(sd_generator_qubit_depolarizer(1.0, &mut g), SdStatus::Ok);
        let mut step = ptr::null_mut();
        assert_eq!(sd_channel_first_order(g, 1e-3, &mut step), SdStatus::Ok);
        assert_eq!(sd_channel_verify(step, 1e-5, &mut tp, &mut eig, &mut pass), SdStatus::Ok);
        assert!(pass && tp > 0.0);

        sd_matrix_free(rho);
        for c in [ch, bad, prod, step] {
            sd_channel_free(c);
        }
        sd_generator_free(g);
    }
}

#[test]
fn scenario_runs_from_config_text() {
    let cfg = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/configs/bloch_shrink.json"),
    )
    .unwrap();
    let cfg = CString::new(cfg).unwrap();
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(sd_scenario_run(cfg.as_ptr(), &mut out), SdStatus::Ok);
        let report: Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(report["scenario"], "bloch_shrink");
        assert_eq!(report["pass"], true);

        let bad = CString::new(r#"{"version": 2}"#).unwrap();
        assert_eq!(sd_scenario_run(bad.as_ptr(), &mut out), SdStatus::Parse);
    }
}

#[test]
fn header_declares_every_entry_point_and_compiles() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/symdepol.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exported: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() > 20);
    for name in exported {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }

    let Ok(probe) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler, skipping syntax check");
        return;
    };
    if !probe.status.success() {
        return;
    }
    for lang in ["c", "c++"] {
        let out = Command::new("cc")
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(dir.join("include/symdepol.h"))
            .output()
            .unwrap();
        assert!(out.status.success(), "{lang}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
