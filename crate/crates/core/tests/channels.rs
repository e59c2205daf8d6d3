// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{random_bloch, random_state, rng};
use symdepol::channel::{
    choi_matrix, compose, first_order_kraus, verify_channel, KrausChannel, LindbladGenerator,
};
use symdepol::liealg::{collective_spin, direct_sum, spin_irrep, Representation};
use symdepol::matkernel::{eig_hermitian, pauli_x, pauli_z};
use symdepol::zoo::{
    bloch_of, damping_channel, dephasing_channel, depolarize_qubit, depolarizing_qubit_cpm,
    depolarizing_qubit_lindblad, flip_channel, pauli_product_channel, state_of,
    symmetric_depolarizer, Axis, BlochVector,
};
use symdepol::{ComplexMatrix, C64};

fn reps() -> Vec<Representation> {
    vec![
        spin_irrep(1),
        spin_irrep(2),
        spin_irrep(3),
        collective_spin(2).unwrap(),
        direct_sum(&[spin_irrep(2), spin_irrep(0)]).unwrap(),
    ]
}

fn library_generators() -> Vec<LindbladGenerator> {
    let mut out = vec![depolarizing_qubit_lindblad(0.7).unwrap()];
    for r in reps() {
        out.push(dephasing_channel(&r, &[0.8]).unwrap());
        out.push(damping_channel(&r, &[1.3]).unwrap());
        out.push(symmetric_depolarizer(&r, &[0.6]).unwrap());
    }
    out
}

#[test]
fn depolarizer_kraus_matches_closed_form_and_contracts_bloch() {
    let mut r = rng(21);
    for p in [0.0, 0.1, 0.5, 0.75, 1.0] {
        let ch = depolarizing_qubit_cpm(p).unwrap();
        for _ in 0..5 {
            let s = random_bloch(&mut r);
            let rho = state_of(&BlochVector::new(s).unwrap());
            let out = ch.apply(&rho).unwrap();
            let closed = depolarize_qubit(p, &rho).unwrap();
            assert!(out.frobenius_distance(&closed).unwrap() < 1e-14);
            let shrink = 1.0 - 4.0 * p / 3.0;
            let got = bloch_of(&out).unwrap().components();
            for k in 0..3 {
                assert!((got[k] - shrink * s[k]).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn pauli_product_acts_qubitwise_on_products() {
    let mut r = rng(22);
    for n in 1..=3 {
        let p = 0.3;
        let ch = pauli_product_channel(n, p).unwrap();
        let singles: Vec<_> = (0..n).map(|_| random_state(&mut r, 2)).collect();
        let refs: Vec<_> = singles.iter().collect();
        let input = common::kron_all(&refs);
        let mapped: Vec<_> = singles.iter().map(|s| depolarize_qubit(p, s).unwrap()).collect();
        let mrefs: Vec<_> = mapped.iter().collect();
        let want = common::kron_all(&mrefs);
        assert!(ch.apply(&input).unwrap().frobenius_distance(&want).unwrap() < 1e-13);
    }
}

#[test]
fn composed_flips_multiply_contractions() {
    let (p, q) = (0.2, 0.35);
    let both = compose(&flip_channel(Axis::X, p).unwrap(), &flip_channel(Axis::X, q).unwrap()).unwrap();
    let single = flip_channel(Axis::X, 1.0 - (1.0 - p) * (1.0 - q)).unwrap();
    let mut r = rng(23);
    for _ in 0..5 {
        let rho = random_state(&mut r, 2);
        let a = both.apply(&rho).unwrap();
        let b = single.apply(&rho).unwrap();
        assert!(a.frobenius_distance(&b).unwrap() < 1e-14);
    }
}

#[test]
fn compose_applies_first_argument_first() {
    // amplitude damping then a bit flip differs from the reverse order
    let damp = KrausChannel::new(vec![
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.6]]).unwrap(),
        ComplexMatrix::from_real_rows(&[&[0.0, 0.8], &[0.0, 0.0]]).unwrap(),
    ])
    .unwrap();
    let flip = KrausChannel::new(vec![pauli_x()]).unwrap();
    let rho = ComplexMatrix::unit(2, 1, 1);
    let seq = compose(&damp, &flip).unwrap().apply(&rho).unwrap();
    let want = flip.apply(&damp.apply(&rho).unwrap()).unwrap();
    assert!(seq.frobenius_distance(&want).unwrap() < 1e-15);
}

#[test]
fn choi_of_identity_is_maximally_entangled() {
    for d in 1..=4 {
        let c = choi_matrix(&KrausChannel::identity(d));
        let e = eig_hermitian(&c).unwrap();
        assert!((e.eigenvalues[d * d - 1] - d as f64).abs() < 1e-12);
        assert!(e.eigenvalues[..d * d - 1].iter().all(|x| x.abs() < 1e-12));
    }
}

#[test]
fn verify_flags_non_trace_preserving_sets() {
    let shrink = KrausChannel::from_operators(vec![ComplexMatrix::identity(2).scale_real(0.9)]).unwrap();
    let rep = verify_channel(&shrink).unwrap();
    assert!(!rep.pass);
    assert!((rep.tp_residual - 0.19).abs() < 1e-12);
    assert!(KrausChannel::new(vec![ComplexMatrix::identity(2).scale_real(0.9)]).is_err());
}

#[test]
fn superoperator_matches_kraus_action() {
    let mut r = rng(24);
    let ch = pauli_product_channel(2, 0.2).unwrap();
    let s = ch.superoperator();
    for _ in 0..3 {
        let rho = random_state(&mut r, 4);
        let a = s.apply(&rho).unwrap();
        assert!(a.frobenius_distance(&ch.apply(&rho).unwrap()).unwrap() < 1e-13);
    }
}

#[test]
fn liouvillian_matches_lindblad_action() {
    let mut r = rng(25);
    for g in library_generators() {
        let s = g.liouvillian();
        assert!(s.trace_defect() < 1e-12, "dim {}", g.dim());
        let x = common::random_matrix(&mut r, g.dim(), g.dim());
        let a = g.action(&x).unwrap();
        let b = s.apply(&x).unwrap();
        assert!(a.frobenius_distance(&b).unwrap() <= 1e-12 * a.frobenius_norm().max(1.0));
        // Hermiticity preserving
        let rho = random_state(&mut r, g.dim());
        assert!(g.action(&rho).unwrap().hermitian_defect() < 1e-12);
    }
}

#[test]
fn first_order_kraus_defect_is_second_order() {
    for g in library_generators() {
        let big = first_order_kraus(&g, 1e-2).unwrap().completeness_residual().unwrap();
        let small = first_order_kraus(&g, 1e-3).unwrap().completeness_residual().unwrap();
        let ratio = big / small;
        assert!((95.0..105.0).contains(&ratio), "dim {} ratio {ratio}", g.dim());
    }
}

#[test]
fn first_order_kraus_is_completely_positive() {
    for g in library_generators() {
        let rep = verify_channel(&first_order_kraus(&g, 1e-3).unwrap()).unwrap();
        assert!(rep.choi_min_eig >= -1e-12);
    }
}

#[test]
fn hamiltonian_part_rotates_bloch_vector() {
    // H = (ω/2)σ_z precesses s_x into s_y
    let w = 0.9;
    let g = LindbladGenerator::new(2, pauli_z().scale_real(w / 2.0), vec![]).unwrap();
    let rho = state_of(&BlochVector::new([1.0, 0.0, 0.0]).unwrap());
    let drho = g.action(&rho).unwrap();
    // ṡ = ω ẑ × s → (0, ω, 0)
    let ds = [pauli_x(), symdepol::matkernel::pauli_y(), pauli_z()]
        .map(|p| (&drho * &p).trace().unwrap().re);
    assert!((ds[0]).abs() < 1e-15 && (ds[1] - w).abs() < 1e-15 && ds[2].abs() < 1e-15);
}

#[test]
fn json_round_trips() {
    let ch = depolarizing_qubit_cpm(0.3).unwrap();
    let text = serde_json::to_string(&ch).unwrap();
    let back: KrausChannel = serde_json::from_str(&text).unwrap();
    assert_eq!(back, ch);
    for g in library_generators() {
        let text = serde_json::to_string(&g).unwrap();
        let back: LindbladGenerator = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
    let r = collective_spin(2).unwrap();
    let back: Representation = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back.blocks().len(), 2);
    // a negative rate is rejected at parse time
    let bad = r#"{"dim":2,"jumps":[{"rate":-1.0,"op":[[[0,0],[1,0]],[[0,0],[0,0]]]}]}"#;
    assert!(serde_json::from_str::<LindbladGenerator>(bad).is_err());
    let wrong_dim = r#"{"dim":3,"kraus_ops":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#;
    assert!(serde_json::from_str::<KrausChannel>(wrong_dim).is_err());
}

#[test]
fn complex_entries_survive_the_wire_format() {
    let m = ComplexMatrix::from_rows(&[vec![C64::new(0.5, -0.25)], vec![C64::new(-1e-300, 3.0)]]).unwrap();
    let back: ComplexMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
    assert_eq!(back, m);
}
