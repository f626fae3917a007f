use hyperstress::contact::{edge_force, normal_traction, StressState};
use hyperstress::experiments::random::{random_dihedral, random_tensor3, random_unit, random_vec};
use hyperstress::reconstruction::{build_c_left, build_c_right, g_from_probes, probe, probe_in_basis};
use hyperstress::tensor::{frame_from_normal, right_symmetrize, Tensor2, Tensor3, Vec3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn constant(c: Tensor3) -> StressState {
    StressState::constant(Tensor2::ZERO, c)
}

#[test]
fn right_reconstruction_round_trips_symmetric_part() {
    let mut r = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let c = random_tensor3(&mut r);
        let p = probe(&constant(c), Vec3::ZERO);
        let back = build_c_right(&p);
        assert!((back - right_symmetrize(&c)).max_abs() < 1e-14);
        assert!(back.right_asymmetry() < 1e-15);
    }
}

#[test]
fn left_reconstruction_is_left_symmetric() {
    let mut r = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let p = probe(&constant(random_tensor3(&mut r)), Vec3::ZERO);
        assert!(build_c_left(&p).left_asymmetry() < 1e-14);
    }
}

#[test]
fn left_and_right_agree_on_every_dihedron() {
    let mut r = ChaCha8Rng::seed_from_u64(23);
    let p = probe(&constant(random_tensor3(&mut r)), Vec3::ZERO);
    let right = constant(build_c_right(&p));
    let left = constant(build_c_left(&p));
    for _ in 0..50 {
        let d = random_dihedral(&mut r, 0.05);
        let a = edge_force(&right, Vec3::ZERO, &d);
        let b = edge_force(&left, Vec3::ZERO, &d);
        assert!((a - b).max_abs() < 1e-13, "{a:?} vs {b:?}");
        let n = random_unit(&mut r);
        let ga = normal_traction(&right, Vec3::ZERO, n).unwrap();
        let gb = normal_traction(&left, Vec3::ZERO, n).unwrap();
        assert!((ga - gb).max_abs() < 1e-13);
    }
}

#[test]
fn probes_at_a_point_of_a_polynomial_state() {
    let mut r = ChaCha8Rng::seed_from_u64(24);
    let s = hyperstress::experiments::random::random_state(&mut r, 0, 2);
    let x0 = random_vec(&mut r);
    let p = probe(&s, x0);
    let expected = right_symmetrize(&s.c_at(x0));
    assert!((build_c_right(&p) - expected).max_abs() < 1e-13);
}

#[test]
fn spherical_probes_do_not_depend_on_the_basis() {
    let mut r = ChaCha8Rng::seed_from_u64(25);
    let g = random_vec(&mut r);
    let s = constant(Tensor3::spherical(g));
    let n = random_unit(&mut r);
    for _ in 0..10 {
        let basis = frame_from_normal(random_unit(&mut r)).unwrap();
        let p = probe_in_basis(&s, Vec3::ZERO, basis).unwrap();
        assert!((g_from_probes(&p, n).unwrap() - g).max_abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn rotated_basis_probes_recover_double_traction(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let c = random_tensor3(&mut r);
        let basis = frame_from_normal(random_unit(&mut r)).unwrap();
        let s = constant(c);
        let p = probe_in_basis(&s, Vec3::ZERO, basis).unwrap();
        let n = random_unit(&mut r);
        let g = g_from_probes(&p, n).unwrap();
        let direct = normal_traction(&s, Vec3::ZERO, n).unwrap();
        prop_assert!((g - direct).max_abs() <= 1e-13);
        prop_assert!((build_c_right(&p) - right_symmetrize(&c)).max_abs() <= 1e-13);
    }
}
