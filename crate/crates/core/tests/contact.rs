use hyperstress::contact::{
    bulk_power, contact_force, contact_power, edge_force, normal_tangential_split, normal_traction,
    quasi_balance_constant, surface_divergence, StressState,
};
use hyperstress::experiments::random::{
    random_convex_polyhedron, random_dihedral, random_field, random_state, random_tensor3, random_unit, random_vec,
};
use hyperstress::geometry::{build_box, build_graph_patch_box};
use hyperstress::tensor::{grad, Poly, PolyField, Tensor2, Tensor3, Vec3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tensor skew in its last two slots.
fn skew_last_two(seed: u64) -> Tensor3 {
    let c = random_tensor3(&mut rng(seed));
    let mut out = Tensor3::ZERO;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out.set(i, j, k, c.get(i, j, k) - c.get(i, k, j));
            }
        }
    }
    out
}

#[test]
fn spherical_hyperstress_has_constant_double_traction_and_no_edge_force() {
    let mut r = rng(1);
    let g = random_vec(&mut r);
    let s = StressState::constant(Tensor2::ZERO, Tensor3::spherical(g));
    for _ in 0..50 {
        let n = random_unit(&mut r);
        assert!((normal_traction(&s, Vec3::ZERO, n).unwrap() - g).max_abs() < 1e-15);
        let d = random_dihedral(&mut r, 0.05);
        assert!(edge_force(&s, Vec3::ZERO, &d).max_abs() < 1e-14);
    }
}

#[test]
fn surface_divergence_examples() {
    let cube = build_box(Vec3::ZERO, Vec3::new(1.0, 1.0, 1.0)).unwrap();
    let top = cube
        .faces
        .iter()
        .position(|f| f.plane_normal().unwrap() == Vec3::basis(2))
        .unwrap();
    let mut w0 = Tensor2::ZERO;
    w0.0[0][1] = 3.0;
    let constant = PolyField::<Tensor2>::constant(w0);
    let mut linear = PolyField::<Tensor2>::zero();
    *linear.entry_mut(0, 0) = Poly::var(0);
    let a = cube
        .integrate_face(top, 0, |p| surface_divergence(&cube.faces[top], &constant, p).unwrap())
        .unwrap();
    assert_eq!(a, Vec3::ZERO);
    let b = cube
        .integrate_face(top, 0, |p| surface_divergence(&cube.faces[top], &linear, p).unwrap())
        .unwrap();
    assert!((b - Vec3::basis(0)).max_abs() < 1e-15);
}

#[test]
fn power_matches_bulk_and_quasi_balance_bound() {
    let mut r = rng(2);
    let boxes = [
        build_box(Vec3::new(-0.3, 0.1, 0.0), Vec3::new(0.5, 0.4, 0.9)).unwrap(),
        random_convex_polyhedron(&mut r),
        build_graph_patch_box(
            &Poly::from_terms([([0, 0, 0], 1.0), ([1, 1, 0], 0.2)]),
            [0.0, 0.0],
            [1.0, 0.5],
            0.0,
        )
        .unwrap(),
    ];
    for dom in &boxes {
        let s = random_state(&mut r, 2, 2);
        let u: PolyField<Vec3> = random_field(&mut r, 2);
        let p = contact_power(&s, dom, &u).unwrap();
        let b = bulk_power(&s, dom, &u).unwrap();
        let scale = p.surface_f.abs() + p.edge.abs() + p.normal_g.abs();
        assert!((p.total - b).abs() <= 1e-12 * scale.max(1.0), "{} vs {b}", p.total);
        let k = quasi_balance_constant(&s, dom, &u);
        assert!(p.total.abs() <= k * dom.volume().unwrap());
    }
}

#[test]
fn balanced_constant_state_carries_no_resultant() {
    let mut r = rng(3);
    let dom = random_convex_polyhedron(&mut r);
    let s = StressState::constant(Tensor2::ZERO, random_tensor3(&mut r));
    let f = contact_force(&s, &dom).unwrap();
    assert!(f.max_abs() < 1e-13, "{f:?}");
}

#[test]
fn split_adds_up_to_full_contraction() {
    let mut r = rng(4);
    let s = random_state(&mut r, 1, 2);
    let u: PolyField<Vec3> = random_field(&mut r, 2);
    for _ in 0..20 {
        let x = random_vec(&mut r);
        let n = random_unit(&mut r);
        let (a, b) = normal_tangential_split(&s, &u, x, n).unwrap();
        let full = grad(&u).eval(x).ddot(&s.c_at(x).dot(n));
        assert!((a + b - full).abs() <= 1e-13 * full.abs().max(1.0));
    }
}

#[test]
fn non_unit_normal_is_rejected() {
    let s = StressState::constant(Tensor2::ZERO, Tensor3::ZERO);
    assert!(normal_traction(&s, Vec3::ZERO, Vec3::new(1.0, 1.0, 0.0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn double_traction_is_even_in_n(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_state(&mut r, 0, 2);
        let x = random_vec(&mut r);
        let n = random_unit(&mut r);
        let a = normal_traction(&s, x, n).unwrap();
        let b = normal_traction(&s, x, -n).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn edge_force_ignores_face_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_state(&mut r, 0, 2);
        let x = random_vec(&mut r);
        let d = random_dihedral(&mut r, 0.05);
        let a = edge_force(&s, x, &d);
        let b = edge_force(&s, x, &d.swapped());
        prop_assert!((a - b).max_abs() <= 1e-14 * a.max_abs().max(1.0));
    }

    #[test]
    fn skew_gauge_leaves_densities_unchanged(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_tensor3(&mut r);
        let s = StressState::constant(Tensor2::ZERO, c);
        let g = StressState::constant(Tensor2::ZERO, c + skew_last_two(seed ^ 0x5a5a));
        let n = random_unit(&mut r);
        let d = random_dihedral(&mut r, 0.05);
        let dg = (normal_traction(&s, Vec3::ZERO, n).unwrap() - normal_traction(&g, Vec3::ZERO, n).unwrap()).max_abs();
        let df = (edge_force(&s, Vec3::ZERO, &d) - edge_force(&g, Vec3::ZERO, &d)).max_abs();
        prop_assert!(dg <= 1e-14);
        prop_assert!(df <= 1e-14);
    }
}
