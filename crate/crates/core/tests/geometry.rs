use hyperstress::contact::surface_divergence;
use hyperstress::experiments::random::{random_convex_polyhedron, random_dihedral, random_field, random_unit};
use hyperstress::geometry::quadrature::{integrate_segment, integrate_unit_square};
use hyperstress::geometry::{
    build_box, build_cauchy_tetrahedron, build_graph_patch_box, build_grooved_slab, build_wedge, make_dihedral,
    AdmissibleDomain, DihedralShape, FaceKind, ParametricPatch, SHAPE_MATCH_TOL,
};
use hyperstress::tensor::{div_vec, projector, Poly, PolyField, Tensor2, Vec3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

#[test]
fn divergence_theorem_on_random_polyhedra() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..8 {
        let dom = random_convex_polyhedron(&mut rng);
        let f: PolyField<Vec3> = random_field(&mut rng, 3);
        let lhs = dom.integrate_poly(div_vec(&f).component(0)).unwrap();
        let rhs = dom.integrate_boundary(3, |p| f.eval(p.x).dot(p.normal)).unwrap();
        assert!(
            (lhs - rhs).abs() <= 1e-12 * (lhs.abs() + rhs.abs() + 1.0),
            "{lhs} vs {rhs}"
        );
    }
}

#[test]
fn divergence_theorem_on_curved_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let phi = Poly::from_terms([([0, 0, 0], 1.0), ([2, 0, 0], 0.2), ([1, 1, 0], -0.1), ([0, 3, 0], 0.05)]);
    let dom = build_graph_patch_box(&phi, [-0.5, -0.4], [0.6, 0.5], 0.0).unwrap();
    dom.validate().unwrap();
    let f: PolyField<Vec3> = random_field(&mut rng, 2);
    let lhs = dom.integrate_poly(div_vec(&f).component(0)).unwrap();
    let rhs = dom.integrate_boundary(2, |p| f.eval(p.x).dot(p.normal)).unwrap();
    assert!(
        (lhs - rhs).abs() <= 1e-12 * (lhs.abs() + rhs.abs() + 1.0),
        "{lhs} vs {rhs}"
    );
}

#[test]
fn surface_divergence_theorem_per_face() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let dom = random_convex_polyhedron(&mut rng);
    for (i, face) in dom.faces.iter().enumerate() {
        let FaceKind::Planar(poly) = &face.kind else {
            unreachable!()
        };
        let pi = projector(poly.normal()).unwrap();
        let m: PolyField<Tensor2> = random_field(&mut rng, 2);
        // W = M Π is tangential in its second slot
        let w = PolyField::<Tensor2>::from_components(
            (0..9)
                .map(|flat| {
                    let (r, c) = (flat / 3, flat % 3);
                    (0..3).fold(Poly::zero(), |acc, k| &acc + &m.entry(r, k).scale(pi.0[k][c]))
                })
                .collect(),
        );
        let lhs = dom
            .integrate_face(i, 2, |p| surface_divergence(face, &w, p).unwrap())
            .unwrap();
        let mut rhs = Vec3::ZERO;
        for (a, b, nu) in poly.boundary() {
            rhs += integrate_segment(a, b, 2, |x| w.eval(x).dot(nu)).unwrap();
        }
        assert!(
            (lhs - rhs).norm() <= 1e-12 * (lhs.norm() + 1.0),
            "face {i}: {lhs:?} vs {rhs:?}"
        );
    }
}

#[test]
fn non_tangential_field_is_rejected() {
    let cube = build_box(Vec3::ZERO, Vec3::new(1.0, 1.0, 1.0)).unwrap();
    let w = PolyField::<Tensor2>::constant(Tensor2::identity());
    let r = cube.integrate_face(0, 0, |p| {
        surface_divergence(&cube.faces[0], &w, p).map(|_| 0.0).unwrap_or(1.0)
    });
    assert_eq!(r.unwrap(), cube.faces[0].area(8).unwrap());
}

fn positive_unit(v: [f64; 3]) -> Vec3 {
    let v = Vec3::new(v[0], v[1], v[2]);
    v * (1.0 / v.norm())
}

#[test]
fn cauchy_tetrahedra_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let u = random_unit(&mut rng);
        let n = positive_unit([u[0].abs() + 0.05, u[1].abs() + 0.05, u[2].abs() + 0.05]);
        let h = 0.5 + u[0].abs();
        let dom = build_cauchy_tetrahedron(n, h).unwrap();
        dom.validate().unwrap();
        let s = dom.face_by_label("S").unwrap();
        let area = dom.faces[s].area(8).unwrap();
        assert!((dom.faces[s].plane_normal().unwrap() - n).max_abs() < 1e-15);
        for i in 0..3 {
            let f = dom.face_by_label(&format!("S{}", i + 1)).unwrap();
            assert!(rel(dom.faces[f].area(8).unwrap(), n[i] * area) < 1e-12);
            assert!((dom.faces[f].plane_normal().unwrap() + Vec3::basis(i)).max_abs() < 1e-15);
        }
        assert!(rel(dom.volume().unwrap(), h * area / 3.0) < 1e-12);
    }
}

#[test]
fn homothety_scales_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let dom = random_convex_polyhedron(&mut rng);
    let k = 0.3;
    let small = dom.homothety(k, Vec3::new(0.2, -0.1, 0.4)).unwrap();
    assert!(rel(small.volume().unwrap(), k.powi(3) * dom.volume().unwrap()) < 1e-12);
    assert!(rel(small.surface_area().unwrap(), k * k * dom.surface_area().unwrap()) < 1e-12);
    for i in 0..dom.edges.len() {
        assert!(rel(small.edge_length(i).unwrap(), k * dom.edge_length(i).unwrap()) < 1e-12);
        assert!(small.edge_shape(i).unwrap().matches(&dom.edge_shape(i).unwrap(), 1e-12));
    }
    assert!(dom.homothety(0.0, Vec3::ZERO).is_err());
}

#[test]
fn graph_patch_area_matches_high_order_reference() {
    let phi = Poly::from_terms([([2, 0, 0], 0.3), ([0, 2, 0], -0.2), ([1, 1, 0], 0.1)]);
    let patch = ParametricPatch::graph(&phi, [-0.5, -0.5], [0.5, 0.5], 1.0).unwrap();
    let reference = integrate_unit_square(64, |s, t| patch.point(s, t).big_n.norm()).unwrap();
    let dom = build_graph_patch_box(&Poly::constant(1.0).clone(), [-0.5, -0.5], [0.5, 0.5], 0.0).unwrap();
    assert!(rel(dom.faces[dom.face_by_label("top").unwrap()].area(8).unwrap(), 1.0) < 1e-14);
    let top = build_graph_patch_box(&(&phi + &Poly::constant(1.0)), [-0.5, -0.5], [0.5, 0.5], 0.0).unwrap();
    let area = top.faces[top.face_by_label("top").unwrap()].area(16).unwrap();
    assert!(rel(area, reference) < 1e-12, "{area} vs {reference}");
}

fn groove_shape() -> DihedralShape {
    make_dihedral(Vec3::new(0.6, 0.0, 0.8), Vec3::new(-0.6, 0.0, 0.8), Vec3::basis(1)).unwrap()
}

fn census(dom: &AdmissibleDomain) -> (usize, usize) {
    let mut normals: Vec<Vec3> = Vec::new();
    for f in &dom.faces {
        let n = f.plane_normal().unwrap();
        if !normals.iter().any(|m| (*m - n).max_abs() < SHAPE_MATCH_TOL) {
            normals.push(n);
        }
    }
    let mut shapes: Vec<DihedralShape> = Vec::new();
    for i in 0..dom.edges.len() {
        let d = dom.edge_shape(i).unwrap();
        if !shapes.iter().any(|s| s.matches(&d, SHAPE_MATCH_TOL)) {
            shapes.push(d);
        }
    }
    (normals.len(), shapes.len())
}

#[test]
fn grooved_slab_census_and_scaling() {
    let d = groove_shape();
    let mut first = None;
    for n in [4usize, 8, 16] {
        let dom = build_grooved_slab(n, &d).unwrap();
        dom.validate().unwrap();
        let c = census(&dom);
        assert_eq!(*first.get_or_insert(c), c, "census changes with N");
        let nf = n as f64;
        let (_, a, b) = hyperstress::geometry::dihedral_frame(&d).unwrap();
        // 1/N length × (N pitches × 1.5 h average height)
        let width = 2.0 * b / (a.abs() * nf);
        let expected = width * 1.5 / (nf * nf) / nf;
        assert!(rel(dom.volume().unwrap(), expected) < 1e-12);
        let l1: f64 = dom
            .edges_by_label("L1")
            .iter()
            .map(|&i| dom.edge_length(i).unwrap())
            .sum();
        // interior valleys only; the outer valleys meet the side walls
        assert!(rel(l1, (nf - 1.0) / nf) < 1e-12, "L1 total length {l1}");
        assert_eq!(dom.edges_by_label("L1").len(), n - 1);
        assert_eq!(dom.edges_by_label("L2").len(), n);
    }
    assert_eq!(first, Some((7, 16)));
}

#[test]
fn wedge_volume_scales_as_eps5() {
    let d = make_dihedral(Vec3::new(-0.6, 0.0, 0.8), Vec3::new(0.6, 0.0, 0.8), Vec3::basis(1)).unwrap();
    for shape in [d, d.swapped()] {
        let v1 = build_wedge(&shape, 2.0, 1.0, 0.2).unwrap().volume().unwrap();
        let v2 = build_wedge(&shape, 2.0, 1.0, 0.1).unwrap().volume().unwrap();
        assert!(rel(v1 / v2, 32.0) < 1e-12);
        let w = build_wedge(&shape, 2.0, 1.5, 0.1).unwrap();
        let l = w.edges_by_label("L");
        assert_eq!(l.len(), 1);
        assert!(rel(w.edge_length(l[0]).unwrap(), 0.15) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn n_nu_sum_symmetric_and_swap_keeps_angle(seed in any::<u64>()) {
        let d = random_dihedral(&mut ChaCha8Rng::seed_from_u64(seed), 0.05);
        prop_assert!(d.n_nu_sum().asymmetry() <= 1e-12);
        let a = d.angle().unwrap();
        let b = d.swapped().angle().unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
        prop_assert!(a > 0.0 && a < 2.0 * PI);
        prop_assert!(d.swapped().matches(&d, 1e-12));
    }

    #[test]
    fn cube_clip_is_closed(seed in any::<u64>()) {
        let dom = random_convex_polyhedron(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(dom.validate().is_ok());
        let v = dom.volume().unwrap();
        prop_assert!(v > 0.0 && v <= 8.0 + 1e-12);
    }
}
