use hyperstress::contact::StressState;
use hyperstress::experiments::random::{random_convex_polyhedron, random_field, random_state};
use hyperstress::experiments::*;
use hyperstress::geometry::{build_box, build_graph_patch_box, make_dihedral};
use hyperstress::tensor::{Poly, PolyField, Tensor2, Tensor3, Vec3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn e(i: usize) -> Vec3 {
    Vec3::basis(i)
}

fn show(r: &RateReport) {
    for row in &r.rows {
        println!(
            "{} {:e} {:e} {:e} {:e}",
            r.experiment, row.parameter, row.measured, row.reference, row.residual
        );
    }
    for (k, v) in &r.diagnostics {
        println!("  [{k}] = {v:e}");
    }
    for c in &r.checks {
        println!("  {} = {:e} pass={}", c.name, c.value, c.pass);
    }
}

#[test]
fn divergence_identity_on_random_polyhedra() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let dom = random_convex_polyhedron(&mut rng);
        let s = random_state(&mut rng, 1, 2);
        let u = random_field(&mut rng, 2);
        let r = run_divergence_identity(&s, &u, &dom).unwrap();
        show(&r);
        assert!(r.pass);
    }
}

#[test]
fn divergence_identity_on_curved_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let phi = Poly::from_terms([([2, 0, 0], 0.1), ([1, 1, 0], -0.05), ([0, 2, 0], 0.08)]);
    let dom = build_graph_patch_box(&phi, [-0.5, -0.5], [0.5, 0.5], -1.0).unwrap();
    let s = random_state(&mut rng, 1, 2);
    let u = random_field(&mut rng, 2);
    let r = run_divergence_identity(&s, &u, &dom).unwrap();
    show(&r);
    assert!(r.pass);
    let r = run_interstitial_decomposition(&s, &u, &dom).unwrap();
    show(&r);
    assert!(r.pass);
}

#[test]
fn power_consistency_on_homothetic_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let base = random_convex_polyhedron(&mut rng);
    let s = random_state(&mut rng, 2, 2);
    let u = random_field(&mut rng, 2);
    let doms: Vec<_> = [1.0, 0.5, 0.25]
        .iter()
        .map(|&k| (k, base.homothety(k, Vec3::new(0.1, 0.0, -0.2)).unwrap()))
        .collect();
    let r = run_power_consistency(&s, &u, &doms).unwrap();
    show(&r);
    assert!(r.pass);
}

#[test]
fn interstitial_decomposition_on_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let dom = build_box(Vec3::new(-1.0, 0.0, 0.5), Vec3::new(0.5, 1.0, 2.0)).unwrap();
    let s = random_state(&mut rng, 1, 3);
    let u = random_field(&mut rng, 2);
    let r = run_interstitial_decomposition(&s, &u, &dom).unwrap();
    show(&r);
    assert!(r.pass);
}

fn groove(pairing: Pairing, f0: Vec3) -> RateReport {
    let d = make_dihedral(Vec3::new(0.6, 0.0, 0.8), Vec3::new(-0.6, 0.0, 0.8), e(1)).unwrap();
    run_groove_blowup(&GrooveParams {
        shape: d,
        f0,
        u0: Vec3::new(1.0, 0.5, 0.25),
        grid: vec![4, 8, 16, 32],
        pairing,
        expectation: Expectation::Blowup,
    })
    .unwrap()
}

#[test]
fn groove_rates() {
    let r = groove(Pairing::Paired, e(0) + e(2));
    show(&r);
    assert!(r.pass);
    let r = groove(Pairing::Unpaired, e(0));
    show(&r);
    assert!(r.pass);
}

#[test]
fn wedge_limits() {
    let d = make_dihedral(Vec3::new(-0.6, 0.0, 0.8), Vec3::new(0.6, 0.0, 0.8), e(1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for shape in [d, d.swapped()] {
        let raw = run_wedge_limit(&WedgeParams {
            shape,
            c: 2.0,
            ell: 1.5,
            u0: Vec3::new(1.0, 2.0, 0.5),
            grid: vec![0.5, 0.25, 0.125, 0.0625],
            density: WedgeDensity::Raw(Vec3::new(1.0, -1.0, 0.5)),
        });
        let raw = match raw {
            Ok(r) => r,
            Err(e) => {
                println!("{e}");
                continue;
            }
        };
        show(&raw);
        assert!(raw.pass);
        let cons = run_wedge_limit(&WedgeParams {
            shape,
            c: 2.0,
            ell: 1.5,
            u0: Vec3::new(1.0, 2.0, 0.5),
            grid: vec![0.5, 0.25, 0.125],
            density: WedgeDensity::Consistent(random_state(&mut rng, 1, 2)),
        })
        .unwrap();
        show(&cons);
        assert!(cons.pass);
    }
}

#[test]
fn noll_check_random_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s = random_state(&mut rng, 2, 3);
    let phi = Poly::from_terms([([2, 0, 0], 0.7), ([1, 1, 0], 0.3), ([0, 2, 0], -0.4), ([3, 0, 0], 0.2)]);
    let r = run_noll_check(&NollParams {
        state: s,
        x0: Vec3::new(0.1, 0.2, -0.3),
        n0: Vec3::new(1.0, 2.0, 2.0) * (1.0 / 3.0),
        phi,
        half_width: 0.5,
        fd_step: 1e-3,
    })
    .unwrap();
    show(&r);
    assert!(r.pass);
}

#[test]
fn noll_rejects_non_tangent_surface() {
    let s = StressState::constant(Tensor2::ZERO, Tensor3::ZERO);
    let phi = Poly::from_terms([([1, 0, 0], 0.1)]);
    assert!(run_noll_check(&NollParams {
        state: s,
        x0: Vec3::ZERO,
        n0: e(2),
        phi,
        half_width: 0.5,
        fd_step: 1e-3,
    })
    .is_err());
}

#[test]
fn tetrahedron_limit_random_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = random_state(&mut rng, 1, 2);
    let r = run_tetrahedron_limit(&TetrahedronParams {
        state: s,
        x0: Vec3::new(0.2, -0.1, 0.3),
        n: Vec3::new(1.0, 2.0, 2.0) * (1.0 / 3.0),
        h: 1.0,
        grid: vec![0.5, 0.25, 0.125, 0.0625],
    })
    .unwrap();
    show(&r);
    assert!(r.pass);
}

#[test]
fn tetrahedron_limit_constant_state_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s = StressState::new(random_field(&mut rng, 0), random_field(&mut rng, 0));
    let r = run_tetrahedron_limit(&TetrahedronParams {
        state: s,
        x0: Vec3::ZERO,
        n: Vec3::new(1.0, 2.0, 2.0) * (1.0 / 3.0),
        h: 1.0,
        grid: vec![0.5, 0.25],
    })
    .unwrap();
    show(&r);
    assert!(r.rows.iter().all(|row| row.residual == 0.0));
}

#[test]
fn mollifier_limits() {
    let lo = [-1.0, 0.0, 0.0];
    let hi = [1.0, 1.0, 2.0];
    let f0 = PolyField::from_array([Poly::affine(1.0, [0.0, 0.5, 0.0]), Poly::constant(-1.0), Poly::var(2)]);
    let u = PolyField::from_array([
        Poly::from_terms([([2, 0, 0], 1.0), ([0, 1, 0], 1.0)]),
        Poly::var(0),
        Poly::constant(2.0),
    ]);
    let grid = vec![0.1, 0.05, 0.025, 0.0125];
    for gamma in [1, 2] {
        let r = run_mollifier_limit(&MollifierParams {
            gamma,
            f0: f0.clone(),
            u: u.clone(),
            lo,
            hi,
            grid: grid.clone(),
        })
        .unwrap();
        show(&r);
        assert!(r.pass);
    }
    let r = run_mollifier_limit(&MollifierParams {
        gamma: 2,
        f0,
        u: PolyField::constant(Vec3::new(1.0, 2.0, 3.0)),
        lo,
        hi,
        grid: grid.clone(),
    })
    .unwrap();
    show(&r);
    assert!(r.pass);
    assert!(r.rows.iter().all(|row| row.measured == 0.0));
}

#[test]
fn mollifier_rejects_oversized_support() {
    let r = run_mollifier_limit(&MollifierParams {
        gamma: 1,
        f0: PolyField::constant(e(0)),
        u: PolyField::constant(e(0)),
        lo: [0.0, 0.0, 0.0],
        hi: [0.1, 1.0, 1.0],
        grid: vec![0.5, 0.25],
    });
    assert!(matches!(r, Err(hyperstress::Error::Containment(_))));
}
