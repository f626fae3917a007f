use hyperstress::experiments::random::{random_field, random_poly, random_tensor3, random_unit, random_vec};
use hyperstress::tensor::{
    contract3_t2, contract3_vv, div_vec, frame_from_normal, grad, projector, right_symmetrize, Poly, PolyField,
    Tensor2, Vec3,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn monomial_box_integral() {
    // ∫ x² y z³ over [0,1]×[0,2]×[−1,1]: (1/3)(2)(0)
    let p = Poly::monomial([2, 1, 3], 1.0);
    assert_eq!(p.integrate_box([0.0, 0.0, -1.0], [1.0, 2.0, 1.0]), 0.0);
    let q = Poly::monomial([2, 1, 2], 3.0);
    let v = q.integrate_box([0.0, 0.0, -1.0], [1.0, 2.0, 1.0]);
    assert!((v - 3.0 * (1.0 / 3.0) * 2.0 * (2.0 / 3.0)).abs() < 1e-15);
}

#[test]
fn divergence_of_position_is_three() {
    let x = PolyField::<Vec3>::identity();
    assert_eq!(div_vec(&x).eval(Vec3::new(0.3, -2.0, 5.0)), 3.0);
    assert_eq!(grad(&x).eval(Vec3::ZERO), Tensor2::identity());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antiderivative_inverts_partial(seed in any::<u64>(), axis in 0usize..3) {
        let p = random_poly(&mut rng(seed), 4);
        let back = p.antiderivative(axis).partial(axis);
        prop_assert!((&back - &p).max_abs_coefficient() <= 1e-14);
    }

    #[test]
    fn box_integral_matches_antiderivatives(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_poly(&mut r, 3);
        let lo = [-0.5, 0.0, 0.2];
        let hi = [0.7, 1.3, 0.9];
        let mut q = p.clone();
        for axis in 0..3 {
            let a = q.antiderivative(axis);
            q = &a.restrict(axis, hi[axis]) - &a.restrict(axis, lo[axis]);
        }
        let exact = p.integrate_box(lo, hi);
        prop_assert!((q.eval([0.0; 3]) - exact).abs() <= 1e-13 * exact.abs().max(1.0));
    }

    #[test]
    fn product_rule(seed in any::<u64>(), axis in 0usize..3) {
        let mut r = rng(seed);
        let a = random_poly(&mut r, 3);
        let b = random_poly(&mut r, 2);
        let lhs = (&a * &b).partial(axis);
        let rhs = &(&a.partial(axis) * &b) + &(&a * &b.partial(axis));
        prop_assert!((&lhs - &rhs).max_abs_coefficient() <= 1e-13);
    }

    #[test]
    fn contractions_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_tensor3(&mut r);
        let a = random_vec(&mut r);
        let b = random_vec(&mut r);
        let direct = contract3_vv(&c, a, b);
        let via = c.dot(a).dot(b);
        prop_assert!((direct - via).max_abs() <= 1e-14);
        let t = contract3_t2(&c, &a.outer(b));
        let mut expect = Vec3::ZERO;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    expect[k] += a[i] * b[j] * c.get(i, j, k);
                }
            }
        }
        prop_assert!((t - expect).max_abs() <= 1e-14);
    }

    #[test]
    fn right_symmetrize_is_idempotent_projection(seed in any::<u64>()) {
        let c = random_tensor3(&mut rng(seed));
        let s = right_symmetrize(&c);
        prop_assert!(s.right_asymmetry() <= 1e-15);
        prop_assert!((right_symmetrize(&s) - s).max_abs() <= 1e-15);
    }

    #[test]
    fn frames_are_right_handed_and_orthonormal(seed in any::<u64>()) {
        let n = random_unit(&mut rng(seed));
        let [e1, e2, e3] = frame_from_normal(n).unwrap();
        prop_assert_eq!(e3, n);
        for (a, b) in [(e1, e2), (e2, e3), (e3, e1)] {
            prop_assert!(a.dot(b).abs() <= 1e-15);
        }
        prop_assert!((e1.cross(e2) - e3).max_abs() <= 1e-15);
        let pi = projector(n).unwrap();
        prop_assert!(pi.dot(n).max_abs() <= 1e-15);
        prop_assert!((pi.matmul(&pi) - pi).max_abs() <= 1e-15);
    }

    #[test]
    fn field_gradient_matches_component_partials(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u: PolyField<Vec3> = random_field(&mut r, 3);
        let x = random_vec(&mut r);
        let g = grad(&u).eval(x);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(g.0[i][j], u.component(i).partial(j).eval(x.0));
            }
        }
    }
}
