use std::f64::consts::FRAC_PI_4;

use lorentz_semipos::cone::{self, entrywise_power, pairwise_product_bound, triple_product_bound};
use lorentz_semipos::oracle::{sample_lorentz, SamplerConfig};
use lorentz_semipos::{LorentzCone, MembershipClass, Tolerances, Vector};
use proptest::prelude::*;

fn samples(n: usize, seed: u64, count: usize) -> Vec<Vector> {
    let cfg = SamplerConfig {
        seed,
        count,
        resolution: 10,
    };
    sample_lorentz(n, &cfg).unwrap()
}

fn unit_vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-1.0f64..1.0, n)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-6)
        .prop_map(|v| {
            let v = Vector::from_vec(v);
            let n = v.norm();
            v / n
        })
}

proptest! {
    #[test]
    fn product_bounds(n in 2usize..7, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let xs = samples(n, seed, 3);
        prop_assert!(pairwise_product_bound(&xs[0], &xs[1], &tol).unwrap().holds(&tol));
        prop_assert!(triple_product_bound(&xs[0], &xs[1], &xs[2], &tol).unwrap().holds(&tol));
    }

    #[test]
    fn powers_stay_in_cone(n in 2usize..7, seed in any::<u64>(), l in 1u32..=6) {
        let tol = Tolerances::default();
        for x in samples(n, seed, 4) {
            let c = cone::membership(&entrywise_power(&x, l), &LorentzCone::new(n).unwrap(), &tol).unwrap();
            prop_assert_ne!(c.class, MembershipClass::Exterior);
        }
    }

    #[test]
    fn flat_vectors_are_far_from_boundary(n in 2usize..7, seed in any::<u64>(), a in unit_vector(6)) {
        let tol = Tolerances::default();
        let mut head: Vec<f64> = a.iter().take(n - 1).copied().collect();
        let hn = head.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(hn > 1e-3);
        head.iter_mut().for_each(|x| *x /= hn);
        head.push(0.0);
        let a = Vector::from_vec(head);
        for z in samples(n, seed, 3) {
            // push the sample onto the boundary and normalize
            let mut z = z;
            let zh = z.rows(0, n - 1).norm();
            if zh == 0.0 { continue; }
            let t = z[n - 1];
            for i in 0..n - 1 { z[i] *= t / zh; }
            let zn = z.norm();
            z /= zn;
            prop_assert!(cone::angle(&a, &z).unwrap() >= FRAC_PI_4 - tol.eps_eq);
        }
    }

    #[test]
    fn bisector_is_interior(x in unit_vector(5)) {
        prop_assume!(x[4] > 1e-3);
        let tol = Tolerances::default();
        let e = Vector::from_vec(vec![0.0, 0.0, 0.0, 0.0, 1.0]);
        let mid = (&x + &e) * 0.5;
        prop_assert!(cone::angle(&x, &mid).unwrap() < FRAC_PI_4);
        let c = cone::membership(&mid, &LorentzCone::new(5).unwrap(), &tol).unwrap();
        prop_assert_eq!(c.class, MembershipClass::Interior);
    }

    #[test]
    fn class_is_scale_invariant(x in prop::collection::vec(-10.0f64..10.0, 2..6), alpha in 1e-3f64..1e3) {
        let tol = Tolerances::default();
        let x = Vector::from_vec(x);
        let cone = LorentzCone::new(x.len()).unwrap();
        // exact boundary points are not preserved by rounding, keep clear of the band
        let m = cone::margin(&x);
        prop_assume!(m.abs() > 1e-6 * (1.0 + x.norm()));
        let c1 = cone.membership(&x, &tol).unwrap().class;
        let c2 = cone.membership(&(&x * alpha), &tol).unwrap().class;
        prop_assert_eq!(c1, c2);
    }

    #[test]
    fn projection_lands_in_cone_and_is_idempotent(x in prop::collection::vec(-10.0f64..10.0, 2..6)) {
        let tol = Tolerances::default();
        let x = Vector::from_vec(x);
        let p = cone::project(&x);
        prop_assert!(cone::contains(&p, &tol));
        prop_assert!((cone::project(&p) - &p).norm() <= 1e-12 * (1.0 + p.norm()));
        // the residual is orthogonal to the projection (Moreau)
        prop_assert!((&x - &p).dot(&p).abs() <= 1e-9 * (1.0 + x.norm_squared()));
    }
}

#[test]
fn sampler_is_valid_and_reproducible() {
    let tol = Tolerances::default();
    for n in 2..6 {
        let xs = samples(n, 11, 2000);
        assert!(xs.iter().all(|x| cone::contains(x, &tol)));
        assert_eq!(xs, samples(n, 11, 2000));
    }
}

#[test]
fn self_duality_and_separation() {
    let tol = Tolerances::default();
    let mut rng = lorentz_semipos_test_rng(5);
    for n in 2..6 {
        let xs = samples(n, 21, 200);
        let ys = samples(n, 22, 200);
        for (x, y) in xs.iter().zip(&ys) {
            assert!(x.dot(y) >= -tol.eps_eq);
        }
        let mut found = 0;
        while found < 100 {
            let x = Vector::from_fn(n, |_, _| rand::Rng::gen_range(&mut rng, -1.0..1.0));
            if cone::contains(&x, &tol) {
                continue;
            }
            // separating direction: projection residual onto the dual cone
            let y = cone::project(&x) - &x;
            assert!(cone::contains(&y, &tol));
            assert!(x.dot(&y) < 0.0);
            found += 1;
        }
    }
}

fn lorentz_semipos_test_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}
