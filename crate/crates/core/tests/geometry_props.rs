mod common;

use common::*;
use lorentz_semipos::cone;
use lorentz_semipos::geometry::{
    ellipsoidal_rep_from_map, extremal_pushforward, inertia, invariance_check, is_invariant,
    is_monotone, k_cone_under_monotone, preimage_membership, s_cone_is_ellipsoidal, ConeDescriptor,
};
use lorentz_semipos::oracle::{brute_force_invariant, invariance_margin, SamplerConfig};
use lorentz_semipos::{LorentzCone, Matrix, MembershipClass, Tolerances, Vector};

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn ellipsoidal_reps_have_lorentz_inertia() {
    let mut r = rng(20);
    let loose = Tolerances {
        eps_eq: 1e-8,
        ..tol()
    };
    for _ in 0..200 {
        let n = dim(&mut r, 2, 4);
        let x = invertible(n, 1e4, &mut r);
        let rep = ellipsoidal_rep_from_map(&x, &tol()).unwrap();
        let i = inertia(&rep.q, &loose).unwrap();
        assert_eq!((i.n_plus, i.n_zero, i.n_minus), (n - 1, 0, 1));
        let inv = x.clone().try_inverse().unwrap();
        for _ in 0..100 {
            let z = gaussian_vector(n, &mut r);
            let pulled = LorentzCone::new(n)
                .unwrap()
                .membership(&(&inv * &z), &tol())
                .unwrap()
                .class;
            if pulled == MembershipClass::Boundary {
                continue;
            }
            assert_eq!(rep.contains(&z, &tol()), pulled.in_cone(), "{x} {z}");
        }
    }
}

#[test]
fn pushforward_is_extremal_in_preimage() {
    let mut r = rng(21);
    let l = |n| ConeDescriptor::lorentz(n).unwrap();
    for _ in 0..200 {
        let n = dim(&mut r, 2, 5);
        let a = invertible(n, 1e3, &mut r);
        let x = boundary_ray(n, &mut r);
        let p = extremal_pushforward(&a, &l(n), &x, &tol()).unwrap();
        assert!((&a * &p - &x).norm() <= 1e-9 * x.norm());
        let rep = s_cone_is_ellipsoidal(&a, &tol()).unwrap().rep.unwrap();
        let q = rep.quadratic_form(&(&p / p.norm()));
        assert!(q.abs() <= 1e-9, "{q}");
        let image = preimage_membership(&a, &l(n), &p, &tol()).unwrap();
        assert_eq!(image.class, MembershipClass::Boundary);
    }
}

#[test]
fn invariance_agrees_with_ray_sampling() {
    let cfg = SamplerConfig {
        resolution: 2000,
        ..SamplerConfig::default()
    };
    let mut r = rng(22);
    let mut invariant = 0;
    for _ in 0..300 {
        let n = dim(&mut r, 2, 3);
        let a = invariant_biased(n, &mut r);
        let worst = invariance_margin(&a, &cfg).unwrap();
        if worst.abs() <= 1e-6 * (1.0 + a.norm()) {
            continue;
        }
        let fast = is_invariant(&a, &tol()).unwrap();
        let slow = brute_force_invariant(&a, &cfg).unwrap();
        assert_eq!(
            fast,
            slow,
            "{a} {:?}",
            invariance_check(&a, &tol()).unwrap()
        );
        invariant += fast as usize;
    }
    assert!(invariant > 20, "{invariant}");
}

#[test]
fn monotone_matrices_reflect_the_cone() {
    let mut r = rng(23);
    let mut found = 0;
    let mut attempts = 0;
    while found < 40 && attempts < 4000 {
        attempts += 1;
        let n = dim(&mut r, 2, 4);
        let b = invariant_biased(n, &mut r);
        let Some(a) = b.clone().try_inverse() else {
            continue;
        };
        if !is_monotone(&a, &tol()).unwrap() {
            continue;
        }
        found += 1;
        let mut accepted = 0;
        while accepted < 100 {
            let y = gaussian_vector(n, &mut r);
            if !cone::contains(&(&a * &y), &tol()) {
                continue;
            }
            accepted += 1;
            assert!(cone::contains(&y, &tol()), "{a} {y}");
        }
        let cmp = k_cone_under_monotone(&a, &tol()).unwrap();
        assert!(cmp.coincides && cmp.rep.is_some());
    }
    assert!(found >= 20, "{found}");
}

#[test]
fn separators_witness_different_cones() {
    let mut r = rng(24);
    let l = |n| ConeDescriptor::lorentz(n).unwrap();
    for _ in 0..100 {
        let n = dim(&mut r, 2, 4);
        let a = gaussian_matrix(n, &mut r);
        let cmp = k_cone_under_monotone(&a, &tol()).unwrap();
        if let Some(x) = cmp.separator {
            assert!(!cmp.coincides);
            assert!(preimage_membership(&a, &l(n), &x, &tol())
                .unwrap()
                .class
                .in_cone());
            assert!(!cone::contains(&x, &tol()));
        }
    }
}

#[test]
fn identity_rep_is_the_lorentz_form() {
    for n in 2..6 {
        let rep = ellipsoidal_rep_from_map(&Matrix::identity(n, n), &tol()).unwrap();
        let mut e = Vector::zeros(n);
        e[n - 1] = 1.0;
        assert!((rep.u - e).norm() < 1e-14);
    }
}
