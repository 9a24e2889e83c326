//! Seeded generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use lorentz_semipos::{Matrix, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn m(n: usize, data: &[f64]) -> Matrix {
    Matrix::from_row_slice(n, n, data)
}

pub fn v(xs: &[f64]) -> Vector {
    Vector::from_row_slice(xs)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn gaussian_matrix(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(n, n, |_, _| gaussian(rng))
}

pub fn gaussian_vector(n: usize, rng: &mut ChaCha8Rng) -> Vector {
    Vector::from_fn(n, |_, _| gaussian(rng))
}

/// Orthogonal matrix from the QR factorization of a Gaussian matrix.
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let qr = gaussian_matrix(n, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    // fix signs so the distribution is Haar
    let mut q = q;
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// Point of the cone with head norm `ratio·x_n`.
pub fn cone_point(n: usize, ratio: f64, rng: &mut ChaCha8Rng) -> Vector {
    let t = 0.2 + rng.gen::<f64>();
    let mut head = gaussian_vector(n - 1, rng);
    let hn = head.norm().max(1e-12);
    head *= ratio * t / hn;
    let mut x = head.iter().copied().collect::<Vec<_>>();
    x.push(t);
    Vector::from_vec(x)
}

pub fn interior_point(n: usize, rng: &mut ChaCha8Rng) -> Vector {
    let ratio = rng.gen_range(0.0..0.9);
    cone_point(n, ratio, rng)
}

pub fn boundary_point(n: usize, rng: &mut ChaCha8Rng) -> Vector {
    cone_point(n, 1.0, rng)
}

/// Unit boundary ray `(d, 1)/√2`.
pub fn boundary_ray(n: usize, rng: &mut ChaCha8Rng) -> Vector {
    let x = boundary_point(n, rng);
    let norm = x.norm();
    x / norm
}

/// Well-conditioned invertible matrix with condition number below `max_cond`.
pub fn invertible(n: usize, max_cond: f64, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let a = gaussian_matrix(n, rng);
        let sv = a.clone().singular_values();
        if sv.min() > 0.0 && sv.max() / sv.min() < max_cond {
            return a;
        }
    }
}

pub fn dim(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

/// Mixes generic matrices with products of invariant factors so both
/// answers are common.
pub fn invariant_biased(n: usize, r: &mut rand_chacha::ChaCha8Rng) -> Matrix {
    match r.gen_range(0..3) {
        0 => gaussian_matrix(n, r),
        1 => {
            // boost of the last coordinate plus a rotation of the head
            let mut a = Matrix::identity(n, n);
            let theta: f64 = r.gen_range(0.0..6.3);
            a[(0, 0)] = theta.cos();
            a[(0, 1)] = -theta.sin();
            a[(1, 0)] = theta.sin();
            a[(1, 1)] = theta.cos();
            if n == 2 {
                a = Matrix::identity(2, 2);
            }
            let s: f64 = r.gen_range(-1.0..1.0);
            let mut b = Matrix::identity(n, n);
            b[(0, 0)] = s.cosh();
            b[(0, n - 1)] = s.sinh();
            b[(n - 1, 0)] = s.sinh();
            b[(n - 1, n - 1)] = s.cosh();
            let shrink = Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    if i == n - 1 {
                        1.0
                    } else {
                        r.gen_range(0.0..1.2)
                    }
                } else {
                    0.0
                }
            });
            a * b * shrink * r.gen_range(0.1..3.0)
        }
        _ => {
            let u = interior_point(n, r);
            let w = interior_point(n, r);
            let mut a = &u * w.transpose();
            a += Matrix::identity(n, n) * r.gen_range(0.0..0.5);
            a
        }
    }
}
