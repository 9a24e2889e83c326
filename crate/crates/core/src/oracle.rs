//! Brute-force references used to referee the analytical code in tests.
//!
//! Nothing here shares search code with [`crate::decision`]: the sweeps are
//! plain grids over the unit cap of the cone followed by seeded random
//! refinement. They are only practical for `n <= 4`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Method};
use crate::cone::Tolerances;
use crate::linalg;
use crate::{Error, Matrix, Result, Vector};

/// Largest dimension the brute-force routines accept.
pub const MAX_DIM: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Number of samples, or of random refinement steps in the sweeps.
    pub count: usize,
    /// Grid density of the sweeps.
    pub resolution: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            count: 2000,
            resolution: 200,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.count < 1 {
            return Err(Error::InvalidOption("count must be >= 1".into()));
        }
        if self.resolution < 10 {
            return Err(Error::InvalidOption("resolution must be >= 10".into()));
        }
        Ok(())
    }
}

/// Samples with `x_n` uniform in `(0, 1]` and the first `n − 1` coordinates
/// uniform in the disk of radius `x_n`.
pub fn sample_lorentz(n: usize, cfg: &SamplerConfig) -> Result<Vec<Vector>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok((0..cfg.count).map(|_| disk_sample(n, &mut rng)).collect())
}

fn disk_sample(n: usize, rng: &mut ChaCha8Rng) -> Vector {
    let t = 1.0 - rng.gen::<f64>();
    // rejection from the cube keeps this independent of any Gaussian sampler
    let head = loop {
        let h: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if h.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
            break h;
        }
    };
    let mut v: Vec<f64> = head.into_iter().map(|h| h * t).collect();
    v.push(t);
    Vector::from_vec(v)
}

fn check_dim(a: &Matrix) -> Result<usize> {
    let n = linalg::ensure_square(a)?;
    if n > MAX_DIM {
        return Err(Error::TooLarge(n));
    }
    Ok(n)
}

/// `(Mx)_n − ‖(Mx)_{1:n−1}‖`, positive exactly when `Mx` is interior.
fn score(m: &Matrix, x: &Vector) -> f64 {
    let z = m * x;
    let n = z.len();
    z[n - 1] - z.rows(0, n - 1).norm()
}

/// Unit-cap point `(r·d, 1)/‖·‖` for `r ∈ [0, 1]` and unit `d`.
fn cap_point(r: f64, d: &[f64]) -> Vector {
    let mut v: Vec<f64> = d.iter().map(|c| r * c).collect();
    v.push(1.0);
    let v = Vector::from_vec(v);
    let norm = v.norm();
    v / norm
}

/// Grid of unit directions in `R^{n−1}`.
fn directions(dim: usize, resolution: usize) -> Vec<Vec<f64>> {
    match dim {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..resolution)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / resolution as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        _ => {
            let count = resolution * resolution / 4;
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let t = golden * i as f64;
                    vec![r * t.cos(), r * t.sin(), z]
                })
                .collect()
        }
    }
}

/// Grid over `θ ∈ [π/4, 3π/4]` for `x = (cos θ, sin θ)`, then two finer
/// grids around the best point.
fn arc_maximum(m: &Matrix, resolution: usize) -> Vector {
    use std::f64::consts::FRAC_PI_4;
    let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let f = |t: f64| {
        let (c, s) = (t.cos(), t.sin());
        (m10 * c + m11 * s) - (m00 * c + m01 * s).abs()
    };
    let (mut lo, mut hi) = (FRAC_PI_4, 3.0 * FRAC_PI_4);
    let (mut best_t, mut best_v) = (lo, f64::NEG_INFINITY);
    for _round in 0..3 {
        let h = (hi - lo) / (resolution - 1) as f64;
        for i in 0..resolution {
            let t = lo + h * i as f64;
            let v = f(t);
            if v > best_v {
                best_t = t;
                best_v = v;
            }
        }
        lo = (best_t - h).max(FRAC_PI_4);
        hi = (best_t + h).min(3.0 * FRAC_PI_4);
    }
    Vector::from_vec(vec![best_t.cos(), best_t.sin()])
}

/// Maximizes `score(m, ·)` over the unit cap of the cone.
fn cap_maximum(m: &Matrix, cfg: &SamplerConfig, rng: &mut ChaCha8Rng) -> Vector {
    let n = m.nrows();
    let mut best = Vector::zeros(n);
    let mut best_v = f64::NEG_INFINITY;
    let consider = |x: Vector, best: &mut Vector, best_v: &mut f64| {
        let v = score(m, &x);
        if v > *best_v {
            *best_v = v;
            *best = x;
        }
    };
    if n == 2 {
        return arc_maximum(m, cfg.resolution);
    }
    let dirs = directions(n - 1, cfg.resolution);
    let radii = cfg.resolution.min(64);
    for k in 0..=radii {
        let r = k as f64 / radii as f64;
        if k == 0 {
            consider(cap_point(0.0, &dirs[0]), &mut best, &mut best_v);
            continue;
        }
        for d in &dirs {
            consider(cap_point(r, d), &mut best, &mut best_v);
        }
    }
    // random refinement: shrinking perturbations kept inside the cap
    let mut radius = 1.0 / radii as f64;
    for _ in 0..cfg.count {
        let head: Vec<f64> = best
            .rows(0, n - 1)
            .iter()
            .map(|v| v / best[n - 1])
            .collect();
        let trial: Vec<f64> = head
            .iter()
            .map(|h| h + radius * rng.gen_range(-1.0..=1.0))
            .collect();
        let norm = trial.iter().map(|v| v * v).sum::<f64>().sqrt();
        let (r, d) = if norm > 1.0 {
            (1.0, trial.iter().map(|v| v / norm).collect::<Vec<_>>())
        } else if norm > 0.0 {
            (norm, trial.iter().map(|v| v / norm).collect::<Vec<_>>())
        } else {
            (0.0, dirs[0].clone())
        };
        let before = best_v;
        consider(cap_point(r, &d), &mut best, &mut best_v);
        if best_v <= before {
            radius *= 0.995;
        }
    }
    best
}

/// Exhaustive semipositivity decision for `n <= 4`, default tolerances.
pub fn brute_force_decide(a: &Matrix, cfg: &SamplerConfig) -> Result<Certificate> {
    brute_force_decide_with(a, cfg, &Tolerances::default())
}

/// Sweeps the primal system `x ∈ L, Ax ∈ Int L` and then the dual system
/// `−y ∈ L, Aᵀy ∈ L`. A verdict is returned only for a witness that passes
/// the verifier; otherwise the result is `Undecided` with the best primal
/// margin.
pub fn brute_force_decide_with(
    a: &Matrix,
    cfg: &SamplerConfig,
    tol: &Tolerances,
) -> Result<Certificate> {
    check_dim(a)?;
    cfg.validate()?;
    tol.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let x = cap_maximum(a, cfg, &mut rng);
    if let Some(c) = Certificate::try_primal(a, x.clone(), Method::BruteForce, tol) {
        return Ok(c);
    }
    let dual_map = -a.transpose();
    let w = cap_maximum(&dual_map, cfg, &mut rng);
    if let Some(c) = Certificate::try_dual(a, -w, Method::BruteForce, tol) {
        return Ok(c);
    }
    Ok(Certificate::undecided(
        crate::cone::margin(&(a * &x)),
        Method::BruteForce,
    ))
}

/// Worst normalized margin `(Ax)_n − ‖(Ax)_{1:n−1}‖` over sampled boundary
/// rays `x` of unit norm. Nonnegative up to rounding exactly when every
/// sampled ray maps into the cone.
pub fn invariance_margin(a: &Matrix, cfg: &SamplerConfig) -> Result<f64> {
    let n = check_dim(a)?;
    cfg.validate()?;
    let dirs = directions(n - 1, rays_resolution(n, cfg.resolution));
    Ok(dirs
        .iter()
        .map(|d| score(a, &cap_point(1.0, d)))
        .fold(f64::INFINITY, f64::min))
}

// grid density giving roughly `resolution` rays
fn rays_resolution(n: usize, resolution: usize) -> usize {
    match n {
        2 => resolution,
        3 => resolution,
        _ => ((4 * resolution) as f64).sqrt().ceil() as usize,
    }
}

/// `A·L^n_+ ⊆ L^n_+` on sampled boundary rays, with default tolerances.
pub fn brute_force_invariant(a: &Matrix, cfg: &SamplerConfig) -> Result<bool> {
    brute_force_invariant_with(a, cfg, &Tolerances::default())
}

/// Every sampled boundary ray maps into the cone within `eps_mem`.
pub fn brute_force_invariant_with(
    a: &Matrix,
    cfg: &SamplerConfig,
    tol: &Tolerances,
) -> Result<bool> {
    let n = check_dim(a)?;
    cfg.validate()?;
    let dirs = directions(n - 1, rays_resolution(n, cfg.resolution));
    Ok(dirs.iter().all(|d| {
        let ax = a * cap_point(1.0, d);
        crate::cone::contains(&ax, tol)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Verdict;

    fn m(rows: usize, data: &[f64]) -> Matrix {
        Matrix::from_row_slice(rows, rows, data)
    }

    #[test]
    fn sampler_examples() {
        let cfg = SamplerConfig {
            seed: 1,
            count: 3,
            resolution: 10,
        };
        let xs = sample_lorentz(2, &cfg).unwrap();
        assert_eq!(xs.len(), 3);
        assert!(xs.iter().all(|x| x[0].abs() <= x[1]));
        assert_eq!(xs, sample_lorentz(2, &cfg).unwrap());

        let cfg = SamplerConfig { count: 500, ..cfg };
        let xs = sample_lorentz(3, &cfg).unwrap();
        assert!(xs.iter().all(|x| x[0] * x[0] + x[1] * x[1] <= x[2] * x[2]));
        assert!(sample_lorentz(1, &cfg).is_err());
    }

    #[test]
    fn sampler_mean() {
        let cfg = SamplerConfig {
            seed: 3,
            count: 10_000,
            resolution: 10,
        };
        let xs = sample_lorentz(4, &cfg).unwrap();
        let mean = xs.iter().map(|x| x[3]).sum::<f64>() / xs.len() as f64;
        assert!((0.45..=0.55).contains(&mean), "{mean}");
    }

    #[test]
    fn config_validation() {
        let bad = SamplerConfig {
            seed: 0,
            count: 0,
            resolution: 10,
        };
        assert!(bad.validate().is_err());
        let bad = SamplerConfig {
            seed: 0,
            count: 1,
            resolution: 9,
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn decide_examples() {
        let cfg = SamplerConfig::default();
        let c = brute_force_decide(&m(2, &[1.0, 4.0, 5.0, 3.0]), &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Semipositive);
        let c = brute_force_decide(&m(2, &[5.0, 7.0, 6.0, 5.0]), &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::NotSemipositive);
        let c = brute_force_decide(&m(3, &[1.0, 1.0, 2.0, 1.0, 1.0, 4.0, 1.0, 1.0, 1.0]), &cfg)
            .unwrap();
        assert_eq!(c.verdict, Verdict::NotSemipositive);
        let c = brute_force_decide(&Matrix::identity(4, 4), &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Semipositive);
        // boundary case: the dual witness (0, −1) has margin exactly 0
        let c = brute_force_decide(&m(2, &[3.0, 0.0, 0.0, 0.0]), &cfg).unwrap();
        assert_ne!(c.verdict, Verdict::Semipositive);
        assert!(matches!(
            brute_force_decide(&Matrix::identity(5, 5), &cfg),
            Err(Error::TooLarge(5))
        ));
    }

    #[test]
    fn invariant_examples() {
        let cfg = SamplerConfig::default();
        assert!(brute_force_invariant(&Matrix::identity(3, 3), &cfg).unwrap());
        assert!(brute_force_invariant(&m(2, &[1.0, 0.0, 0.0, 2.0]), &cfg).unwrap());
        assert!(!brute_force_invariant(&m(2, &[2.0, 0.0, 0.0, 1.0]), &cfg).unwrap());
        assert!(brute_force_invariant(&Matrix::identity(4, 4), &cfg).unwrap());
        assert!(!brute_force_invariant(&(-Matrix::identity(4, 4)), &cfg).unwrap());
        assert!(invariance_margin(&m(2, &[2.0, 0.0, 0.0, 1.0]), &cfg).unwrap() < 0.0);
    }
}
