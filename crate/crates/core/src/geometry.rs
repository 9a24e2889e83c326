//! Preimage cones, ellipsoidal representations, invariance and monotonicity.
//!
//! For a matrix `A` and a proper cone `K`:
//!
//! * `S_{A,K} = { x : Ax ∈ K }` is the preimage cone,
//! * `K_{A,K} = { x ∈ K : Ax ∈ K }` is the semipositive cone,
//! * `π(K) = { A : AK ⊆ K }` is the set of cone-invariant matrices,
//! * `A` is `K`-monotone when `Ax ∈ K` implies `x ∈ K`, equivalently `A` is
//!   invertible with `A⁻¹ ∈ π(K)`.
//!
//! Every ellipsoidal cone is `X·L^n_+` for an invertible `X`, and admits the
//! quadratic description `{ z : zᵀQz <= 0, uᵀz >= 0 }` with
//! `Q = X⁻ᵀ J X⁻¹`, `J = diag(1, …, 1, −1)`, and `u` the eigenvector of the
//! single negative eigenvalue of `Q`.

use serde::{Deserialize, Serialize};

use crate::cone::{self, Membership, MembershipClass, Tolerances};
use crate::linalg::{self, axis, lorentz_form};
use crate::{Error, LorentzCone, Matrix, Result, Vector};

/// Invertible linear image `X·L^n_+` of the Lorentz cone.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearImage {
    map: Matrix,
    inverse: Matrix,
}

impl LinearImage {
    /// Rejects singular `X` and condition numbers above [`linalg::MAX_CONDITION`].
    pub fn new(map: Matrix) -> Result<Self> {
        let inverse = linalg::checked_inverse(&map)?;
        Ok(Self { map, inverse })
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConeDescriptor {
    Lorentz(LorentzCone),
    Orthant(usize),
    LinearImage(LinearImage),
}

impl ConeDescriptor {
    pub fn lorentz(n: usize) -> Result<Self> {
        Ok(Self::Lorentz(LorentzCone::new(n)?))
    }

    pub fn orthant(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::DimensionTooSmall(n));
        }
        Ok(Self::Orthant(n))
    }

    pub fn linear_image(x: Matrix) -> Result<Self> {
        Ok(Self::LinearImage(LinearImage::new(x)?))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Lorentz(c) => c.dim(),
            Self::Orthant(n) => *n,
            Self::LinearImage(img) => img.map.nrows(),
        }
    }

    pub fn membership(&self, x: &Vector, tol: &Tolerances) -> Result<Membership> {
        linalg::ensure_len(x, self.dim())?;
        Ok(match self {
            Self::Lorentz(_) => cone::classify(x, tol),
            Self::Orthant(_) => orthant_membership(x, tol),
            Self::LinearImage(img) => cone::classify(&(&img.inverse * x), tol),
        })
    }
}

/// Orthant analogue of the Lorentz classification, with margin `min_i x_i`.
fn orthant_membership(x: &Vector, tol: &Tolerances) -> Membership {
    let margin = x.min();
    let band = tol.strict_band(x.norm());
    let class = if margin > band {
        MembershipClass::Interior
    } else if margin >= -band {
        MembershipClass::Boundary
    } else {
        MembershipClass::Exterior
    };
    Membership { class, margin }
}

/// Counts of positive, zero and negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

/// Eigenvalue sign counts of a symmetric matrix; eigenvalues within
/// `±eps_eq·‖Q‖` count as zero.
pub fn inertia(q: &Matrix, tol: &Tolerances) -> Result<Inertia> {
    linalg::ensure_square(q)?;
    if !linalg::is_symmetric(q, tol.eps_eq * (1.0 + q.norm())) {
        return Err(Error::Structure("symmetric"));
    }
    let eig = ((q + q.transpose()) * 0.5).symmetric_eigenvalues();
    let scale = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let band = tol.eps_eq * scale;
    let mut out = Inertia {
        n_plus: 0,
        n_zero: 0,
        n_minus: 0,
    };
    for &l in eig.iter() {
        if l > band {
            out.n_plus += 1;
        } else if l < -band {
            out.n_minus += 1;
        } else {
            out.n_zero += 1;
        }
    }
    Ok(out)
}

/// Quadratic description `{ z : zᵀQz <= 0, uᵀz >= 0 }` of an ellipsoidal cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidalRep {
    pub q: Matrix,
    pub u: Vector,
    pub lambda: f64,
}

impl EllipsoidalRep {
    /// Sign test of the representation, with `eps_eq` slack on unit-normalized `z`.
    pub fn contains(&self, z: &Vector, tol: &Tolerances) -> bool {
        let norm = z.norm();
        if norm == 0.0 {
            return true;
        }
        let unit = z / norm;
        unit.dot(&(&self.q * &unit)) <= tol.eps_eq && self.u.dot(&unit) >= -tol.eps_eq
    }

    pub fn quadratic_form(&self, z: &Vector) -> f64 {
        z.dot(&(&self.q * z))
    }
}

/// Representation of `X·L^n_+`: `Q = X⁻ᵀJX⁻¹`, `lambda` its negative
/// eigenvalue and `u` the unit eigenvector with `uᵀ(X e_n) > 0`.
pub fn ellipsoidal_rep_from_map(x: &Matrix, tol: &Tolerances) -> Result<EllipsoidalRep> {
    let n = linalg::ensure_square(x)?;
    let inv = linalg::checked_inverse(x)?;
    let q = inv.transpose() * lorentz_form(n) * &inv;
    let q = (&q + q.transpose()) * 0.5;
    let inertia = inertia(&q, tol)?;
    if inertia.n_minus != 1 || inertia.n_zero != 0 {
        return Err(Error::IllConditioned(linalg::condition_number(x)));
    }
    let eig = q.clone().symmetric_eigen();
    let idx = eig.eigenvalues.imin();
    let lambda = eig.eigenvalues[idx];
    let mut u: Vector = eig.eigenvectors.column(idx).into_owned();
    u.normalize_mut();
    if u.dot(&(x * axis(n))) < 0.0 {
        u = -u;
    }
    Ok(EllipsoidalRep { q, u, lambda })
}

/// Classifies `Ax` in `K`, i.e. membership of `x` in the preimage `S_{A,K}`.
pub fn preimage_membership(
    a: &Matrix,
    k: &ConeDescriptor,
    x: &Vector,
    tol: &Tolerances,
) -> Result<Membership> {
    check_dims(a, k, x)?;
    k.membership(&(a * x), tol)
}

/// `x ∈ K` and `Ax ∈ K`, i.e. membership in `K_{A,K}`.
pub fn semipositive_cone_membership(
    a: &Matrix,
    k: &ConeDescriptor,
    x: &Vector,
    tol: &Tolerances,
) -> Result<bool> {
    check_dims(a, k, x)?;
    Ok(k.membership(x, tol)?.class.in_cone() && k.membership(&(a * x), tol)?.class.in_cone())
}

fn check_dims(a: &Matrix, k: &ConeDescriptor, x: &Vector) -> Result<()> {
    let n = k.dim();
    if a.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.nrows(),
        });
    }
    linalg::ensure_len(x, n)
}

/// Whether `x` spans an extreme ray of `K`.
pub fn is_extremal(k: &ConeDescriptor, x: &Vector, tol: &Tolerances) -> Result<bool> {
    linalg::ensure_len(x, k.dim())?;
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(match k {
        ConeDescriptor::Lorentz(_) => lorentz_extremal(x, tol),
        ConeDescriptor::Orthant(_) => {
            let slack = tol.strict_band(x.norm());
            let positive = x.iter().filter(|&&v| v > slack).count();
            positive == 1 && x.iter().all(|&v| v > slack || v.abs() <= slack)
        }
        ConeDescriptor::LinearImage(img) => lorentz_extremal(&(&img.inverse * x), tol),
    })
}

fn lorentz_extremal(x: &Vector, tol: &Tolerances) -> bool {
    x.norm() > 0.0 && cone::classify(x, tol).class == MembershipClass::Boundary
}

/// Maps an extremal `x` of `K` to `A⁻¹x`, an extremal of `S_{A,K}`.
///
/// The result is certified by checking that `A·(A⁻¹x)` is again extremal in
/// `K`, which is how extremality of `S_{A,K}` is read off.
pub fn extremal_pushforward(
    a: &Matrix,
    k: &ConeDescriptor,
    x: &Vector,
    tol: &Tolerances,
) -> Result<Vector> {
    check_dims(a, k, x)?;
    if !is_extremal(k, x, tol)? {
        return Err(Error::Precondition("x is not an extremal of K".into()));
    }
    let inv = linalg::checked_inverse(a)?;
    let pushed = &inv * x;
    if !is_extremal(k, &(a * &pushed), tol)? {
        return Err(Error::IllConditioned(linalg::condition_number(a)));
    }
    Ok(pushed)
}

/// Result of the `μ`-search behind [`is_invariant`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvarianceCheck {
    pub invariant: bool,
    /// `A e_n ∈ L^n_+`.
    pub orientation: bool,
    /// Best `μ` found for `A`, and `λ_max(AᵀJA − μJ)` there.
    pub mu: f64,
    pub lambda_max: f64,
    /// Same quantity for `Aᵀ`.
    pub lambda_max_transpose: f64,
}

/// `min_{μ ∈ [0, 4‖A‖²]} λ_max(AᵀJA − μJ)`, by golden-section search on the
/// convex function of `μ`. Returns `(μ*, λ*)`.
fn s_lemma_gap(a: &Matrix) -> (f64, f64) {
    let n = a.nrows();
    let j = lorentz_form(n);
    let base = a.transpose() * &j * a;
    let lambda_max = |mu: f64| {
        let m = &base - &j * mu;
        ((&m + m.transpose()) * 0.5).symmetric_eigenvalues().max()
    };
    let mu_max = 4.0 * linalg::spectral_norm(a).powi(2);
    if mu_max == 0.0 {
        return (0.0, lambda_max(0.0));
    }
    let (mut lo, mut hi) = (0.0, mu_max);
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut fc, mut fd) = (lambda_max(c), lambda_max(d));
    while hi - lo > 1e-14 * mu_max {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = lambda_max(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = lambda_max(d);
        }
    }
    let mut best = (0.5 * (lo + hi), lambda_max(0.5 * (lo + hi)));
    for mu in [0.0, mu_max] {
        let v = lambda_max(mu);
        if v < best.1 {
            best = (mu, v);
        }
    }
    best
}

/// Detailed form of [`is_invariant`].
///
/// `A·L ⊆ L ∪ −L` holds exactly when `AᵀJA − μJ ⪯ 0` for some `μ >= 0`
/// (S-lemma). Requiring the same of `Aᵀ` excludes rank-one maps that send
/// the cone onto a whole boundary line, and `A e_n ∈ L` selects `L` over `−L`.
pub fn invariance_check(a: &Matrix, tol: &Tolerances) -> Result<InvarianceCheck> {
    let n = linalg::ensure_square(a)?;
    let scale = 1.0 + linalg::spectral_norm(a).powi(2);
    let threshold = tol.eps_eq * scale;
    let orientation = cone::contains(&(a * axis(n)), tol);
    let (mu, lambda_max) = s_lemma_gap(a);
    let (_, lambda_max_transpose) = s_lemma_gap(&a.transpose());
    Ok(InvarianceCheck {
        invariant: orientation && lambda_max <= threshold && lambda_max_transpose <= threshold,
        orientation,
        mu,
        lambda_max,
        lambda_max_transpose,
    })
}

/// `A·L^n_+ ⊆ L^n_+`.
pub fn is_invariant(a: &Matrix, tol: &Tolerances) -> Result<bool> {
    Ok(invariance_check(a, tol)?.invariant)
}

/// `Ax ∈ L^n_+ ⟹ x ∈ L^n_+`: `A` invertible with `A⁻¹` invariant. Singular
/// or ill-conditioned matrices are not monotone.
pub fn is_monotone(a: &Matrix, tol: &Tolerances) -> Result<bool> {
    linalg::ensure_square(a)?;
    match linalg::checked_inverse(a) {
        Ok(inv) => is_invariant(&inv, tol),
        Err(Error::Singular | Error::IllConditioned(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidalCheck {
    pub ellipsoidal: bool,
    pub rep: Option<EllipsoidalRep>,
}

/// `S_{A,L}` is ellipsoidal exactly when `A` is invertible, in which case it
/// equals `A⁻¹·L^n_+`.
pub fn s_cone_is_ellipsoidal(a: &Matrix, tol: &Tolerances) -> Result<EllipsoidalCheck> {
    linalg::ensure_square(a)?;
    match linalg::checked_inverse(a) {
        Ok(inv) => Ok(EllipsoidalCheck {
            ellipsoidal: true,
            rep: Some(ellipsoidal_rep_from_map(&inv, tol)?),
        }),
        Err(Error::Singular | Error::IllConditioned(_)) => Ok(EllipsoidalCheck {
            ellipsoidal: false,
            rep: None,
        }),
        Err(e) => Err(e),
    }
}

/// Comparison of `K_{A,L}` with `S_{A,L}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeComparison {
    pub monotone: bool,
    pub coincides: bool,
    pub rep: Option<EllipsoidalRep>,
    /// A point of `S_{A,L}` outside `L^n_+` when the cones differ.
    pub separator: Option<Vector>,
}

const SEPARATOR_SAMPLES: usize = 20_000;

/// For monotone `A` the two cones coincide and are ellipsoidal. Otherwise a
/// separating point `x ∈ S_{A,L} \ L^n_+` is searched for: a kernel vector
/// when `A` is singular, else `A⁻¹w` over sampled boundary rays `w`.
pub fn k_cone_under_monotone(a: &Matrix, tol: &Tolerances) -> Result<ConeComparison> {
    let n = linalg::ensure_square(a)?;
    if is_monotone(a, tol)? {
        return Ok(ConeComparison {
            monotone: true,
            coincides: true,
            rep: s_cone_is_ellipsoidal(a, tol)?.rep,
            separator: None,
        });
    }
    let separator = match linalg::checked_inverse(a) {
        Ok(inv) => boundary_rays(n, SEPARATOR_SAMPLES)
            .into_iter()
            .map(|w| &inv * w)
            .filter(|x| cone::classify(x, tol).class == MembershipClass::Exterior)
            .min_by(|p, q| (cone::margin(p) / p.norm()).total_cmp(&(cone::margin(q) / q.norm()))),
        Err(_) => {
            // S contains ker A, and at most one of ±k lies in the cone.
            let svd = a.clone().svd(false, true);
            let v_t = svd.v_t.ok_or(Error::Singular)?;
            let idx = svd.singular_values.imin();
            let k: Vector = v_t.row(idx).transpose();
            Some(if cone::contains(&k, tol) { -k } else { k })
        }
    };
    Ok(ConeComparison {
        monotone: false,
        coincides: separator.is_none(),
        rep: None,
        separator,
    })
}

/// Deterministic boundary rays `(d, 1)` with `d` spread over the unit sphere
/// of `R^{n−1}`: both rays for `n = 2`, a uniform angle grid for `n = 3`, and
/// a Fibonacci lattice (or Gaussian-free spiral) for larger `n`.
pub fn boundary_rays(n: usize, count: usize) -> Vec<Vector> {
    let ray = |d: &[f64]| {
        let mut v = d.to_vec();
        v.push(1.0);
        Vector::from_vec(v)
    };
    match n {
        2 => vec![ray(&[1.0]), ray(&[-1.0])],
        3 => (0..count)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
                ray(&[t.cos(), t.sin()])
            })
            .collect(),
        4 => {
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let t = golden * i as f64;
                    ray(&[r * t.cos(), r * t.sin(), z])
                })
                .collect()
        }
        _ => {
            // Halton-style low-discrepancy points mapped through normalization.
            let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
            (1..=count)
                .map(|i| {
                    let d: Vec<f64> = (0..n - 1)
                        .map(|j| {
                            let base = primes[j % primes.len()];
                            2.0 * radical_inverse(i as u64, base) - 1.0
                        })
                        .collect();
                    let norm = d.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
                    let unit: Vec<f64> = d.iter().map(|v| v / norm).collect();
                    ray(&unit)
                })
                .collect()
        }
    }
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}
