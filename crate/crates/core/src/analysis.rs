//! Closed-form semipositivity tests.
//!
//! Each sufficient condition builds an explicit witness, each necessary
//! condition builds an explicit dual witness, and every witness goes through
//! the verifier before it is returned. A construction that fails verification
//! (possible near strict inequalities in floating point) degrades to
//! `NoVerdict`.

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Method, Verdict};
use crate::cone::{self, MembershipClass, Tolerances};
use crate::decision::{decide, verify_primal, DecideOptions};
use crate::linalg::{self, axis, unit};
use crate::{Error, Matrix, Result, Vector};

fn row(a: &Matrix, i: usize) -> Vector {
    a.row(i).transpose()
}

fn decide_with(tol: &Tolerances) -> DecideOptions {
    DecideOptions {
        tol: *tol,
        ..DecideOptions::default()
    }
}

/// Runs the cheap structural screens in a fixed order:
///
/// 1. last row in `−L^n_+`: not semipositive, dual `−e_n`;
/// 2. last column interior: witness `e_n`;
/// 3. last column in the cone and another column interior: witness
///    `e_n + ½·e_k`;
/// 4. `∑_{i<n} ‖a_i‖² < ½‖a_n‖²` and `a_nn >= 0`: witness `a_n/‖a_n‖ + e_n`.
pub fn structural_screen(a: &Matrix, tol: &Tolerances) -> Result<Certificate> {
    let n = linalg::ensure_square(a)?;
    let last_row = row(a, n - 1);
    if cone::contains(&(-&last_row), tol) && last_row.iter().any(|&v| v != 0.0) {
        if let Some(c) = Certificate::try_dual(a, -axis(n), Method::LastRowRefuter, tol) {
            return Ok(c);
        }
    }

    let last_col: Vector = a.column(n - 1).into_owned();
    let last_class = cone::classify(&last_col, tol).class;
    if last_class == MembershipClass::Interior {
        if let Some(c) = Certificate::try_primal(a, axis(n), Method::LastColumnInterior, tol) {
            return Ok(c);
        }
    }

    if cone::contains(&last_col, tol) {
        let best = (0..n - 1)
            .filter_map(|k| {
                let col: Vector = a.column(k).into_owned();
                let m = cone::classify(&col, tol);
                (m.class == MembershipClass::Interior).then_some((k, m.margin / col.norm()))
            })
            .max_by(|p, q| p.1.total_cmp(&q.1));
        if let Some((k, _)) = best {
            let x = axis(n) + unit(n, k) * 0.5;
            if let Some(c) = Certificate::try_primal(a, x, Method::ColumnPair, tol) {
                return Ok(c);
            }
        }
    }

    let head: f64 = (0..n - 1).map(|i| row(a, i).norm_squared()).sum();
    let last_norm = last_row.norm();
    if head < 0.5 * last_norm * last_norm && a[(n - 1, n - 1)] >= 0.0 {
        let x = &last_row / last_norm + axis(n);
        if let Some(c) = Certificate::try_primal(a, x, Method::RowNorm, tol) {
            return Ok(c);
        }
    }
    Ok(Certificate::no_verdict(Method::StructuralScreen))
}

/// Certificate for the rank-one matrix `u vᵀ` with `u_n >= 0`, which is
/// semipositive exactly when `u ∈ Int L^n_+` and `v ∉ −L^n_+`.
pub fn rank_one_certificate(u: &Vector, v: &Vector, tol: &Tolerances) -> Result<Certificate> {
    let n = u.len();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    linalg::ensure_len(v, n)?;
    if u.iter().all(|&x| x == 0.0) || v.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroVector);
    }
    if u[n - 1] < 0.0 {
        return Err(Error::Precondition("u_n must be nonnegative".into()));
    }
    let a = u * v.transpose();
    let u_interior = cone::classify(u, tol).class == MembershipClass::Interior;
    let v_in_neg = cone::contains(&(-v), tol);

    if u_interior && !v_in_neg {
        let vn = v[n - 1];
        let x = if cone::contains(v, tol) {
            if vn > 0.0 {
                axis(n)
            } else {
                v + axis(n) * v.norm()
            }
        } else if vn >= 0.0 {
            v + axis(n) * v.norm()
        } else {
            let vsq = v.norm_squared();
            let s = vsq - vn * vn;
            let r = vn.abs() * s.sqrt();
            let eps = 0.5 * (s - r);
            axis(n) * (vsq - eps) - v * vn
        };
        return Ok(Certificate::try_primal(&a, x, Method::RankOne, tol)
            .unwrap_or_else(|| Certificate::no_verdict(Method::RankOne)));
    }

    // Refutations. With v ∈ −L, y = −e_n gives Aᵀy = −u_n v ∈ L. With u outside
    // the interior, any y ∈ −L orthogonal to u gives Aᵀy = 0.
    let y = if !u_interior {
        let head = u.rows(0, n - 1);
        let hn2 = head.norm_squared();
        let mut w = Vector::zeros(n);
        for i in 0..n - 1 {
            w[i] = -u[n - 1] * head[i] / hn2;
        }
        w[n - 1] = 1.0;
        -w
    } else {
        -axis(n)
    };
    if let Some(c) = Certificate::try_dual(&a, y, Method::RankOne, tol) {
        return Ok(c);
    }
    let c = decide(&a, &decide_with(tol))?;
    Ok(if c.verdict == Verdict::NotSemipositive {
        c
    } else {
        Certificate::no_verdict(Method::RankOne)
    })
}

/// A diagonal matrix is semipositive exactly when `d_nn > 0`.
pub fn diagonal_certificate(d: &Matrix, tol: &Tolerances) -> Result<Certificate> {
    let n = linalg::ensure_square(d)?;
    if !linalg::is_diagonal(d, tol.eps_eq) {
        return Err(Error::Structure("diagonal"));
    }
    let cert = if d[(n - 1, n - 1)] > 0.0 {
        Certificate::try_primal(d, axis(n), Method::Diagonal, tol)
    } else {
        Certificate::try_dual(d, -axis(n), Method::Diagonal, tol)
    };
    Ok(cert.unwrap_or_else(|| Certificate::no_verdict(Method::Diagonal)))
}

/// An orthogonal matrix is semipositive exactly when `q_nn > 0`; the witness
/// is `½(q_n + e_n)` with `q_n` the last row.
///
/// Corners inside `±eps_strict·(1 + ‖q_n‖)` yield `NoVerdict`.
pub fn orthogonal_certificate(q: &Matrix, tol: &Tolerances) -> Result<Certificate> {
    let n = linalg::ensure_square(q)?;
    if !linalg::is_orthogonal(q, tol.eps_eq.max(1e-12 * n as f64)) {
        return Err(Error::Structure("orthogonal"));
    }
    let last = row(q, n - 1);
    let corner = q[(n - 1, n - 1)];
    let band = tol.strict_band(last.norm());
    let cert = if corner > band {
        let z = (&last + axis(n)) * 0.5;
        Certificate::try_primal(q, z, Method::Orthogonal, tol)
    } else if corner < -band {
        // Mirror of the primal construction: w = ½(e_n − q_n) ∈ L and
        // Q w ∈ −L, so y = Q w is a dual witness.
        let w = (axis(n) - &last) * 0.5;
        Certificate::try_dual(q, q * w, Method::Orthogonal, tol).or_else(|| {
            decide(q, &decide_with(tol))
                .ok()
                .filter(|c| c.verdict == Verdict::NotSemipositive)
        })
    } else {
        None
    };
    Ok(cert.unwrap_or_else(|| Certificate::no_verdict(Method::Orthogonal)))
}

/// Sufficient conditions for lower triangular matrices.
///
/// With `β = −a_nn`, `α_k = ‖(a_1k, …, a_(n−1)k)‖` and `γ = ∑_{i<n} ‖a_i‖²`:
///
/// * `a_nn > 0`: witness `e_n`;
/// * `α_k + β < a_nk` for some `k`: witness `c·e_k + e_n` with
///   `c = (α_k + β + a_nk) / (2 a_nk)`;
/// * `γ + 2β < ‖a_n‖` or `√γ + 2β < ‖a_n‖`: witness
///   `a_n / (3‖a_n‖) + (2/3) e_n`.
pub fn lower_triangular_certificate(a: &Matrix, tol: &Tolerances) -> Result<Certificate> {
    let n = linalg::ensure_square(a)?;
    if !linalg::is_lower_triangular(a, tol.eps_eq) {
        return Err(Error::Structure("lower triangular"));
    }
    let ann = a[(n - 1, n - 1)];
    if ann > 0.0 {
        if let Some(c) = Certificate::try_primal(a, axis(n), Method::LowerTriangularCorner, tol) {
            return Ok(c);
        }
    }
    let beta = -ann;
    let column_head = |k: usize| a.column(k).rows(0, n - 1).norm();

    let best = (0..n - 1)
        .filter(|&k| a[(n - 1, k)] > 0.0)
        .map(|k| (k, a[(n - 1, k)] - column_head(k) - beta))
        .filter(|&(_, slack)| slack > 0.0)
        .max_by(|p, q| p.1.total_cmp(&q.1));
    if let Some((k, _)) = best {
        let ank = a[(n - 1, k)];
        let c = (column_head(k) + beta + ank) / (2.0 * ank);
        let x = unit(n, k) * c + axis(n);
        if let Some(cert) = Certificate::try_primal(a, x, Method::LowerTriangularColumn, tol) {
            return Ok(cert);
        }
    }

    let gamma: f64 = (0..n - 1).map(|i| row(a, i).norm_squared()).sum();
    let last = row(a, n - 1);
    let last_norm = last.norm();
    if last_norm > 0.0 && (gamma + 2.0 * beta < last_norm || gamma.sqrt() + 2.0 * beta < last_norm)
    {
        let y = &last / (3.0 * last_norm) + axis(n) * (2.0 / 3.0);
        if let Some(cert) = Certificate::try_primal(a, y, Method::LowerTriangularRow, tol) {
            return Ok(cert);
        }
    }
    Ok(Certificate::no_verdict(Method::LowerTriangular))
}

/// Transfers a witness `x` of `A` to `A + D` for diagonal `D` whose diagonal
/// lies in `L^n_+`.
///
/// Hypothesis violations are errors; a numerical verification failure is a
/// `NoVerdict` certificate.
pub fn perturbation_transfer(
    a: &Matrix,
    d: &Matrix,
    x: &Vector,
    tol: &Tolerances,
) -> Result<Certificate> {
    let n = linalg::ensure_square(a)?;
    if d.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.nrows(),
        });
    }
    if !linalg::is_diagonal(d, tol.eps_eq) {
        return Err(Error::Structure("diagonal"));
    }
    if !verify_primal(a, x, tol)?.ok {
        return Err(Error::Precondition(
            "x is not a semipositivity vector of A".into(),
        ));
    }
    let diag: Vector = d.diagonal();
    if !cone::contains(&diag, tol) {
        return Err(Error::Precondition(
            "diagonal of D is not in the Lorentz cone".into(),
        ));
    }
    let sum = a + d;
    Ok(
        Certificate::try_primal(&sum, x.clone(), Method::Perturbation, tol)
            .unwrap_or_else(|| Certificate::no_verdict(Method::Perturbation)),
    )
}

/// Lifts a witness of the trailing `k×k` block of a block lower triangular
/// matrix to `z = (0, …, 0, x22)`.
pub fn block_embed_certificate(
    a: &Matrix,
    k: usize,
    x22: &Vector,
    tol: &Tolerances,
) -> Result<Certificate> {
    let n = linalg::ensure_square(a)?;
    if k < 2 || k > n {
        return Err(Error::Precondition(format!(
            "block size {k} must lie in 2..={n}"
        )));
    }
    linalg::ensure_len(x22, k)?;
    let lead = n - k;
    let upper_right = a.view((0, lead), (lead, k));
    if upper_right.iter().any(|v| v.abs() > tol.eps_eq) {
        return Err(Error::Structure("block lower triangular"));
    }
    let a22: Matrix = a.view((lead, lead), (k, k)).into_owned();
    if !verify_primal(&a22, x22, tol)?.ok {
        return Err(Error::Precondition(
            "x22 is not a semipositivity vector of the trailing block".into(),
        ));
    }
    let mut z = Vector::zeros(n);
    z.rows_mut(lead, k).copy_from(x22);
    Ok(Certificate::try_primal(a, z, Method::BlockEmbedding, tol)
        .unwrap_or_else(|| Certificate::no_verdict(Method::BlockEmbedding)))
}

/// Positive semidefinite screen for symmetric matrices.
///
/// A PSD matrix with `x₀ᵀAx₀ > 0` at an interior point is reported
/// semipositive, with the witness taken from [`decide`]. If the search does
/// not confirm, the screen returns `NoVerdict`.
pub fn copositive_screen(a: &Matrix, tol: &Tolerances) -> Result<Certificate> {
    let n = linalg::ensure_square(a)?;
    if !linalg::is_symmetric(a, tol.eps_eq) {
        return Err(Error::Structure("symmetric"));
    }
    let sym = (a + a.transpose()) * 0.5;
    let eig = sym.symmetric_eigenvalues();
    let scale = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if eig.min() < -tol.eps_eq * (1.0 + scale) {
        return Ok(Certificate::no_verdict(Method::Copositive));
    }
    let mut probes = vec![axis(n)];
    for i in 0..n - 1 {
        probes.push(axis(n) + unit(n, i) * 0.5);
        probes.push(axis(n) - unit(n, i) * 0.5);
    }
    let positive = probes.iter().any(|x| x.dot(&(&sym * x)) > tol.eps_eq);
    if !positive {
        return Ok(Certificate::no_verdict(Method::Copositive));
    }
    let c = decide(a, &decide_with(tol))?;
    Ok(if c.verdict == Verdict::Semipositive {
        Certificate {
            method: Method::Copositive,
            ..c
        }
    } else {
        Certificate::no_verdict(Method::Copositive)
    })
}

/// Witnesses carried through positive scaling and permutations fixing the
/// last coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    /// Certificate for `αA` with the original witness.
    pub scaled: Certificate,
    /// Certificate for `PA` with the original witness.
    pub permuted: Certificate,
}

pub fn invariance_properties(
    a: &Matrix,
    x: &Vector,
    alpha: f64,
    p: &Matrix,
    tol: &Tolerances,
) -> Result<InvarianceReport> {
    let n = linalg::ensure_square(a)?;
    if !verify_primal(a, x, tol)?.ok {
        return Err(Error::Precondition(
            "x is not a semipositivity vector of A".into(),
        ));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Precondition("alpha must be positive".into()));
    }
    if p.shape() != (n, n) || !linalg::is_permutation(p) || p[(n - 1, n - 1)] != 1.0 {
        return Err(Error::Precondition(
            "P must be a permutation matrix with p_nn = 1".into(),
        ));
    }
    let scaled = Certificate::try_primal(&(a * alpha), x.clone(), Method::Scaling, tol)
        .unwrap_or_else(|| Certificate::no_verdict(Method::Scaling));
    let permuted = Certificate::try_primal(&(p * a), x.clone(), Method::Permutation, tol)
        .unwrap_or_else(|| Certificate::no_verdict(Method::Permutation));
    Ok(InvarianceReport { scaled, permuted })
}
