//! Small dense linear-algebra helpers shared by the other modules.

use crate::{Error, Matrix, Result, Vector};

/// Largest condition number accepted for matrices that must be inverted.
pub const MAX_CONDITION: f64 = 1e8;

pub fn ensure_square(a: &Matrix) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if a.nrows() < 2 {
        return Err(Error::DimensionTooSmall(a.nrows()));
    }
    Ok(a.nrows())
}

pub fn ensure_len(x: &Vector, n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    Ok(())
}

/// `i`-th standard basis vector (zero based).
pub fn unit(n: usize, i: usize) -> Vector {
    let mut e = Vector::zeros(n);
    e[i] = 1.0;
    e
}

/// The last standard basis vector `e_n`, the axis of the Lorentz cone.
pub fn axis(n: usize) -> Vector {
    unit(n, n - 1)
}

/// `J = diag(1, ..., 1, -1)`, the quadratic form whose nonpositive set is `L ∪ -L`.
pub fn lorentz_form(n: usize) -> Matrix {
    let mut j = Matrix::identity(n, n);
    j[(n - 1, n - 1)] = -1.0;
    j
}

/// Spectral condition number; `inf` for numerically singular input.
pub fn condition_number(a: &Matrix) -> f64 {
    let sv = a.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min <= 0.0 || !min.is_finite() {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Inverse guarded by [`MAX_CONDITION`].
pub fn checked_inverse(a: &Matrix) -> Result<Matrix> {
    ensure_square(a)?;
    let cond = condition_number(a);
    if !cond.is_finite() {
        return Err(Error::Singular);
    }
    if cond > MAX_CONDITION {
        return Err(Error::IllConditioned(cond));
    }
    a.clone().try_inverse().ok_or(Error::Singular)
}

pub fn spectral_norm(a: &Matrix) -> f64 {
    a.singular_values().max()
}

pub fn is_diagonal(a: &Matrix, eps: f64) -> bool {
    a.nrows() == a.ncols()
        && (0..a.nrows()).all(|i| (0..a.ncols()).all(|j| i == j || a[(i, j)].abs() <= eps))
}

pub fn is_lower_triangular(a: &Matrix, eps: f64) -> bool {
    a.nrows() == a.ncols()
        && (0..a.nrows()).all(|i| (i + 1..a.ncols()).all(|j| a[(i, j)].abs() <= eps))
}

pub fn is_symmetric(a: &Matrix, eps: f64) -> bool {
    a.nrows() == a.ncols()
        && (0..a.nrows()).all(|i| (0..i).all(|j| (a[(i, j)] - a[(j, i)]).abs() <= eps))
}

/// `QᵀQ = I` entrywise within `eps`.
pub fn is_orthogonal(q: &Matrix, eps: f64) -> bool {
    if q.nrows() != q.ncols() {
        return false;
    }
    let gram = q.transpose() * q;
    let n = q.nrows();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let target = if i == j { 1.0 } else { 0.0 };
            (gram[(i, j)] - target).abs() <= eps
        })
    })
}

pub fn is_permutation(p: &Matrix) -> bool {
    if p.nrows() != p.ncols() {
        return false;
    }
    let n = p.nrows();
    let entries_ok = p.iter().all(|&v| v == 0.0 || v == 1.0);
    let rows_ok = (0..n).all(|i| p.row(i).sum() == 1.0);
    let cols_ok = (0..n).all(|j| p.column(j).sum() == 1.0);
    entries_ok && rows_ok && cols_ok
}

/// Splits a numerically rank-one matrix into `u vᵀ`, returning `None` when the
/// second singular value exceeds `eps` relative to the first.
pub fn rank_one_factors(a: &Matrix, eps: f64) -> Option<(Vector, Vector)> {
    let svd = a.clone().svd(true, true);
    let u = svd.u.as_ref()?;
    let v_t = svd.v_t.as_ref()?;
    let sv = &svd.singular_values;
    let (mut i_max, mut s_max) = (0, 0.0);
    for (i, &s) in sv.iter().enumerate() {
        if s > s_max {
            i_max = i;
            s_max = s;
        }
    }
    if s_max <= eps {
        return None;
    }
    let rest = sv
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != i_max)
        .map(|(_, &s)| s)
        .fold(0.0, f64::max);
    if rest > eps * s_max {
        return None;
    }
    let uu: Vector = u.column(i_max) * s_max;
    let vv: Vector = v_t.row(i_max).transpose();
    Some((uu, vv))
}

pub fn frobenius(a: &Matrix) -> f64 {
    a.norm()
}
