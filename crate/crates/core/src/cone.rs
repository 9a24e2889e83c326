//! Geometry of the Lorentz cone `L^n_+`.
//!
//! Membership is a three-way verdict. With `margin(x) = √2·x_n − ‖x‖` (which
//! is nonnegative exactly on the cone):
//!
//! * `Interior` when `margin > eps_strict·(1 + ‖x‖)` and `x_n > 0`,
//! * `Boundary` when `|margin| <= eps_strict·(1 + ‖x‖)` and `x_n >= -eps_mem·(1 + ‖x‖)`,
//! * `Exterior` otherwise.
//!
//! The boundary band is wider than the membership slack used by
//! [`contains`], so a `Boundary` verdict is never rounding noise around an
//! interior point.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Vector};

/// Numerical slack used throughout the crate.
///
/// `eps_mem` and `eps_strict` are relative: the effective band for a vector
/// `x` is `eps·(1 + ‖x‖)`. `eps_eq` is an absolute comparison threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps_mem: f64,
    pub eps_strict: f64,
    pub eps_eq: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_mem: 1e-9,
            eps_strict: 1e-7,
            eps_eq: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn new(eps_mem: f64, eps_strict: f64, eps_eq: f64) -> Result<Self> {
        let tol = Self {
            eps_mem,
            eps_strict,
            eps_eq,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !(positive(self.eps_mem) && positive(self.eps_strict) && positive(self.eps_eq)) {
            return Err(Error::InvalidOption(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.eps_strict < self.eps_mem {
            return Err(Error::InvalidOption("eps_strict must be >= eps_mem".into()));
        }
        Ok(())
    }

    /// Membership slack at scale `norm`.
    pub fn mem_band(&self, norm: f64) -> f64 {
        self.eps_mem * (1.0 + norm)
    }

    /// Interior/boundary band at scale `norm`.
    pub fn strict_band(&self, norm: f64) -> f64 {
        self.eps_strict * (1.0 + norm)
    }
}

/// The Lorentz cone `L^n_+` for `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LorentzCone {
    n: usize,
}

impl LorentzCone {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        Ok(Self { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn membership(&self, x: &Vector, tol: &Tolerances) -> Result<Membership> {
        membership(x, self, tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipClass {
    Interior,
    Boundary,
    Exterior,
}

impl MembershipClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            MembershipClass::Interior => "interior",
            MembershipClass::Boundary => "boundary",
            MembershipClass::Exterior => "exterior",
        }
    }

    pub fn in_cone(&self) -> bool {
        !matches!(self, MembershipClass::Exterior)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub class: MembershipClass,
    /// `√2·x_n − ‖x‖`; negative outside the cone.
    pub margin: f64,
}

/// `√2·x_n − ‖x‖`.
pub fn margin(x: &Vector) -> f64 {
    SQRT_2 * x[x.len() - 1] - x.norm()
}

pub fn membership(x: &Vector, cone: &LorentzCone, tol: &Tolerances) -> Result<Membership> {
    if x.len() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            found: x.len(),
        });
    }
    Ok(classify(x, tol))
}

/// Membership in `L^k_+` with `k = x.len()`; `x` must have length at least 2.
pub(crate) fn classify(x: &Vector, tol: &Tolerances) -> Membership {
    let norm = x.norm();
    let last = x[x.len() - 1];
    let m = SQRT_2 * last - norm;
    let band = tol.strict_band(norm);
    let class = if m > band && last > 0.0 {
        MembershipClass::Interior
    } else if m.abs() <= band && last >= -tol.mem_band(norm) {
        MembershipClass::Boundary
    } else {
        MembershipClass::Exterior
    };
    Membership { class, margin: m }
}

/// Closed membership within the `eps_mem` slack.
pub fn contains(x: &Vector, tol: &Tolerances) -> bool {
    margin(x) >= -tol.mem_band(x.norm())
}

/// Euclidean projection onto `L^n_+`.
pub fn project(x: &Vector) -> Vector {
    let n = x.len();
    let t = x[n - 1];
    let w = x.rows(0, n - 1);
    let wn = w.norm();
    if wn <= t {
        return x.clone();
    }
    if wn <= -t {
        return Vector::zeros(n);
    }
    let scale = 0.5 * (wn + t);
    let mut p = Vector::zeros(n);
    for i in 0..n - 1 {
        p[i] = scale * w[i] / wn;
    }
    p[n - 1] = scale;
    p
}

/// Angle between two nonzero vectors, in `[0, π]`.
pub fn angle(x: &Vector, y: &Vector) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let (nx, ny) = (x.norm(), y.norm());
    if nx == 0.0 || ny == 0.0 {
        return Err(Error::ZeroVector);
    }
    let cos = (x.dot(y) / (nx * ny)).clamp(-1.0, 1.0);
    Ok(cos.acos())
}

/// Raises every entry to the `l`-th power. The cone is closed under this map.
pub fn entrywise_power(x: &Vector, l: u32) -> Vector {
    x.map(|v| v.powi(l as i32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Halfspace {
    /// `x_n > 0`
    UpperOpen,
    /// `x_n < 0`
    Lower,
    /// `x_n = 0`, the hyperplane meeting the cone only at the origin.
    OnH0,
}

pub fn halfspace_classify(x: &Vector, tol: &Tolerances) -> Result<Halfspace> {
    if x.len() < 2 {
        return Err(Error::DimensionTooSmall(x.len()));
    }
    let last = x[x.len() - 1];
    Ok(if last > tol.eps_eq {
        Halfspace::UpperOpen
    } else if last < -tol.eps_eq {
        Halfspace::Lower
    } else {
        Halfspace::OnH0
    })
}

/// Both sides of a product inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductBound {
    pub lhs: f64,
    pub rhs: f64,
}

impl ProductBound {
    pub fn holds(&self, tol: &Tolerances) -> bool {
        self.lhs <= self.rhs + tol.eps_eq
    }
}

/// `∑_{k<n} x_k y_k` against `x_n y_n` for `x, y ∈ L^n_+`.
pub fn pairwise_product_bound(x: &Vector, y: &Vector, tol: &Tolerances) -> Result<ProductBound> {
    product_bound(&[x, y], tol)
}

/// `∑_{k<n} x_k y_k z_k` against `x_n y_n z_n` for `x, y, z ∈ L^n_+`.
pub fn triple_product_bound(
    x: &Vector,
    y: &Vector,
    z: &Vector,
    tol: &Tolerances,
) -> Result<ProductBound> {
    product_bound(&[x, y, z], tol)
}

fn product_bound(factors: &[&Vector], tol: &Tolerances) -> Result<ProductBound> {
    let n = factors[0].len();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    for f in factors {
        if f.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.len(),
            });
        }
        if !contains(f, tol) {
            return Err(Error::OutsideCone);
        }
    }
    let lhs = (0..n - 1)
        .map(|k| factors.iter().map(|f| f[k]).product::<f64>())
        .sum();
    let rhs = factors.iter().map(|f| f[n - 1]).product();
    Ok(ProductBound { lhs, rhs })
}
