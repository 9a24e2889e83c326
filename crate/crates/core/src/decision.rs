//! General decision procedure for Lorentz-cone semipositivity.
//!
//! Both sides of the theorem of the alternative reduce to maximizing a cone
//! margin of a linear image over unit vectors of the cone,
//!
//! ```text
//! φ_M(x) = (Mx)_n − ‖(Mx)_{1:n−1}‖,   x ∈ L^n_+, ‖x‖ = 1.
//! ```
//!
//! With `M = A` a positive value yields a primal witness `x`; with `M = −Aᵀ` a
//! nonnegative value yields a dual witness `y = −x`. `φ_M` is concave and
//! positively homogeneous, so a local search on the unit cap is well behaved.
//! For `n = 2` the cap is the arc `θ ∈ [π/4, 3π/4]` and the search is exact.
//!
//! Every witness returned here has been re-verified with [`verify_primal`] or
//! [`verify_dual`]; the search itself is never trusted.

use std::f64::consts::{FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Method, Verdict};
use crate::cone::{self, Tolerances};
use crate::linalg::{self, axis};
use crate::{Error, Matrix, Result, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecideOptions {
    pub max_starts: usize,
    pub max_iters: usize,
    pub step_init: f64,
    pub seed: u64,
    pub tol: Tolerances,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            max_starts: 64,
            max_iters: 2000,
            step_init: 0.5,
            seed: 42,
            tol: Tolerances::default(),
        }
    }
}

impl DecideOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_starts < 1 {
            return Err(Error::InvalidOption("max_starts must be >= 1".into()));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidOption("max_iters must be >= 1".into()));
        }
        if !(self.step_init.is_finite() && self.step_init > 0.0) {
            return Err(Error::InvalidOption("step_init must be > 0".into()));
        }
        self.tol.validate()
    }
}

/// Result of [`verify_primal`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimalCheck {
    pub ok: bool,
    /// `√2·(Ax)_n − ‖Ax‖` (or `min_i (Ax)_i` for orthant checks).
    pub margin: f64,
}

/// `x` is a semipositivity vector: `x ∈ L^n_+` and `Ax ∈ Int L^n_+`.
pub fn verify_primal(a: &Matrix, x: &Vector, tol: &Tolerances) -> Result<PrimalCheck> {
    let n = linalg::ensure_square(a)?;
    linalg::ensure_len(x, n)?;
    let image = a * x;
    let x_in = cone::classify(x, tol).class.in_cone();
    let m = cone::classify(&image, tol);
    Ok(PrimalCheck {
        ok: x_in && m.class == cone::MembershipClass::Interior,
        margin: m.margin,
    })
}

/// `y ≠ 0` is a dual witness: `−y ∈ L^n_+` and `Aᵀy ∈ L^n_+`.
pub fn verify_dual(a: &Matrix, y: &Vector, tol: &Tolerances) -> Result<bool> {
    let n = linalg::ensure_square(a)?;
    linalg::ensure_len(y, n)?;
    if y.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroVector);
    }
    let neg = -y;
    let image = a.transpose() * y;
    Ok(cone::contains(&neg, tol) && cone::contains(&image, tol))
}

/// Orthant semipositivity check: `x >= 0`, `x ≠ 0` and `Ax > 0` entrywise.
pub fn verify_orthant(a: &Matrix, x: &Vector, tol: &Tolerances) -> Result<PrimalCheck> {
    let n = linalg::ensure_square(a)?;
    linalg::ensure_len(x, n)?;
    let image = a * x;
    let margin = image.min();
    let slack = tol.mem_band(x.norm());
    let x_ok = x.iter().all(|&v| v >= -slack) && x.iter().any(|&v| v > slack);
    Ok(PrimalCheck {
        ok: x_ok && margin > tol.strict_band(image.norm()),
        margin,
    })
}

/// `φ_M(x) = (Mx)_n − ‖(Mx)_{1:n−1}‖`.
fn cone_objective(m: &Matrix, x: &Vector) -> f64 {
    let z = m * x;
    let n = z.len();
    z[n - 1] - z.rows(0, n - 1).norm()
}

fn cone_supergradient(m: &Matrix, x: &Vector) -> Vector {
    let z = m * x;
    let n = z.len();
    let head = z.rows(0, n - 1);
    let hn = head.norm();
    let mut dir = Vector::zeros(n);
    dir[n - 1] = 1.0;
    if hn > 0.0 {
        for i in 0..n - 1 {
            dir[i] = -head[i] / hn;
        }
    }
    m.transpose() * dir
}

fn arc_point(theta: f64) -> Vector {
    Vector::from_vec(vec![theta.cos(), theta.sin()])
}

/// Iterations without progress after which a start is abandoned.
const STALL_ITERS: usize = 200;
const DUAL_SEED_MASK: u64 = 0x9e37_79b9_7f4a_7c15;
const SWEEP_SAMPLES: usize = 10_000;
const ARC_LO: f64 = FRAC_PI_4;
const ARC_HI: f64 = 3.0 * FRAC_PI_4;

/// Exact maximization of `φ_M` on the arc of unit vectors of `L^2_+`.
///
/// A dense sweep refined by golden section around the best sample. The
/// closed-form critical angles of each linear piece are also evaluated, since
/// the maximum sits at one of them, at a kink or at an endpoint.
fn sweep_arc(m: &Matrix) -> (f64, f64) {
    let f = |t: f64| cone_objective(m, &arc_point(t));
    let h = (ARC_HI - ARC_LO) / (SWEEP_SAMPLES - 1) as f64;
    let (mut best_t, mut best_v) = (ARC_LO, f64::NEG_INFINITY);
    for i in 0..SWEEP_SAMPLES {
        let t = ARC_LO + h * i as f64;
        let v = f(t);
        if v > best_v {
            best_t = t;
            best_v = v;
        }
    }
    let (lo, hi) = ((best_t - h).max(ARC_LO), (best_t + h).min(ARC_HI));
    let t = golden_max(&f, lo, hi, 1e-13);
    let mut candidates = vec![t, ARC_LO, ARC_HI];
    // φ(θ) = r2·x − |r1·x| with r1, r2 the rows of M.
    let (r1, r2) = (m.row(0), m.row(1));
    // kink where r1·x = 0
    candidates.push(f64::atan2(-r1[0], r1[1]));
    for s in [1.0, -1.0] {
        let g0 = r2[0] - s * r1[0];
        let g1 = r2[1] - s * r1[1];
        candidates.push(f64::atan2(g1, g0));
    }
    for c in candidates {
        for shift in [-PI, 0.0, PI] {
            let t = c + shift;
            if (ARC_LO..=ARC_HI).contains(&t) {
                let v = f(t);
                if v > best_v {
                    best_t = t;
                    best_v = v;
                }
            }
        }
    }
    (best_t, best_v)
}

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Angular intervals of the arc `[π/4, 3π/4]` on which a 2×2 matrix maps the
/// unit vector `(cos θ, sin θ)` into the open cone.
///
/// Sign changes of the margin found by a dense sweep are refined by bisection
/// to `1e-12` in `θ`.
pub fn feasible_arcs_2x2(a: &Matrix) -> Result<Vec<(f64, f64)>> {
    if a.shape() != (2, 2) {
        return Err(Error::Structure("2x2"));
    }
    let f = |t: f64| cone_objective(a, &arc_point(t));
    let h = (ARC_HI - ARC_LO) / (SWEEP_SAMPLES - 1) as f64;
    let bisect = |mut lo: f64, mut hi: f64| {
        // invariant: sign(f(lo)) != sign(f(hi))
        let lo_pos = f(lo) > 0.0;
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == lo_pos {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let mut arcs = Vec::new();
    let mut start = if f(ARC_LO) > 0.0 { Some(ARC_LO) } else { None };
    let mut prev = ARC_LO;
    for i in 1..SWEEP_SAMPLES {
        let t = ARC_LO + h * i as f64;
        let (was, is) = (f(prev) > 0.0, f(t) > 0.0);
        if was != is {
            let edge = bisect(prev, t);
            match start.take() {
                Some(s) => arcs.push((s, edge)),
                None => start = Some(edge),
            }
        }
        prev = t;
    }
    if let Some(s) = start {
        arcs.push((s, ARC_HI));
    }
    Ok(arcs)
}

/// Best point of a local search on the unit cap of the cone.
#[derive(Debug, Clone)]
struct SearchPoint {
    x: Vector,
    value: f64,
}

fn normalize(x: Vector) -> Option<Vector> {
    let n = x.norm();
    (n > 0.0 && n.is_finite()).then(|| x / n)
}

/// Projected supergradient ascent of `φ_M` from `start`. Stops early when
/// `accept` returns true for the current iterate, or after `STALL_ITERS`
/// iterations without progress.
fn ascend(
    m: &Matrix,
    start: Vector,
    opts: &DecideOptions,
    accept: &dyn Fn(&Vector, f64) -> bool,
) -> (SearchPoint, bool) {
    let mut x = start;
    let mut best = SearchPoint {
        value: cone_objective(m, &x),
        x: x.clone(),
    };
    let mut last_gain = 0;
    for k in 1..=opts.max_iters {
        let value = cone_objective(m, &x);
        if value > best.value {
            if value - best.value > 1e-12 * (1.0 + best.value.abs()) {
                last_gain = k;
            }
            best = SearchPoint {
                x: x.clone(),
                value,
            };
        }
        if k - last_gain > STALL_ITERS {
            break;
        }
        if accept(&x, value) {
            return (SearchPoint { x, value }, true);
        }
        let g = cone_supergradient(m, &x);
        let gn = g.norm();
        if gn == 0.0 {
            break;
        }
        let step = opts.step_init / (k as f64).sqrt();
        match normalize(cone::project(&(&x + g * (step / gn)))) {
            Some(next) => x = next,
            None => x = best.x.clone(),
        }
    }
    (best, false)
}

/// Unit vector of the cone with `x_n` uniform and the head uniform in the disk.
pub(crate) fn random_cone_point(n: usize, rng: &mut ChaCha8Rng) -> Vector {
    let t: f64 = 1.0 - rng.gen::<f64>();
    let mut head: Vec<f64> = (0..n - 1).map(|_| gaussian(rng)).collect();
    let hn = head
        .iter()
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    let radius = t * rng.gen::<f64>().powf(1.0 / (n - 1) as f64);
    for h in head.iter_mut() {
        *h *= radius / hn;
    }
    head.push(t);
    let v = Vector::from_vec(head);
    let norm = v.norm();
    v / norm
}

pub(crate) fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

fn start_point(m: &Matrix, index: usize, rng: &mut ChaCha8Rng) -> Vector {
    let n = m.nrows();
    match index {
        0 => axis(n),
        1 => normalize(cone::project(&(m.transpose() * axis(n))))
            .unwrap_or_else(|| random_cone_point(n, rng)),
        _ => random_cone_point(n, rng),
    }
}

/// Decides `L^n_+`-semipositivity of `a`.
///
/// Returns a verified primal certificate, a verified dual certificate, or
/// `Undecided` with the best primal margin found when neither side clears
/// its tolerance.
pub fn decide(a: &Matrix, opts: &DecideOptions) -> Result<Certificate> {
    let n = linalg::ensure_square(a)?;
    opts.validate()?;
    if n == 2 {
        decide_2x2(a, opts)
    } else {
        decide_ascent(a, opts)
    }
}

fn best_primal_margin(a: &Matrix, x: &Vector) -> f64 {
    cone::margin(&(a * x))
}

fn decide_2x2(a: &Matrix, opts: &DecideOptions) -> Result<Certificate> {
    let tol = &opts.tol;
    let (tp, _) = sweep_arc(a);
    let x = arc_point(tp);
    if let Some(c) = Certificate::try_primal(a, x.clone(), Method::AngleSweep, tol) {
        return Ok(c);
    }
    let dual_map = -a.transpose();
    let (td, _) = sweep_arc(&dual_map);
    let y = -arc_point(td);
    if let Some(c) = Certificate::try_dual(a, y, Method::AngleSweep, tol) {
        return Ok(c);
    }
    Ok(Certificate::undecided(
        best_primal_margin(a, &x),
        Method::AngleSweep,
    ))
}

fn decide_ascent(a: &Matrix, opts: &DecideOptions) -> Result<Certificate> {
    let tol = opts.tol;
    let dual_map = -a.transpose();
    let mut primal_rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut dual_rng = ChaCha8Rng::seed_from_u64(opts.seed ^ DUAL_SEED_MASK);

    let primal_accept = |x: &Vector, value: f64| {
        value > 0.0 && verify_primal(a, x, &tol).map(|c| c.ok).unwrap_or(false)
    };
    let dual_accept = |x: &Vector, value: f64| {
        value >= -tol.mem_band(1.0) && verify_dual(a, &(-x), &tol).unwrap_or(false)
    };

    let mut best: Option<SearchPoint> = None;
    for s in 0..opts.max_starts {
        let start = start_point(a, s, &mut primal_rng);
        let (p, found) = ascend(a, start, opts, &primal_accept);
        if found {
            if let Some(c) = Certificate::try_primal(a, p.x.clone(), Method::ProjectedAscent, &tol)
            {
                return Ok(c);
            }
        }
        if best.as_ref().is_none_or(|b| p.value > b.value) {
            best = Some(p);
        }
        let start = start_point(&dual_map, s, &mut dual_rng);
        let (d, found) = ascend(&dual_map, start, opts, &dual_accept);
        if found {
            if let Some(c) = Certificate::try_dual(a, -d.x, Method::ProjectedAscent, &tol) {
                return Ok(c);
            }
        }
    }
    let best = best.expect("max_starts >= 1");
    Ok(Certificate::undecided(
        best_primal_margin(a, &best.x),
        Method::ProjectedAscent,
    ))
}

/// Runs only the primal side of the search: a verified `Semipositive`
/// certificate, or `None` when no witness was found.
///
/// Together with [`dual_search`] this lets callers confirm that the two
/// sides of the alternative never both succeed.
pub fn primal_search(a: &Matrix, opts: &DecideOptions) -> Result<Option<Certificate>> {
    let n = linalg::ensure_square(a)?;
    opts.validate()?;
    let tol = opts.tol;
    if n == 2 {
        let (t, _) = sweep_arc(a);
        return Ok(Certificate::try_primal(
            a,
            arc_point(t),
            Method::AngleSweep,
            &tol,
        ));
    }
    let accept = |x: &Vector, value: f64| {
        value > 0.0 && verify_primal(a, x, &tol).map(|c| c.ok).unwrap_or(false)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for s in 0..opts.max_starts {
        let (p, found) = ascend(a, start_point(a, s, &mut rng), opts, &accept);
        if found {
            if let Some(c) = Certificate::try_primal(a, p.x, Method::ProjectedAscent, &tol) {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Dual counterpart of [`primal_search`].
pub fn dual_search(a: &Matrix, opts: &DecideOptions) -> Result<Option<Certificate>> {
    let n = linalg::ensure_square(a)?;
    opts.validate()?;
    let tol = opts.tol;
    let dual_map = -a.transpose();
    if n == 2 {
        let (t, _) = sweep_arc(&dual_map);
        return Ok(Certificate::try_dual(
            a,
            -arc_point(t),
            Method::AngleSweep,
            &tol,
        ));
    }
    let accept = |x: &Vector, value: f64| {
        value >= -tol.mem_band(1.0) && verify_dual(a, &(-x), &tol).unwrap_or(false)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ DUAL_SEED_MASK);
    for s in 0..opts.max_starts {
        let (d, found) = ascend(
            &dual_map,
            start_point(&dual_map, s, &mut rng),
            opts,
            &accept,
        );
        if found {
            if let Some(c) = Certificate::try_dual(a, -d.x, Method::ProjectedAscent, &tol) {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Checks a claimed factorization `A = Y X⁻¹` with `X` invertible and both
/// `X` and `Y` semipositive.
pub fn verify_factorization(
    a: &Matrix,
    x: &Matrix,
    y: &Matrix,
    opts: &DecideOptions,
) -> Result<bool> {
    let n = linalg::ensure_square(a)?;
    for m in [x, y] {
        if m.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.nrows().max(m.ncols()),
            });
        }
    }
    linalg::checked_inverse(x)?;
    let residual = (a * x - y).norm();
    if residual > opts.tol.eps_eq * (1.0 + y.norm()) {
        return Ok(false);
    }
    let semipositive =
        |m: &Matrix| -> Result<bool> { Ok(decide(m, opts)?.verdict == Verdict::Semipositive) };
    Ok(semipositive(x)? && semipositive(y)?)
}

/// Maximizes `min_i (Ax)_i` over the probability simplex and returns a
/// verified orthant certificate, or `NoVerdict` when none was found.
pub fn orthant_certificate(a: &Matrix, opts: &DecideOptions) -> Result<Certificate> {
    let n = linalg::ensure_square(a)?;
    opts.validate()?;
    let tol = &opts.tol;
    let value = |x: &Vector| (a * x).min();

    let mut candidates: Vec<Vector> = (0..n).map(|i| linalg::unit(n, i)).collect();
    candidates.push(Vector::from_element(n, 1.0 / n as f64));
    if n == 2 {
        // min of two affine functions of t on x = (t, 1 − t): optimum at a
        // crossing or an endpoint.
        let (p, q) = (a * linalg::unit(2, 0), a * linalg::unit(2, 1));
        let denom = (p[0] - q[0]) - (p[1] - q[1]);
        if denom != 0.0 {
            let t = (q[1] - q[0]) / denom;
            if (0.0..=1.0).contains(&t) {
                candidates.push(Vector::from_vec(vec![t, 1.0 - t]));
            }
        }
    }
    for x in &candidates {
        if let Some(c) = Certificate::try_orthant(a, x.clone(), Method::OrthantSearch, tol) {
            return Ok(c);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for s in 0..opts.max_starts {
        let mut x = if s == 0 {
            Vector::from_element(n, 1.0 / n as f64)
        } else {
            let raw = Vector::from_fn(n, |_, _| -(1.0 - rng.gen::<f64>()).ln());
            let sum = raw.sum();
            raw / sum
        };
        let mut best = (x.clone(), value(&x));
        for k in 1..=opts.max_iters {
            let z = a * &x;
            let i = z.imin();
            let g: Vector = a.row(i).transpose();
            let gn = g.norm();
            if gn == 0.0 {
                break;
            }
            let step = opts.step_init / (k as f64).sqrt();
            x = project_simplex(&(&x + g * (step / gn)));
            let v = value(&x);
            if v > best.1 {
                best = (x.clone(), v);
                if v > 0.0 {
                    if let Some(c) =
                        Certificate::try_orthant(a, x.clone(), Method::OrthantSearch, tol)
                    {
                        return Ok(c);
                    }
                }
            }
        }
    }
    Ok(Certificate::no_verdict(Method::OrthantSearch))
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &Vector) -> Vector {
    let mut u: Vec<f64> = v.iter().copied().collect();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut css = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        css += ui;
        let t = (css - 1.0) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    v.map(|x| (x - theta).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferDirection {
    /// Orthant-semipositive `A` to `C = TAT⁻¹` over `L^2_+`.
    ToLorentz,
    /// `L^2_+`-semipositive `A` to orthant-semipositive `C = T⁻¹AT`.
    FromLorentz,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityTransfer {
    pub c: Matrix,
    pub certificate: Certificate,
}

/// `T = [[1, −1], [1, 1]]`, which maps the nonnegative quadrant onto `L^2_+`.
pub fn transfer_matrix() -> Matrix {
    Matrix::from_row_slice(2, 2, &[1.0, -1.0, 1.0, 1.0])
}

fn transfer_inverse() -> Matrix {
    Matrix::from_row_slice(2, 2, &[0.5, 0.5, -0.5, 0.5])
}

/// Moves a 2×2 semipositivity certificate between the nonnegative quadrant
/// and `L^2_+` through the similarity `T`.
///
/// `T` maps the quadrant onto `L^2_+`, so an orthant witness `x` of `A`
/// becomes the Lorentz witness `Tx` of `TAT⁻¹` and vice versa.
pub fn similarity_transfer_2x2(
    a: &Matrix,
    direction: TransferDirection,
    opts: &DecideOptions,
) -> Result<SimilarityTransfer> {
    if a.shape() != (2, 2) {
        return Err(Error::Structure("2x2"));
    }
    let (t, t_inv) = (transfer_matrix(), transfer_inverse());
    let tol = &opts.tol;
    match direction {
        TransferDirection::ToLorentz => {
            let source = orthant_certificate(a, opts)?;
            let x = match (&source.verdict, source.primal) {
                (Verdict::Semipositive, Some(x)) => x,
                _ => {
                    return Err(Error::Precondition(
                        "matrix is not orthant-semipositive".into(),
                    ))
                }
            };
            let c = &t * a * &t_inv;
            let mapped = normalize(&t * x).ok_or(Error::ZeroVector)?;
            let certificate =
                match Certificate::try_primal(&c, mapped, Method::SimilarityTransfer, tol) {
                    Some(cert) => cert,
                    None => decide(&c, opts)?,
                };
            Ok(SimilarityTransfer { c, certificate })
        }
        TransferDirection::FromLorentz => {
            let source = decide(a, opts)?;
            let x = match (&source.verdict, source.primal) {
                (Verdict::Semipositive, Some(x)) => x,
                _ => {
                    return Err(Error::Precondition(
                        "matrix is not Lorentz-semipositive".into(),
                    ))
                }
            };
            let c = &t_inv * a * &t;
            let mapped = &t_inv * x;
            let certificate =
                match Certificate::try_orthant(&c, mapped, Method::SimilarityTransfer, tol) {
                    Some(cert) => cert,
                    None => orthant_certificate(&c, opts)?,
                };
            Ok(SimilarityTransfer { c, certificate })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: f64, b: f64, c: f64, d: f64) -> Matrix {
        Matrix::from_row_slice(2, 2, &[a, b, c, d])
    }

    fn v(xs: &[f64]) -> Vector {
        Vector::from_row_slice(xs)
    }

    #[test]
    fn verify_primal_examples() {
        let tol = Tolerances::default();
        let c = verify_primal(&m2(1.0, 4.0, 5.0, 3.0), &v(&[0.5, 1.0]), &tol).unwrap();
        assert!(c.ok);
        let expected = 2f64.sqrt() * 5.5 - (4.5f64 * 4.5 + 5.5 * 5.5).sqrt();
        assert!((c.margin - expected).abs() < 1e-14);
        assert!(
            verify_primal(&Matrix::identity(3, 3), &axis(3), &tol)
                .unwrap()
                .ok
        );
        assert!(
            !verify_primal(&m2(5.0, 7.0, 6.0, 5.0), &v(&[0.0, 1.0]), &tol)
                .unwrap()
                .ok
        );
        assert!(verify_primal(&Matrix::identity(3, 3), &axis(2), &tol).is_err());
    }

    #[test]
    fn verify_dual_examples() {
        let tol = Tolerances::default();
        let a = Matrix::from_row_slice(3, 3, &[1.0, 1.0, 2.0, 1.0, 1.0, 4.0, 1.0, 1.0, 1.0]);
        assert!(verify_dual(&a, &v(&[1.0, 1.0, -3.0]), &tol).unwrap());
        assert!(!verify_dual(&Matrix::identity(3, 3), &(-axis(3)), &tol).unwrap());
        assert!(verify_dual(&m2(5.0, 7.0, 6.0, 5.0), &v(&[1.0, -1.0]), &tol).unwrap());
        assert_eq!(
            verify_dual(&a, &Vector::zeros(3), &tol),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn decide_examples() {
        let opts = DecideOptions::default();
        let c = decide(&m2(1.0, 4.0, 5.0, 3.0), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Semipositive);
        let c = decide(&m2(5.0, 7.0, 6.0, 5.0), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::NotSemipositive);
        let y = c.dual.unwrap();
        let expected = v(&[1.0, -1.0]) / 2f64.sqrt();
        assert!((y - expected).norm() < 1e-9);
        let a = Matrix::from_row_slice(3, 3, &[1.0, 1.0, 2.0, 1.0, 1.0, 4.0, 1.0, 1.0, 1.0]);
        assert_eq!(decide(&a, &opts).unwrap().verdict, Verdict::NotSemipositive);
    }

    #[test]
    fn decide_rejects_bad_input() {
        let opts = DecideOptions::default();
        assert!(matches!(
            decide(&Matrix::zeros(2, 3), &opts),
            Err(Error::NotSquare { .. })
        ));
        let bad = DecideOptions {
            max_starts: 0,
            ..opts
        };
        assert!(decide(&Matrix::identity(2, 2), &bad).is_err());
    }

    #[test]
    fn feasible_arcs_of_example_matrix() {
        // [[1,4],[5,3]] at θ: 5c + 3s > |c + 4s|
        let arcs = feasible_arcs_2x2(&m2(1.0, 4.0, 5.0, 3.0)).unwrap();
        assert_eq!(arcs.len(), 1);
        let (lo, hi) = arcs[0];
        // left edge: 5c + 3s = c + 4s  ⟺ tan θ = 4
        assert!((lo - ARC_LO).abs() < 1e-12);
        assert!((hi - 4f64.atan()).abs() < 1e-11);
        assert!(feasible_arcs_2x2(&m2(5.0, 7.0, 6.0, 5.0))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn simplex_projection() {
        let p = project_simplex(&v(&[0.2, 0.2, 5.0]));
        assert!((p.sum() - 1.0).abs() < 1e-15);
        assert_eq!(p, v(&[0.0, 0.0, 1.0]));
        let q = project_simplex(&v(&[0.5, 0.5]));
        assert_eq!(q, v(&[0.5, 0.5]));
    }

    #[test]
    fn factorization_examples() {
        let opts = DecideOptions::default();
        let a = m2(1.0, 4.0, 5.0, 3.0);
        let eye = Matrix::identity(2, 2);
        assert!(verify_factorization(&a, &eye, &a, &opts).unwrap());
        assert!(!verify_factorization(&a, &eye, &m2(5.0, 7.0, 6.0, 5.0), &opts).unwrap());
        let s = m2(5.0, 7.0, 6.0, 5.0);
        assert!(!verify_factorization(&s, &eye, &s, &opts).unwrap());
        assert_eq!(
            verify_factorization(&a, &m2(1.0, 2.0, 2.0, 4.0), &a, &opts),
            Err(Error::Singular)
        );
    }

    #[test]
    fn similarity_examples() {
        let opts = DecideOptions::default();
        let tol = opts.tol;
        let r =
            similarity_transfer_2x2(&m2(0.0, 1.0, 1.0, 0.0), TransferDirection::ToLorentz, &opts)
                .unwrap();
        assert!((r.c.clone() - m2(-1.0, 0.0, 0.0, 1.0)).norm() < 1e-15);
        assert!((r.certificate.primal.clone().unwrap() - axis(2)).norm() < 1e-12);
        assert!(r.certificate.verify(&r.c, &tol));

        let r =
            similarity_transfer_2x2(&Matrix::identity(2, 2), TransferDirection::ToLorentz, &opts)
                .unwrap();
        assert_eq!(r.c, Matrix::identity(2, 2));
        assert!(r.certificate.verify(&r.c, &tol));

        let r = similarity_transfer_2x2(
            &m2(-1.0, 0.0, 0.0, 1.0),
            TransferDirection::FromLorentz,
            &opts,
        )
        .unwrap();
        assert!((r.c.clone() - m2(0.0, 1.0, 1.0, 0.0)).norm() < 1e-15);
        let x = r.certificate.primal.clone().unwrap();
        assert!((x[0] - x[1]).abs() < 1e-9);
        assert!(r.certificate.verify(&r.c, &tol));

        assert!(matches!(
            similarity_transfer_2x2(
                &m2(-1.0, 0.0, 0.0, -1.0),
                TransferDirection::ToLorentz,
                &opts
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn decide_is_deterministic() {
        let a = Matrix::from_row_slice(3, 3, &[0.3, -1.2, 0.4, 2.0, 0.1, -0.7, 0.5, 0.9, -0.2]);
        let opts = DecideOptions::default();
        assert_eq!(decide(&a, &opts).unwrap(), decide(&a, &opts).unwrap());
    }
}
