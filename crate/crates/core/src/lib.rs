//! Semipositivity of real square matrices over the Lorentz cone.
//!
//! The Lorentz cone `L^n_+ = { x : x_n >= 0, x_1^2 + ... + x_{n-1}^2 <= x_n^2 }`
//! is the self-dual proper cone behind second-order cone programming. A square
//! matrix `A` is `L^n_+`-semipositive when some `x` in the cone is mapped into
//! the cone's interior. Exactly one of the following holds:
//!
//! * a *primal* witness `x ∈ L^n_+` with `Ax ∈ Int L^n_+` exists, or
//! * a *dual* witness `y ≠ 0` with `-y ∈ L^n_+` and `Aᵀy ∈ L^n_+` exists.
//!
//! This crate searches for either witness, re-verifies everything it emits,
//! and offers closed-form certificates for structured classes (diagonal,
//! orthogonal, lower triangular, rank one, ...). The [`geometry`] module covers
//! preimage cones, ellipsoidal representations, cone invariance and
//! monotonicity.
//!
//! ```
//! use lorentz_semipos::{decide, DecideOptions, Matrix, Verdict};
//!
//! let a = Matrix::from_row_slice(2, 2, &[1.0, 4.0, 5.0, 3.0]);
//! let cert = decide(&a, &DecideOptions::default()).unwrap();
//! assert_eq!(cert.verdict, Verdict::Semipositive);
//! ```

pub mod analysis;
pub mod certificate;
pub mod cli;
pub mod cone;
pub mod decision;
mod error;
pub mod geometry;
pub mod linalg;
pub mod oracle;

pub use analysis::{
    block_embed_certificate, copositive_screen, diagonal_certificate, invariance_properties,
    lower_triangular_certificate, orthogonal_certificate, perturbation_transfer,
    rank_one_certificate, structural_screen,
};
pub use certificate::{Certificate, CertifiedCone, Method, Verdict};
pub use cone::{LorentzCone, Membership, MembershipClass, Tolerances};
pub use decision::{decide, verify_dual, verify_factorization, verify_primal, DecideOptions};
pub use error::{Error, Result};

/// Dense real matrix.
pub type Matrix = nalgebra::DMatrix<f64>;
/// Dense real column vector.
pub type Vector = nalgebra::DVector<f64>;
