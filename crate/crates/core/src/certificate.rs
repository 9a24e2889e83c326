//! Verdicts and the witnesses that back them.

use serde::{Deserialize, Serialize};

use crate::cone::Tolerances;
use crate::decision::{verify_dual, verify_orthant, verify_primal};
use crate::{Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Semipositive,
    NotSemipositive,
    /// The general search stalled inside the tolerance band.
    Undecided,
    /// A screen whose hypotheses did not apply.
    NoVerdict,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Semipositive => "semipositive",
            Verdict::NotSemipositive => "not_semipositive",
            Verdict::Undecided => "undecided",
            Verdict::NoVerdict => "no_verdict",
        }
    }

    pub fn is_definite(&self) -> bool {
        matches!(self, Verdict::Semipositive | Verdict::NotSemipositive)
    }
}

/// The cone a certificate refers to. Everything is over the Lorentz cone
/// except the orthant witnesses produced by the 2×2 similarity transfer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifiedCone {
    Lorentz,
    Orthant,
}

/// Which construction or search produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    LastRowRefuter,
    LastColumnInterior,
    ColumnPair,
    RowNorm,
    StructuralScreen,
    RankOne,
    Diagonal,
    Orthogonal,
    LowerTriangularCorner,
    LowerTriangularColumn,
    LowerTriangularRow,
    LowerTriangular,
    Perturbation,
    BlockEmbedding,
    Copositive,
    Scaling,
    Permutation,
    AngleSweep,
    ProjectedAscent,
    OrthantSearch,
    SimilarityTransfer,
    BruteForce,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::LastRowRefuter => "last_row_refuter",
            Method::LastColumnInterior => "last_column_interior",
            Method::ColumnPair => "column_pair",
            Method::RowNorm => "row_norm",
            Method::StructuralScreen => "structural_screen",
            Method::RankOne => "rank_one",
            Method::Diagonal => "diagonal",
            Method::Orthogonal => "orthogonal",
            Method::LowerTriangularCorner => "lower_triangular_corner",
            Method::LowerTriangularColumn => "lower_triangular_column",
            Method::LowerTriangularRow => "lower_triangular_row",
            Method::LowerTriangular => "lower_triangular",
            Method::Perturbation => "perturbation",
            Method::BlockEmbedding => "block_embedding",
            Method::Copositive => "copositive",
            Method::Scaling => "scaling",
            Method::Permutation => "permutation",
            Method::AngleSweep => "angle_sweep",
            Method::ProjectedAscent => "projected_ascent",
            Method::OrthantSearch => "orthant_search",
            Method::SimilarityTransfer => "similarity_transfer",
            Method::BruteForce => "brute_force",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a semipositivity test.
///
/// Definite certificates are only built through constructors that run the
/// corresponding verifier, so `Semipositive` always carries a primal witness
/// that passed [`verify_primal`] and `NotSemipositive` a dual witness that
/// passed [`verify_dual`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub primal: Option<Vector>,
    pub dual: Option<Vector>,
    pub margin: f64,
    pub method: Method,
    pub cone: CertifiedCone,
}

impl Certificate {
    /// Verifies `x` as a Lorentz semipositivity vector of `a`.
    pub fn try_primal(a: &Matrix, x: Vector, method: Method, tol: &Tolerances) -> Option<Self> {
        let check = verify_primal(a, &x, tol).ok()?;
        check.ok.then_some(Self {
            verdict: Verdict::Semipositive,
            primal: Some(x),
            dual: None,
            margin: check.margin,
            method,
            cone: CertifiedCone::Lorentz,
        })
    }

    /// Verifies `y` as a dual (alternative) witness for `a`.
    pub fn try_dual(a: &Matrix, y: Vector, method: Method, tol: &Tolerances) -> Option<Self> {
        if !verify_dual(a, &y, tol).ok()? {
            return None;
        }
        let image = a.transpose() * &y;
        let margin = crate::cone::margin(&image).min(crate::cone::margin(&(-&y)));
        Some(Self {
            verdict: Verdict::NotSemipositive,
            primal: None,
            dual: Some(y),
            margin,
            method,
            cone: CertifiedCone::Lorentz,
        })
    }

    /// Verifies `x` as an orthant semipositivity vector (`x >= 0`, `Ax > 0`).
    pub fn try_orthant(a: &Matrix, x: Vector, method: Method, tol: &Tolerances) -> Option<Self> {
        let check = verify_orthant(a, &x, tol).ok()?;
        check.ok.then_some(Self {
            verdict: Verdict::Semipositive,
            primal: Some(x),
            dual: None,
            margin: check.margin,
            method,
            cone: CertifiedCone::Orthant,
        })
    }

    pub fn no_verdict(method: Method) -> Self {
        Self {
            verdict: Verdict::NoVerdict,
            primal: None,
            dual: None,
            margin: 0.0,
            method,
            cone: CertifiedCone::Lorentz,
        }
    }

    pub fn undecided(best_margin: f64, method: Method) -> Self {
        Self {
            verdict: Verdict::Undecided,
            primal: None,
            dual: None,
            margin: best_margin,
            method,
            cone: CertifiedCone::Lorentz,
        }
    }

    pub fn is_definite(&self) -> bool {
        self.verdict.is_definite()
    }

    /// Re-runs the verifier matching the verdict. Indefinite certificates
    /// verify trivially.
    pub fn verify(&self, a: &Matrix, tol: &Tolerances) -> bool {
        match (self.verdict, self.cone) {
            (Verdict::Semipositive, CertifiedCone::Lorentz) => self
                .primal
                .as_ref()
                .and_then(|x| verify_primal(a, x, tol).ok())
                .is_some_and(|c| c.ok),
            (Verdict::Semipositive, CertifiedCone::Orthant) => self
                .primal
                .as_ref()
                .and_then(|x| verify_orthant(a, x, tol).ok())
                .is_some_and(|c| c.ok),
            (Verdict::NotSemipositive, _) => self
                .dual
                .as_ref()
                .and_then(|y| verify_dual(a, y, tol).ok())
                .unwrap_or(false),
            _ => true,
        }
    }
}
