//! Drivers that turn a rigid arrangement into certified pairs, plus Galois
//! classification, deduplication and independent re-verification.

mod census;
mod dedupe;
mod drivers;
mod report;
mod verify;

pub use census::{convention_census, CensusRow};
pub use dedupe::{dedupe_pairs, dedupe_representatives, DedupeKey};
pub use drivers::{run_algorithm_nonarithmetic, run_algorithm_rational, PipelineConfig, PipelineRun, RunLog};
pub use report::{render_certificate, render_line};
pub use verify::{verify_certificate, Transcript};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arrangement::{projectively_equivalent, Arrangement, ArrangementError};
use crate::numberfield::{FieldElement, FieldError, UniPoly};
use crate::splitting::{Parametrization, Plinth, Polygon, SplittingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("input arrangement is not rigid: tangent dimension {0}")]
    NotRigid(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Rational,
    Arithmetic,
    Nonarithmetic,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Rational => "rational",
            Classification::Arithmetic => "arithmetic",
            Classification::Nonarithmetic => "nonarithmetic",
        }
    }
}

/// How `σ · a1 = a2` is read when deciding whether a pair is arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithmeticMode {
    /// Equality of normalized line sets.
    #[default]
    Literal,
    /// Projective equivalence after applying `σ`.
    UpToPgl,
}

/// The conjugate arrangement, or the input itself over Q.
#[derive(Debug, Clone)]
pub struct GaloisImage {
    pub arrangement: Arrangement,
    /// Set when the field is Q and only the identity is available.
    pub identity_only: bool,
}

pub fn galois_image(a: &Arrangement) -> GaloisImage {
    if a.field().is_rational() {
        return GaloisImage {
            arrangement: a.clone(),
            identity_only: true,
        };
    }
    let arrangement = a
        .map_lines(|l| l.conjugate())
        .expect("conjugation is injective on lines");
    GaloisImage {
        arrangement,
        identity_only: false,
    }
}

fn automorphism_images(a: &Arrangement) -> Vec<Arrangement> {
    let g = galois_image(a);
    if g.identity_only {
        vec![a.clone()]
    } else {
        vec![a.clone(), g.arrangement]
    }
}

/// Whether some automorphism of the common field carries `a1` onto `a2`.
pub fn is_arithmetic_pair(a1: &Arrangement, a2: &Arrangement, mode: ArithmeticMode) -> bool {
    if a1.field() != a2.field() || a1.len() != a2.len() {
        return false;
    }
    let target = a2.line_set();
    automorphism_images(a1).iter().any(|img| match mode {
        ArithmeticMode::Literal => img.line_set() == target,
        ArithmeticMode::UpToPgl => projectively_equivalent(img, a2).is_some(),
    })
}

/// Both readings of the arithmetic test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticVerdicts {
    /// The reading that decided the classification.
    pub mode: ArithmeticMode,
    pub literal: bool,
    pub up_to_pgl: bool,
}

/// Classifies a pair; `mode` picks which verdict decides between
/// arithmetic and nonarithmetic.
pub fn classify_pair(a1: &Arrangement, a2: &Arrangement, mode: ArithmeticMode) -> (Classification, ArithmeticVerdicts) {
    let verdicts = ArithmeticVerdicts {
        mode,
        literal: is_arithmetic_pair(a1, a2, ArithmeticMode::Literal),
        up_to_pgl: is_arithmetic_pair(a1, a2, ArithmeticMode::UpToPgl),
    };
    let arithmetic = match mode {
        ArithmeticMode::Literal => verdicts.literal,
        ArithmeticMode::UpToPgl => verdicts.up_to_pgl,
    };
    let class = if a1.field().is_rational() && a2.field().is_rational() {
        Classification::Rational
    } else if arithmetic {
        Classification::Arithmetic
    } else {
        Classification::Nonarithmetic
    };
    (class, verdicts)
}

/// The recorded part of a closing polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaRecord {
    pub poly: UniPoly,
    pub parametrization: Parametrization,
    pub excluded: Vec<FieldElement>,
}

impl From<&crate::splitting::DeltaPolynomial> for DeltaRecord {
    fn from(d: &crate::splitting::DeltaPolynomial) -> Self {
        DeltaRecord {
            poly: d.poly.clone(),
            parametrization: d.parametrization.clone(),
            excluded: d.excluded.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    /// No root in the ground field of the stage; `roots` live in the
    /// extension named by the certificate field, which is
    /// `Q(sqrt(discriminant_class))`.
    Irreducible {
        discriminant_class: BigInt,
        roots: [FieldElement; 2],
    },
    /// Two distinct roots in the ground field.
    Split { roots: [FieldElement; 2] },
}

impl Factorization {
    pub fn roots(&self) -> &[FieldElement; 2] {
        match self {
            Factorization::Irreducible { roots, .. } | Factorization::Split { roots } => roots,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Factorization::Irreducible { .. } => "irreducible",
            Factorization::Split { .. } => "split",
        }
    }
}

/// One plinth of the construction chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    /// The plinth lives on the first `on_lines` lines of the final
    /// arrangements.
    pub on_lines: usize,
    pub plinth: Plinth,
    pub delta: DeltaRecord,
    pub factorization: Factorization,
    /// Splitting polygons at the two roots, over the certificate field.
    pub polygons: [Polygon; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityRecord {
    pub stage: String,
    pub lines: usize,
    pub dimension: usize,
}

/// Everything needed to re-check one pair from raw line data.
///
/// Line order in each final arrangement: the base, then for each stage the
/// extra lines it needed followed (for all but the last stage) by the
/// polygon picked by `branch`, then the last stage's polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCertificate {
    pub base: Arrangement,
    pub extra_lines: Vec<crate::projgeom::ProjLine>,
    pub plinth_chain: Vec<StageRecord>,
    /// Which root polygon (1 or 2) of each non-final stage was kept.
    pub branch: usize,
    pub final_pair: (Arrangement, Arrangement),
    pub classification: Classification,
    pub arithmetic: ArithmeticVerdicts,
    pub rigidity: Vec<RigidityRecord>,
    pub nonsplitting_witness: Polygon,
}

impl PairCertificate {
    pub fn field(&self) -> &crate::numberfield::Field {
        self.final_pair.0.field()
    }
}

#[cfg(test)]
mod tests;
