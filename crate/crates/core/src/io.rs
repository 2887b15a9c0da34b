//! JSON files for arrangements and certificates.
//!
//! Numbers are exact strings. Over Q a field element is written `"p/q"`;
//! over a quadratic field it is `["a0", "a1"]`, meaning `a0 + a1 w`. Input
//! accepts either form wherever the value is rational.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::arrangement::Arrangement;
use crate::numberfield::{Field, FieldDescriptor, FieldElement, Rational, UniPoly};
use crate::pipeline::{
    ArithmeticVerdicts, Classification, DeltaRecord, Factorization, PairCertificate, RigidityRecord, StageRecord,
};
use crate::projgeom::{ProjLine, Triple};
use crate::splitting::{Parametrization, Plinth, Polygon, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("schema error: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("invalid data: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::Invalid(msg.into())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ElemDto {
    Rational(Rational),
    Pair([Rational; 2]),
}

impl ElemDto {
    fn from_elem(x: &FieldElement) -> Self {
        if x.field().is_rational() {
            ElemDto::Rational(x.a0().clone())
        } else {
            ElemDto::Pair([x.a0().clone(), x.a1().clone()])
        }
    }

    fn to_elem(&self, f: &Field) -> Result<FieldElement, IoError> {
        match self {
            ElemDto::Rational(q) => Ok(FieldElement::from_rational(q.clone(), f)),
            ElemDto::Pair([a0, a1]) => {
                FieldElement::new(a0.clone(), a1.clone(), f).map_err(|e| invalid(e.to_string()))
            }
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            ElemDto::Rational(q) => q.is_zero(),
            ElemDto::Pair([a, b]) => a.is_zero() && b.is_zero(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct LineDto([ElemDto; 3]);

impl<'de> Deserialize<'de> for LineDto {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = <[ElemDto; 3]>::deserialize(d)?;
        if c.iter().all(|e| e.is_zero()) {
            return Err(D::Error::custom("line with all coefficients zero"));
        }
        Ok(LineDto(c))
    }
}

fn triple_dto(t: &Triple) -> [ElemDto; 3] {
    [ElemDto::from_elem(&t[0]), ElemDto::from_elem(&t[1]), ElemDto::from_elem(&t[2])]
}

fn triple_from(t: &[ElemDto; 3], f: &Field) -> Result<Triple, IoError> {
    Ok([t[0].to_elem(f)?, t[1].to_elem(f)?, t[2].to_elem(f)?])
}

fn line_dto(l: &ProjLine) -> LineDto {
    LineDto(triple_dto(l.coords()))
}

fn line_from(l: &LineDto, f: &Field) -> Result<ProjLine, IoError> {
    ProjLine::new(triple_from(&l.0, f)?).map_err(|e| invalid(e.to_string()))
}

fn lines_from(ls: &[LineDto], f: &Field) -> Result<Vec<ProjLine>, IoError> {
    ls.iter()
        .enumerate()
        .map(|(i, l)| line_from(l, f).map_err(|e| invalid(format!("line {}: {e}", i + 1))))
        .collect()
}

fn field_from(d: &FieldDescriptor) -> Result<Field, IoError> {
    match d {
        FieldDescriptor::Rationals => Ok(FieldDescriptor::rationals()),
        FieldDescriptor::Quadratic { min_poly: [c0, c1] } => {
            FieldDescriptor::quadratic(c0.clone(), c1.clone()).map_err(|e| invalid(e.to_string()))
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementDto {
    field: FieldDescriptor,
    lines: Vec<LineDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl ArrangementDto {
    fn from_arr(a: &Arrangement) -> Self {
        ArrangementDto {
            field: (**a.field()).clone(),
            lines: a.lines().iter().map(line_dto).collect(),
            labels: a.labels().map(|l| l.to_vec()),
        }
    }

    fn to_arr(&self) -> Result<Arrangement, IoError> {
        let f = field_from(&self.field)?;
        Arrangement::new(&f, lines_from(&self.lines, &f)?, self.labels.clone()).map_err(|e| invalid(e.to_string()))
    }
}

fn to_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("in-memory serialization");
    s.push('\n');
    s
}

pub fn arrangement_to_json(a: &Arrangement) -> String {
    to_text(&ArrangementDto::from_arr(a))
}

pub fn arrangement_from_json(text: &str) -> Result<Arrangement, IoError> {
    let dto: ArrangementDto = serde_json::from_str(text)?;
    dto.to_arr()
}

pub fn plinth_to_json(p: &Plinth) -> String {
    to_text(p)
}

pub fn plinth_from_json(text: &str) -> Result<Plinth, IoError> {
    let p: Plinth = serde_json::from_str(text)?;
    Ok(Plinth::new(p.support, p.pivots))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamDto {
    base: [ElemDto; 3],
    dir: [ElemDto; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaDto {
    field: FieldDescriptor,
    coefficients: Vec<ElemDto>,
    parametrization: ParamDto,
    excluded: Vec<ElemDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum FactorDto {
    Irreducible {
        discriminant_class: String,
        roots: [ElemDto; 2],
    },
    Split {
        roots: [ElemDto; 2],
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonDto {
    lambda: ElemDto,
    verdict: String,
    lines: Vec<LineDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageDto {
    on_lines: usize,
    plinth: Plinth,
    delta: DeltaDto,
    factorization: FactorDto,
    polygons: [PolygonDto; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDto {
    classification: Classification,
    arithmetic: ArithmeticVerdicts,
    field: FieldDescriptor,
    branch: usize,
    base: ArrangementDto,
    extra_lines: Vec<LineDto>,
    plinth_chain: Vec<StageDto>,
    final_pair: [ArrangementDto; 2],
    rigidity: Vec<RigidityRecord>,
    nonsplitting_witness: PolygonDto,
}

fn polygon_dto(p: &Polygon) -> PolygonDto {
    PolygonDto {
        lambda: ElemDto::from_elem(&p.lambda),
        verdict: p.verdict.name().to_string(),
        lines: p.lines.iter().map(line_dto).collect(),
    }
}

fn polygon_from(d: &PolygonDto, plinth: &Plinth, f: &Field) -> Result<Polygon, IoError> {
    let verdict = match d.verdict.as_str() {
        "splitting" => Verdict::Splitting,
        "nonsplitting" => Verdict::NonSplitting,
        other => return Err(invalid(format!("unknown polygon verdict {other:?}"))),
    };
    Ok(Polygon {
        plinth: plinth.clone(),
        lambda: d.lambda.to_elem(f)?,
        lines: lines_from(&d.lines, f)?,
        verdict,
    })
}

fn delta_dto(d: &DeltaRecord) -> DeltaDto {
    DeltaDto {
        field: (**d.poly.field()).clone(),
        coefficients: d.poly.coeffs().iter().map(ElemDto::from_elem).collect(),
        parametrization: ParamDto {
            base: triple_dto(&d.parametrization.base),
            dir: triple_dto(&d.parametrization.dir),
        },
        excluded: d.excluded.iter().map(ElemDto::from_elem).collect(),
    }
}

/// The certificate encoding of a closing polynomial, for embedding in
/// larger reports.
pub fn delta_value(d: &DeltaRecord) -> serde_json::Value {
    serde_json::to_value(delta_dto(d)).expect("in-memory serialization")
}

/// The certificate encoding of a polygon.
pub fn polygon_value(p: &Polygon) -> serde_json::Value {
    serde_json::to_value(polygon_dto(p)).expect("in-memory serialization")
}

/// The file encoding of an arrangement.
pub fn arrangement_value(a: &Arrangement) -> serde_json::Value {
    serde_json::to_value(ArrangementDto::from_arr(a)).expect("in-memory serialization")
}

/// Elements in the file encoding.
pub fn element_value(x: &FieldElement) -> serde_json::Value {
    serde_json::to_value(ElemDto::from_elem(x)).expect("in-memory serialization")
}

/// Pretty JSON with a trailing newline, as written to files.
pub fn value_to_text(v: &serde_json::Value) -> String {
    to_text(v)
}

fn stage_dto(s: &StageRecord) -> StageDto {
    let d = &s.delta;
    let roots = |r: &[FieldElement; 2]| [ElemDto::from_elem(&r[0]), ElemDto::from_elem(&r[1])];
    StageDto {
        on_lines: s.on_lines,
        plinth: s.plinth.clone(),
        delta: delta_dto(d),
        factorization: match &s.factorization {
            Factorization::Irreducible {
                discriminant_class,
                roots: r,
            } => FactorDto::Irreducible {
                discriminant_class: discriminant_class.to_string(),
                roots: roots(r),
            },
            Factorization::Split { roots: r } => FactorDto::Split { roots: roots(r) },
        },
        polygons: [polygon_dto(&s.polygons[0]), polygon_dto(&s.polygons[1])],
    }
}

fn stage_from(s: &StageDto, f: &Field) -> Result<StageRecord, IoError> {
    let g = field_from(&s.delta.field)?;
    let coeffs = s.delta.coefficients.iter().map(|c| c.to_elem(&g)).collect::<Result<Vec<_>, _>>()?;
    let parametrization = Parametrization {
        base: triple_from(&s.delta.parametrization.base, &g)?,
        dir: triple_from(&s.delta.parametrization.dir, &g)?,
    };
    let excluded = s.delta.excluded.iter().map(|c| c.to_elem(&g)).collect::<Result<Vec<_>, _>>()?;
    let roots = |r: &[ElemDto; 2]| -> Result<[FieldElement; 2], IoError> { Ok([r[0].to_elem(f)?, r[1].to_elem(f)?]) };
    let factorization = match &s.factorization {
        FactorDto::Irreducible {
            discriminant_class,
            roots: r,
        } => Factorization::Irreducible {
            discriminant_class: discriminant_class
                .parse::<BigInt>()
                .map_err(|_| invalid(format!("bad discriminant class {discriminant_class:?}")))?,
            roots: roots(r)?,
        },
        FactorDto::Split { roots: r } => Factorization::Split { roots: roots(r)? },
    };
    let plinth = Plinth::new(s.plinth.support.clone(), s.plinth.pivots.clone());
    Ok(StageRecord {
        on_lines: s.on_lines,
        polygons: [
            polygon_from(&s.polygons[0], &plinth, f)?,
            polygon_from(&s.polygons[1], &plinth, f)?,
        ],
        plinth,
        delta: DeltaRecord {
            poly: UniPoly::new(coeffs, &g),
            parametrization,
            excluded,
        },
        factorization,
    })
}

fn certificate_dto(c: &PairCertificate) -> CertificateDto {
    CertificateDto {
        classification: c.classification,
        arithmetic: c.arithmetic,
        field: (**c.field()).clone(),
        branch: c.branch,
        base: ArrangementDto::from_arr(&c.base),
        extra_lines: c.extra_lines.iter().map(line_dto).collect(),
        plinth_chain: c.plinth_chain.iter().map(stage_dto).collect(),
        final_pair: [
            ArrangementDto::from_arr(&c.final_pair.0),
            ArrangementDto::from_arr(&c.final_pair.1),
        ],
        rigidity: c.rigidity.clone(),
        nonsplitting_witness: polygon_dto(&c.nonsplitting_witness),
    }
}

fn certificate_from(d: &CertificateDto) -> Result<PairCertificate, IoError> {
    let f = field_from(&d.field)?;
    let chain = d
        .plinth_chain
        .iter()
        .enumerate()
        .map(|(i, s)| stage_from(s, &f).map_err(|e| invalid(format!("stage {}: {e}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let last = chain.last().ok_or_else(|| invalid("empty plinth chain"))?;
    let witness = polygon_from(&d.nonsplitting_witness, &last.plinth, &f)?;
    let f1 = d.final_pair[0].to_arr()?;
    let f2 = d.final_pair[1].to_arr()?;
    if f1.field() != &f || f2.field() != &f {
        return Err(invalid("final arrangements are not over the certificate field"));
    }
    Ok(PairCertificate {
        base: d.base.to_arr()?,
        extra_lines: lines_from(&d.extra_lines, &f)?,
        plinth_chain: chain,
        branch: d.branch,
        final_pair: (f1, f2),
        classification: d.classification,
        arithmetic: d.arithmetic,
        rigidity: d.rigidity.clone(),
        nonsplitting_witness: witness,
    })
}

pub fn certificate_to_json(c: &PairCertificate) -> String {
    to_text(&certificate_dto(c))
}

pub fn certificate_from_json(text: &str) -> Result<PairCertificate, IoError> {
    let dto: CertificateDto = serde_json::from_str(text)?;
    certificate_from(&dto)
}

/// A list of certificates as one JSON array.
pub fn certificates_to_json(cs: &[PairCertificate]) -> String {
    to_text(&cs.iter().map(certificate_dto).collect::<Vec<_>>())
}

/// Reads either a single certificate object or an array of them.
pub fn certificates_from_json(text: &str) -> Result<Vec<PairCertificate>, IoError> {
    let dtos: Vec<CertificateDto> = if text.trim_start().starts_with('[') {
        serde_json::from_str(text)?
    } else {
        vec![serde_json::from_str(text)?]
    };
    dtos.iter()
        .enumerate()
        .map(|(i, d)| certificate_from(d).map_err(|e| invalid(format!("certificate {}: {e}", i + 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn arrangement_round_trip_is_byte_identical() {
        for a in [fixtures::falk_sturmfels(), fixtures::rational_base(), fixtures::maclane(false)] {
            let text = arrangement_to_json(&a);
            let back = arrangement_from_json(&text).unwrap();
            assert_eq!(back, a);
            assert_eq!(arrangement_to_json(&back), text);
        }
    }

    #[test]
    fn hand_written_rational_file() {
        let text = r#"{"field": {"kind": "rational"},
            "lines": [["0", "2", "-1"], ["1", "-1", "0"], ["1", "1", "-1"], ["1", "0", "0"]]}"#;
        let a = arrangement_from_json(text).unwrap();
        assert_eq!(a.len(), 4);
        assert!(a.field().is_rational());
    }

    #[test]
    fn zero_line_is_a_schema_error_with_position() {
        let text = "{\"field\": {\"kind\": \"rational\"},\n \"lines\": [[\"1\", \"0\", \"0\"],\n [\"0\", \"0/5\", \"0\"]]}";
        match arrangement_from_json(text) {
            Err(IoError::Schema(e)) => {
                assert_eq!(e.line(), 3);
                assert!(e.to_string().contains("all coefficients zero"), "{e}");
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_number_reports_position() {
        let text = "{\"field\": {\"kind\": \"rational\"}, \"lines\": [[\"1\", \"x\", \"0\"]]}";
        let Err(IoError::Schema(e)) = arrangement_from_json(text) else {
            panic!("expected schema error")
        };
        assert_eq!(e.line(), 1);
        assert!(e.column() > 0);
    }

    #[test]
    fn quadratic_coefficient_over_q_is_rejected() {
        let text = r#"{"field": {"kind": "rational"}, "lines": [[["1", "1"], "0", "0"]]}"#;
        assert!(matches!(arrangement_from_json(text), Err(IoError::Invalid(_))));
    }

    #[test]
    fn plinth_format() {
        let p = Plinth::new(vec![0, 1, 3], vec![vec![3, 2], vec![2, 4], vec![1, 4]]);
        let text = plinth_to_json(&p);
        assert!(text.contains("\"support\""));
        assert_eq!(plinth_from_json(&text).unwrap(), p);
    }
}
