use super::plinth::{validate_plinth, Plinth};
use super::SplittingError;
use crate::arrangement::{combinatorics, Arrangement};
use crate::numberfield::{FieldElement, UniPoly};
use crate::projgeom::{det3, incident, meet, Param, ParamLine, ParamPoint, ProjLine, ProjPoint, Role, Triple};

/// `Q1(lambda) = base + lambda * dir`, both on the first support line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization {
    pub base: Triple,
    pub dir: Triple,
}

const AUX_LINES: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]];

impl Parametrization {
    /// `dir` is the meet of the first two support lines; `base` the first
    /// of the meets with `x = 0`, `y = 0`, `z = 0`, `x + y = 0` that exists
    /// and differs from it.
    pub fn canonical(s1: &ProjLine, s2: &ProjLine) -> Result<Self, SplittingError> {
        let c = meet(s1, s2)?;
        for aux in AUX_LINES {
            let m = ProjLine::from_ints(aux, s1.field())?;
            if &m == s1 {
                continue;
            }
            let b = meet(s1, &m)?;
            if b != c {
                return Ok(Parametrization {
                    base: b.coords().clone(),
                    dir: c.coords().clone(),
                });
            }
        }
        Err(SplittingError::Degenerate("no auxiliary point on the first support line".into()))
    }

    /// Arbitrary parametrization; both triples must lie on `s1` and be
    /// independent.
    pub fn custom(s1: &ProjLine, base: Triple, dir: Triple) -> Result<Self, SplittingError> {
        let b = ProjPoint::new(base.clone())?;
        let d = ProjPoint::new(dir.clone())?;
        if !incident(&b, s1) || !incident(&d, s1) {
            return Err(SplittingError::Precondition(
                "parametrization points must lie on the first support line".into(),
            ));
        }
        if b == d {
            return Err(SplittingError::Precondition("parametrization points coincide".into()));
        }
        Ok(Parametrization { base, dir })
    }

    pub fn family(&self) -> ParamPoint {
        ParamPoint::new(self.base.clone(), self.dir.clone())
    }
}

/// The closing polynomial of a plinth with the construction that produced it.
#[derive(Debug, Clone)]
pub struct DeltaPolynomial {
    pub poly: UniPoly,
    pub parametrization: Parametrization,
    /// Parameters removed as linear content along the chain, sorted.
    pub excluded: Vec<FieldElement>,
    /// `E_1 .. E_r` as families in the parameter.
    pub trace: Vec<ParamLine>,
    /// `Q_1 .. Q_r`, `Q_i` on support line `i`.
    pub chain: Vec<ParamPoint>,
    pub pivot_points: Vec<ProjPoint>,
}

impl DeltaPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn is_excluded(&self, lambda: &FieldElement) -> bool {
        self.excluded.contains(lambda)
    }
}

/// Coordinates of a pivot given by its line set.
pub fn pivot_point(a: &Arrangement, lines: &[usize]) -> Result<ProjPoint, SplittingError> {
    if lines.len() < 2 {
        return Err(SplittingError::InvalidPlinth(format!("pivot {lines:?} names fewer than two lines")));
    }
    Ok(meet(a.line(lines[0]), a.line(lines[1]))?)
}

pub fn delta_polynomial(a: &Arrangement, psi: &Plinth) -> Result<DeltaPolynomial, SplittingError> {
    check_plinth(a, psi)?;
    let param = Parametrization::canonical(a.line(psi.support[0]), a.line(psi.support[1]))?;
    delta_unchecked(a, psi, param)
}

/// Same as [`delta_polynomial`] with a caller-chosen parametrization.
pub fn delta_polynomial_with(
    a: &Arrangement,
    psi: &Plinth,
    param: Parametrization,
) -> Result<DeltaPolynomial, SplittingError> {
    check_plinth(a, psi)?;
    Parametrization::custom(a.line(psi.support[0]), param.base.clone(), param.dir.clone())?;
    delta_unchecked(a, psi, param)
}

fn check_plinth(a: &Arrangement, psi: &Plinth) -> Result<(), SplittingError> {
    let v = validate_plinth(&combinatorics(a), psi);
    if !v.ok() {
        return Err(SplittingError::InvalidPlinth(v.diagnostics.join("; ")));
    }
    Ok(())
}

fn strip_content<R: Role>(f: Param<R>, excluded: &mut Vec<FieldElement>) -> Param<R> {
    match f.linear_content() {
        Some((v, Some(root))) => {
            if !excluded.contains(&root) {
                excluded.push(root);
            }
            let zero = v.clone().map(|x| FieldElement::zero(x.field()));
            Param::new(v, zero)
        }
        _ => f,
    }
}

fn delta_unchecked(a: &Arrangement, psi: &Plinth, param: Parametrization) -> Result<DeltaPolynomial, SplittingError> {
    let r = psi.len();
    let pivots = psi
        .pivots
        .iter()
        .map(|p| pivot_point(a, p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut excluded = Vec::new();
    let mut q = strip_content(param.family(), &mut excluded);
    let mut trace = Vec::with_capacity(r);
    let mut chain = Vec::with_capacity(r);
    for i in 0..r {
        let e = strip_content(q.cross_const(pivots[i].coords())?, &mut excluded);
        chain.push(q);
        if i + 1 < r {
            q = strip_content(e.cross_const(a.line(psi.support[i + 1]).coords())?, &mut excluded);
        } else {
            q = chain[0].clone();
        }
        trace.push(e);
    }
    let s1 = a.line(psi.support[0]).coords();
    let (e1, er) = (&trace[0], &trace[r - 1]);
    let c0 = det3(s1, &e1.base, &er.base);
    let c1 = &det3(s1, &e1.base, &er.dir) + &det3(s1, &e1.dir, &er.base);
    let c2 = det3(s1, &e1.dir, &er.dir);
    excluded.sort();
    Ok(DeltaPolynomial {
        poly: UniPoly::new(vec![c0, c1, c2], a.field()),
        parametrization: param,
        excluded,
        trace,
        chain,
        pivot_points: pivots,
    })
}

/// Direct evaluation of the closing determinant at one parameter, without
/// going through the polynomial.
pub fn closure_determinant(a: &Arrangement, psi: &Plinth, d: &DeltaPolynomial, lambda: &FieldElement) -> FieldElement {
    let r = psi.len();
    det3(
        a.line(psi.support[0]).coords(),
        &d.trace[0].raw_at(lambda),
        &d.trace[r - 1].raw_at(lambda),
    )
}
