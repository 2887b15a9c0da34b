//! Projective plane primitives over an exact field.
//!
//! Points and lines share one representation: a homogeneous triple
//! normalized so that its first nonzero entry is 1. The role parameter
//! only tags which side of the duality a triple lives on.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use crate::numberfield::{Field, FieldElement, FieldError};

pub type Triple = [FieldElement; 3];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("join/meet of identical arguments")]
    IdenticalArguments,
    #[error("homogeneous triple is identically zero")]
    ZeroTriple,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub trait Role: 'static {
    type Dual: Role;
    const NAME: &'static str;
}

#[derive(Debug, Clone, Copy)]
pub enum PointRole {}
#[derive(Debug, Clone, Copy)]
pub enum LineRole {}

impl Role for PointRole {
    type Dual = LineRole;
    const NAME: &'static str = "point";
}

impl Role for LineRole {
    type Dual = PointRole;
    const NAME: &'static str = "line";
}

/// A normalized homogeneous triple playing the role `R`.
pub struct Homog<R: Role> {
    coords: Triple,
    _role: PhantomData<R>,
}

pub type ProjPoint = Homog<PointRole>;
pub type ProjLine = Homog<LineRole>;

pub fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot(a: &Triple, b: &Triple) -> FieldElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn det3(a: &Triple, b: &Triple, c: &Triple) -> FieldElement {
    dot(a, &cross(b, c))
}

pub fn is_zero_triple(t: &Triple) -> bool {
    t.iter().all(|c| c.is_zero())
}

pub fn scale_triple(t: &Triple, s: &FieldElement) -> Triple {
    [&t[0] * s, &t[1] * s, &t[2] * s]
}

pub fn add_triple(a: &Triple, b: &Triple) -> Triple {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

/// Divides by the first nonzero entry.
pub fn normalize(t: &Triple) -> Option<Triple> {
    let pivot = t.iter().find(|c| !c.is_zero())?;
    let inv = pivot.inverse().ok()?;
    Some(scale_triple(t, &inv))
}

pub fn triple_from_ints(v: [i64; 3], field: &Field) -> Triple {
    v.map(|c| FieldElement::from_int(c, field))
}

impl<R: Role> Homog<R> {
    pub fn new(t: Triple) -> Result<Self, GeomError> {
        let coords = normalize(&t).ok_or(GeomError::ZeroTriple)?;
        Ok(Homog {
            coords,
            _role: PhantomData,
        })
    }

    pub fn from_ints(v: [i64; 3], field: &Field) -> Result<Self, GeomError> {
        Self::new(triple_from_ints(v, field))
    }

    pub fn coords(&self) -> &Triple {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    /// Cross product with another element of the same role: `join` for
    /// points, `meet` for lines.
    pub fn cross_with(&self, other: &Self) -> Result<Homog<R::Dual>, GeomError> {
        let t = cross(&self.coords, &other.coords);
        if is_zero_triple(&t) {
            return Err(GeomError::IdenticalArguments);
        }
        Homog::new(t)
    }

    pub fn conjugate(&self) -> Self {
        Homog {
            coords: self.coords.clone().map(|c| c.conjugate()),
            _role: PhantomData,
        }
    }

    /// Moves a triple with rational entries into another field.
    pub fn embed(&self, target: &Field) -> Result<Self, GeomError> {
        let c = &self.coords;
        Homog::new([c[0].embed(target)?, c[1].embed(target)?, c[2].embed(target)?])
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.as_rational().is_some())
    }

    /// Reinterprets the triple on the dual side.
    pub fn dual(&self) -> Homog<R::Dual> {
        Homog {
            coords: self.coords.clone(),
            _role: PhantomData,
        }
    }
}

pub fn join(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, GeomError> {
    p.cross_with(q)
}

pub fn meet(l: &ProjLine, m: &ProjLine) -> Result<ProjPoint, GeomError> {
    l.cross_with(m)
}

pub fn incident(p: &ProjPoint, l: &ProjLine) -> bool {
    dot(p.coords(), l.coords()).is_zero()
}

pub fn concurrent(l1: &ProjLine, l2: &ProjLine, l3: &ProjLine) -> bool {
    det3(l1.coords(), l2.coords(), l3.coords()).is_zero()
}

pub fn collinear(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> bool {
    det3(p1.coords(), p2.coords(), p3.coords()).is_zero()
}

impl<R: Role> Clone for Homog<R> {
    fn clone(&self) -> Self {
        Homog {
            coords: self.coords.clone(),
            _role: PhantomData,
        }
    }
}

impl<R: Role> PartialEq for Homog<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl<R: Role> Eq for Homog<R> {}

impl<R: Role> Hash for Homog<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl<R: Role> PartialOrd for Homog<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<R: Role> Ord for Homog<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl<R: Role> fmt::Debug for Homog<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        write!(f, "{}[{} : {} : {}]", R::NAME, c[0], c[1], c[2])
    }
}

/// A family `base + lambda * dir` of triples, linear in the parameter.
pub struct Param<R: Role> {
    pub base: Triple,
    pub dir: Triple,
    _role: PhantomData<R>,
}

pub type ParamPoint = Param<PointRole>;
pub type ParamLine = Param<LineRole>;

impl<R: Role> Clone for Param<R> {
    fn clone(&self) -> Self {
        Param {
            base: self.base.clone(),
            dir: self.dir.clone(),
            _role: PhantomData,
        }
    }
}

impl<R: Role> fmt::Debug for Param<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<{:?} + t*{:?}>", R::NAME, self.base, self.dir)
    }
}

impl<R: Role> Param<R> {
    pub fn new(base: Triple, dir: Triple) -> Self {
        Param {
            base,
            dir,
            _role: PhantomData,
        }
    }

    pub fn raw_at(&self, lambda: &FieldElement) -> Triple {
        add_triple(&self.base, &scale_triple(&self.dir, lambda))
    }

    pub fn eval(&self, lambda: &FieldElement) -> Result<Homog<R>, GeomError> {
        let t = self.raw_at(lambda);
        if is_zero_triple(&t) {
            return Err(GeomError::Degenerate(format!(
                "{} family vanishes at parameter {lambda}",
                R::NAME
            )));
        }
        Homog::new(t)
    }

    /// Coordinate-wise cross product with a constant triple; the result is
    /// again linear in the parameter.
    pub fn cross_const(&self, g: &Triple) -> Result<Param<R::Dual>, GeomError> {
        let base = cross(&self.base, g);
        let dir = cross(&self.dir, g);
        if is_zero_triple(&base) && is_zero_triple(&dir) {
            return Err(GeomError::Degenerate(format!(
                "{} family collapses onto a constant",
                R::NAME
            )));
        }
        Ok(Param::new(base, dir))
    }

    /// If `base` and `dir` are proportional the family is a constant
    /// triple times a linear factor `(alpha + beta*lambda)`. Returns the
    /// constant triple and the root of the factor (`None` when `dir = 0`).
    pub fn linear_content(&self) -> Option<(Triple, Option<FieldElement>)> {
        if is_zero_triple(&self.dir) {
            return Some((self.base.clone(), None));
        }
        if !is_zero_triple(&cross(&self.base, &self.dir)) {
            return None;
        }
        // base = mu * dir, so base + l dir = (mu + l) dir
        let k = self.dir.iter().position(|c| !c.is_zero())?;
        let mu = &self.base[k] / &self.dir[k];
        Some((self.dir.clone(), Some(-&mu)))
    }
}

pub fn param_eval<R: Role>(f: &Param<R>, lambda: &FieldElement) -> Result<Homog<R>, GeomError> {
    f.eval(lambda)
}

pub fn param_cross<R: Role>(f: &Param<R>, g: &Triple) -> Result<Param<R::Dual>, GeomError> {
    f.cross_const(g)
}

pub type Matrix3 = [[FieldElement; 3]; 3];

/// A projective transformation, stored as the 3x3 matrix acting on point
/// coordinates. Lines transform by the adjugate transpose.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjTransform {
    m: Matrix3,
}

impl fmt::Debug for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjTransform{:?}", self.m)
    }
}

fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            &(&(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])) + &(&a[i][2] * &b[2][j])
        })
    })
}

fn mat_vec(a: &Matrix3, v: &Triple) -> Triple {
    std::array::from_fn(|i| dot(&a[i], v))
}

fn transpose(a: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

fn columns(c0: &Triple, c1: &Triple, c2: &Triple) -> Matrix3 {
    std::array::from_fn(|i| [c0[i].clone(), c1[i].clone(), c2[i].clone()])
}

/// Adjugate: `adj(a) * a = det(a) * I`.
fn adjugate(a: &Matrix3) -> Matrix3 {
    let cols: [Triple; 3] = std::array::from_fn(|j| std::array::from_fn(|i| a[i][j].clone()));
    // rows of adj are cross products of pairs of columns
    [
        cross(&cols[1], &cols[2]),
        cross(&cols[2], &cols[0]),
        cross(&cols[0], &cols[1]),
    ]
}

fn det_matrix(a: &Matrix3) -> FieldElement {
    det3(&a[0], &a[1], &a[2])
}

impl ProjTransform {
    pub fn new(m: Matrix3) -> Result<Self, GeomError> {
        if det_matrix(&m).is_zero() {
            return Err(GeomError::Degenerate("singular matrix".into()));
        }
        let pivot = m
            .iter()
            .flatten()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(GeomError::ZeroTriple)?;
        let inv = pivot.inverse()?;
        Ok(ProjTransform {
            m: std::array::from_fn(|i| std::array::from_fn(|j| &m[i][j] * &inv)),
        })
    }

    pub fn identity(field: &Field) -> Self {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| FieldElement::from_int((i == j) as i64, field))
        });
        ProjTransform { m }
    }

    pub fn diagonal(d: [FieldElement; 3]) -> Result<Self, GeomError> {
        let field = d[0].field().clone();
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i == j {
                    d[i].clone()
                } else {
                    FieldElement::zero(&field)
                }
            })
        });
        ProjTransform::new(m)
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.m
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        Homog::new(mat_vec(&self.m, p.coords())).expect("invertible map sends nonzero to nonzero")
    }

    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let adj_t = transpose(&adjugate(&self.m));
        Homog::new(mat_vec(&adj_t, l.coords())).expect("invertible map sends nonzero to nonzero")
    }

    /// The transformation whose action on line coordinates is `m`.
    pub fn from_line_matrix(m: &Matrix3) -> Result<Self, GeomError> {
        ProjTransform::new(transpose(&adjugate(m)))
    }

    pub fn compose(&self, other: &ProjTransform) -> Result<Self, GeomError> {
        ProjTransform::new(mat_mul(&self.m, &other.m))
    }
}

pub trait Transformable {
    fn transformed(&self, t: &ProjTransform) -> Self;
}

impl Transformable for ProjPoint {
    fn transformed(&self, t: &ProjTransform) -> Self {
        t.apply_point(self)
    }
}

impl Transformable for ProjLine {
    fn transformed(&self, t: &ProjTransform) -> Self {
        t.apply_line(self)
    }
}

pub fn apply<T: Transformable>(t: &ProjTransform, x: &T) -> T {
    x.transformed(t)
}

/// The matrix sending `e1, e2, e3, (1,1,1)` to the given quadruple.
fn frame_matrix(p: &[ProjPoint; 4]) -> Result<Matrix3, GeomError> {
    let [a, b, c, d] = [p[0].coords(), p[1].coords(), p[2].coords(), p[3].coords()];
    let det = det3(a, b, c);
    if det.is_zero() {
        return Err(GeomError::Degenerate("first three points collinear".into()));
    }
    // Cramer, up to the common factor det
    let k = [det3(d, b, c), det3(a, d, c), det3(a, b, d)];
    if k.iter().any(|x| x.is_zero()) {
        return Err(GeomError::Degenerate(
            "fourth point collinear with two others".into(),
        ));
    }
    Ok(columns(
        &scale_triple(a, &k[0]),
        &scale_triple(b, &k[1]),
        &scale_triple(c, &k[2]),
    ))
}

/// The unique projective transformation sending `src[i]` to `dst[i]`.
pub fn frame_transform(
    src: &[ProjPoint; 4],
    dst: &[ProjPoint; 4],
) -> Result<ProjTransform, GeomError> {
    let ms = frame_matrix(src)?;
    let md = frame_matrix(dst)?;
    ProjTransform::new(mat_mul(&md, &adjugate(&ms)))
}

/// The transformation sending lines `src[i]` to lines `dst[i]`.
pub fn line_frame_transform(
    src: &[ProjLine; 4],
    dst: &[ProjLine; 4],
) -> Result<ProjTransform, GeomError> {
    let s: [ProjPoint; 4] = std::array::from_fn(|i| src[i].dual());
    let d: [ProjPoint; 4] = std::array::from_fn(|i| dst[i].dual());
    let line_map = frame_transform(&s, &d)?;
    ProjTransform::from_line_matrix(line_map.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{FieldDescriptor, Rational};

    fn qf() -> Field {
        FieldDescriptor::rationals()
    }

    fn pt(v: [i64; 3]) -> ProjPoint {
        ProjPoint::from_ints(v, &qf()).unwrap()
    }

    fn ln(v: [i64; 3]) -> ProjLine {
        ProjLine::from_ints(v, &qf()).unwrap()
    }

    #[test]
    fn join_meet_examples() {
        assert_eq!(meet(&ln([0, 0, 1]), &ln([1, 0, 0])).unwrap(), pt([0, 1, 0]));
        assert_eq!(meet(&ln([1, 0, -1]), &ln([0, 1, -1])).unwrap(), pt([1, 1, 1]));
        assert_eq!(join(&pt([1, 0, 1]), &pt([0, 1, 0])).unwrap(), ln([1, 0, -1]));
        assert_eq!(
            join(&pt([1, 0, 1]), &pt([2, 0, 2])),
            Err(GeomError::IdenticalArguments)
        );
    }

    #[test]
    fn concurrency() {
        assert!(concurrent(&ln([1, 0, 0]), &ln([0, 1, 0]), &ln([1, 1, 0])));
        assert!(!concurrent(&ln([1, 0, 0]), &ln([0, 1, 0]), &ln([0, 0, 1])));
        assert!(concurrent(&ln([0, 0, 1]), &ln([1, 0, 0]), &ln([1, 0, -1])));
    }

    #[test]
    fn normalization() {
        let p = pt([0, 2, -4]);
        assert_eq!(p.coords()[1], FieldElement::one(&qf()));
        assert_eq!(p.coords()[2], FieldElement::from_int(-2, &qf()));
        assert!(ProjPoint::from_ints([0, 0, 0], &qf()).is_err());
    }

    #[test]
    fn parametric_families() {
        let f = qf();
        let fam = ParamPoint::new(triple_from_ints([0, 1, 0], &f), triple_from_ints([-1, 0, 0], &f));
        assert_eq!(fam.eval(&FieldElement::one(&f)).unwrap(), pt([1, -1, 0]));
        assert_eq!(fam.eval(&FieldElement::zero(&f)).unwrap(), pt([0, 1, 0]));

        let e1 = fam.cross_const(&triple_from_ints([1, 0, 1], &f)).unwrap();
        assert_eq!(e1.dir, triple_from_ints([0, 1, 0], &f));
        for l in -3..=3 {
            let lam = FieldElement::from_int(l, &f);
            assert_eq!(e1.eval(&lam).unwrap(), ln([1, l, -1]));
        }

        let degenerate = ParamPoint::new(triple_from_ints([2, 0, 2], &f), triple_from_ints([1, 0, 1], &f));
        assert!(degenerate.eval(&FieldElement::from_int(-2, &f)).is_err());
        let (_, root) = degenerate.linear_content().unwrap();
        assert_eq!(root, Some(FieldElement::from_int(-2, &f)));

        let constant = ParamPoint::new(triple_from_ints([1, 2, 3], &f), triple_from_ints([0, 0, 0], &f));
        assert!(constant.cross_const(&triple_from_ints([1, 2, 3], &f)).is_err());
    }

    fn standard_frame() -> [ProjPoint; 4] {
        [pt([1, 0, 0]), pt([0, 1, 0]), pt([0, 0, 1]), pt([1, 1, 1])]
    }

    #[test]
    fn frames() {
        let f = qf();
        let id = frame_transform(&standard_frame(), &standard_frame()).unwrap();
        assert_eq!(id, ProjTransform::identity(&f));

        let perm = [pt([0, 1, 0]), pt([0, 0, 1]), pt([1, 0, 0]), pt([1, 1, 1])];
        let t = frame_transform(&standard_frame(), &perm).unwrap();
        assert_eq!(t.apply_point(&pt([1, 0, 0])), pt([0, 1, 0]));
        assert_eq!(t.matrix()[1][0], FieldElement::one(&f));

        let dst = [pt([1, 0, 0]), pt([0, 1, 0]), pt([0, 0, 1]), pt([1, 2, 3])];
        let t = frame_transform(&standard_frame(), &dst).unwrap();
        let d = ProjTransform::diagonal([1, 2, 3].map(|c| FieldElement::from_int(c, &f))).unwrap();
        assert_eq!(t, d);
        assert_eq!(apply(&d, &pt([1, 1, 1])), pt([1, 2, 3]));

        let bad = [pt([1, 0, 0]), pt([0, 1, 0]), pt([1, 1, 0]), pt([1, 1, 1])];
        assert!(frame_transform(&bad, &standard_frame()).is_err());
    }

    #[test]
    fn transforms_preserve_incidence() {
        let f = qf();
        let m: Matrix3 = [[2, 1, 0], [0, 1, -1], [3, 0, 1]]
            .map(|r| r.map(|c| FieldElement::from_int(c, &f)));
        let t = ProjTransform::new(m).unwrap();
        let l = ln([1, -2, 3]);
        for p in [[2, 1, 0], [3, 0, -1], [-1, 1, 1]] {
            let p = pt(p);
            assert!(incident(&p, &l));
            assert!(incident(&apply(&t, &p), &apply(&t, &l)));
        }
        let lines = [ln([1, 0, 0]), ln([0, 1, 0]), ln([0, 0, 1]), ln([1, 1, 1])];
        let images = lines.clone().map(|l| t.apply_line(&l));
        let back = line_frame_transform(&lines, &images).unwrap();
        assert_eq!(back, t);
        let half = FieldElement::from_rational(Rational::new(1, 2), &f);
        assert!(ProjTransform::diagonal([half.clone(), half.clone(), FieldElement::zero(&f)]).is_err());
    }
}
