//! Built-in example arrangements.
//!
//! Coefficients are written as pairs `(a, b)` meaning `a + b*s`, where `s`
//! is the symbol used in the published equations. Within the MacLane data
//! `s` is a root of `s^2 - s + 1`, stored as `-w` in `Q(w)` with
//! `w^2 + w + 1 = 0`. In the Falk-Sturmfels data `s = w` with
//! `w^2 + w - 1 = 0`.

use std::collections::BTreeSet;

use crate::arrangement::{combinatorics, Arrangement};
use crate::pipeline::{PairCertificate, PipelineConfig};
use crate::numberfield::{Field, FieldDescriptor, FieldElement, Rational};
use crate::projgeom::ProjLine;
use crate::splitting::{Parametrization, Plinth};

type Coeff = (&'static str, &'static str);
type RawLine = [Coeff; 3];

pub fn eisenstein_field() -> Field {
    FieldDescriptor::quadratic(Rational::from(1), Rational::from(1)).expect("irreducible")
}

pub fn golden_field() -> Field {
    FieldDescriptor::quadratic(Rational::from(-1), Rational::from(1)).expect("irreducible")
}

/// The published symbol inside the stored field.
pub fn symbol(field: &Field) -> FieldElement {
    let w = FieldElement::generator(field).expect("quadratic field");
    if **field == *eisenstein_field() {
        -&w
    } else {
        w
    }
}

fn element(c: &Coeff, field: &Field) -> FieldElement {
    let a: Rational = c.0.parse().expect("fixture literal");
    let b: Rational = c.1.parse().expect("fixture literal");
    let base = FieldElement::from_rational(a, field);
    if b.is_zero() {
        base
    } else {
        &base + &symbol(field).scale(&b)
    }
}

fn line(raw: &RawLine, field: &Field) -> ProjLine {
    ProjLine::new([0, 1, 2].map(|k| element(&raw[k], field))).expect("nonzero fixture line")
}

fn lines(raw: &[RawLine], field: &Field) -> Vec<ProjLine> {
    raw.iter().map(|r| line(r, field)).collect()
}

fn labeled(field: &Field, ls: Vec<ProjLine>, first: usize) -> Arrangement {
    let labels = (first..first + ls.len()).map(|i| format!("L{i}")).collect();
    Arrangement::new(field, ls, Some(labels)).expect("distinct fixture lines")
}

const fn q(a: &'static str) -> Coeff {
    (a, "0")
}

/// Resolves pivots given by two lines each into the full point sets.
pub fn plinth_from_pairs(a: &Arrangement, support: &[usize], pivots: &[[usize; 2]]) -> Plinth {
    let c = combinatorics(a);
    let full = pivots
        .iter()
        .map(|pair| {
            c.points()
                .iter()
                .find(|p| p.contains(&pair[0]) && p.contains(&pair[1]))
                .expect("fixture pivot is a singular point")
                .clone()
        })
        .collect();
    Plinth::new(support.to_vec(), full)
}

// ---- MacLane ------------------------------------------------------------

const MACLANE_BASE: [RawLine; 5] = [
    [q("0"), q("0"), q("1")],
    [q("1"), q("0"), q("0")],
    [q("1"), q("0"), q("-1")],
    [q("0"), q("1"), q("0")],
    [q("0"), q("1"), q("-1")],
];

/// The rigid rational 5-line arrangement `L1 .. L5`.
pub fn maclane_base() -> Arrangement {
    let f = FieldDescriptor::rationals();
    labeled(&f, lines(&MACLANE_BASE, &f), 1)
}

/// Support `(L1, L2, L4)`, pivots `(L3 L4, L3 L5, L2 L5)`.
pub fn maclane_psi1() -> Plinth {
    plinth_from_pairs(&maclane_base(), &[0, 1, 3], &[[2, 3], [2, 4], [1, 4]])
}

/// The published parametrization of the first triangle: `Q1 = [-l : 1 : 0]`.
pub fn maclane_trace_parametrization(field: &Field) -> Parametrization {
    let t = |v: [i64; 3]| v.map(|c| FieldElement::from_int(c, field));
    Parametrization {
        base: t([0, 1, 0]),
        dir: t([-1, 0, 0]),
    }
}

/// `E1: x + l y - z`, `E2: (l - 1)x - l y + z`, `E3: (l - 1)x - y + z`.
pub fn maclane_triangle(lambda: &FieldElement) -> Vec<ProjLine> {
    let f = lambda.field();
    let one = FieldElement::one(f);
    let lm1 = lambda - &one;
    [
        [one.clone(), lambda.clone(), -&one],
        [lm1.clone(), -lambda, one.clone()],
        [lm1, -&one, one.clone()],
    ]
    .into_iter()
    .map(|t| ProjLine::new(t).expect("first coordinate is one"))
    .collect()
}

/// `ML1` (`s` as parameter) or `ML2` (its conjugate), lines `L1 .. L8`.
pub fn maclane(conjugate: bool) -> Arrangement {
    let f = eisenstein_field();
    let mut s = symbol(&f);
    if conjugate {
        s = s.conjugate();
    }
    let base = maclane_base().embed(&f).expect("rational lines");
    let mut ls = base.lines().to_vec();
    ls.extend(maclane_triangle(&s));
    labeled(&f, ls, 1)
}

const MACLANE_EXTRA: [RawLine; 2] = [
    [q("3"), ("-1", "2"), ("-1", "-1")],
    [q("3"), ("-2", "1"), ("-1", "-1")],
];

/// `ML1 + {L9, L10}`.
pub fn maclane_extended() -> Arrangement {
    let f = eisenstein_field();
    let mut ls = maclane(false).lines().to_vec();
    ls.extend(lines(&MACLANE_EXTRA, &f));
    labeled(&f, ls, 1)
}

/// Support `(L1, L3, L4)`, pivots `(L8 L10, L1 L10, L5 L9)`.
pub fn maclane_psi2() -> Plinth {
    plinth_from_pairs(&maclane_extended(), &[0, 2, 3], &[[7, 9], [0, 9], [4, 8]])
}

const MACLANE_TRIANGLES: [[RawLine; 3]; 2] = [
    [
        [("4", "-2"), ("-1", "2"), ("-2", "-1/2")],
        [("2", "-1"), ("-1", "1"), q("-1/2")],
        [q("6"), ("-3", "3"), ("-1", "-1")],
    ],
    [
        [("2", "-1"), ("1", "-1"), q("-2")],
        [q("3"), ("-2", "1"), ("-4", "2")],
        [("1", "1"), q("1"), q("-2")],
    ],
];

pub fn maclane_triangles() -> [Vec<ProjLine>; 2] {
    let f = eisenstein_field();
    MACLANE_TRIANGLES.map(|t| lines(&t, &f))
}

// ---- Falk-Sturmfels -----------------------------------------------------

const FALK_STURMFELS: [RawLine; 9] = [
    [q("0"), q("0"), q("1")],
    [q("1"), q("0"), q("0")],
    [q("1"), q("0"), q("-1")],
    [q("0"), q("1"), q("0")],
    [q("0"), q("1"), q("-1")],
    [q("1"), q("-1"), q("0")],
    [q("1"), ("0", "1"), q("-1")],
    [("0", "1"), ("0", "-1"), q("1")],
    [("0", "-1"), ("-1", "1"), q("0")],
];

/// `FS1`, lines `L1 .. L9`.
pub fn falk_sturmfels() -> Arrangement {
    let f = golden_field();
    labeled(&f, lines(&FALK_STURMFELS, &f), 1)
}

/// `FS1 + {L10}`, `L10: x - s z`.
pub fn falk_sturmfels_extended() -> Arrangement {
    let f = golden_field();
    let mut ls = falk_sturmfels().lines().to_vec();
    ls.push(line(&[q("1"), q("0"), ("0", "-1")], &f));
    labeled(&f, ls, 1)
}

/// Support `(L1, L2, L5)`, pivots `(L5 L7, L4 L10, L4 L8)`.
pub fn falk_sturmfels_psi2() -> Plinth {
    plinth_from_pairs(&falk_sturmfels_extended(), &[0, 1, 4], &[[4, 6], [3, 9], [3, 7]])
}

const FALK_STURMFELS_TRIANGLES: [[RawLine; 3]; 2] = [
    [
        [("2", "1"), ("-1", "-1"), ("0", "1")],
        [("-1", "1"), ("0", "-1"), ("-1", "2")],
        [("1", "-2"), ("2", "-3"), ("-1", "1")],
    ],
    [
        [("2", "1"), ("-3", "-1"), ("2", "1")],
        [("-1", "-1"), ("-2", "1"), q("1")],
        [q("-1"), ("2", "-1"), ("-1", "-1")],
    ],
];

pub fn falk_sturmfels_triangles() -> [Vec<ProjLine>; 2] {
    let f = golden_field();
    FALK_STURMFELS_TRIANGLES.map(|t| lines(&t, &f))
}

// ---- rational -----------------------------------------------------------

const RATIONAL_BASE: [RawLine; 10] = [
    [q("0"), q("2"), q("-1")],
    [q("1"), q("-1"), q("0")],
    [q("1"), q("1"), q("-1")],
    [q("1"), q("0"), q("0")],
    [q("2"), q("-2"), q("1")],
    [q("1"), q("0"), q("-1")],
    [q("2"), q("6"), q("-5")],
    [q("0"), q("1"), q("0")],
    [q("0"), q("1"), q("-1")],
    [q("0"), q("0"), q("1")],
];

pub fn rational_base() -> Arrangement {
    let f = FieldDescriptor::rationals();
    labeled(&f, lines(&RATIONAL_BASE, &f), 1)
}

/// Support `(L1, L2, L7)`, pivots `(L3 L6 L8, L1 L8 L9 L10, L5 L6)`.
pub fn rational_psi() -> Plinth {
    plinth_from_pairs(&rational_base(), &[0, 1, 6], &[[2, 5], [0, 7], [4, 5]])
}

const RATIONAL_TRIANGLES: [[RawLine; 3]; 2] = [
    [
        [q("3"), q("2"), q("-3")],
        [q("0"), q("5"), q("-3")],
        [q("6"), q("-2"), q("-3")],
    ],
    [
        [q("1"), q("-3"), q("-1")],
        [q("0"), q("2"), q("1")],
        [q("4"), q("6"), q("-13")],
    ],
];

pub fn rational_triangles() -> [Vec<ProjLine>; 2] {
    let f = FieldDescriptor::rationals();
    RATIONAL_TRIANGLES.map(|t| lines(&t, &f))
}

// ---- published pairs and the searches that reach them --------------------

fn pair_of(a: Arrangement, [t1, t2]: [Vec<ProjLine>; 2]) -> [Arrangement; 2] {
    let add = |t: &[ProjLine]| a.extended(t, None).expect("new fixture lines");
    [add(&t1), add(&t2)]
}

/// `ML1 + {L9, L10}` with each published triangle.
pub fn maclane_pair() -> [Arrangement; 2] {
    pair_of(maclane_extended(), maclane_triangles())
}

/// `FS1 + {L10}` with each published triangle.
pub fn falk_sturmfels_pair() -> [Arrangement; 2] {
    pair_of(falk_sturmfels_extended(), falk_sturmfels_triangles())
}

/// The rational base with each published triangle.
pub fn rational_pair() -> [Arrangement; 2] {
    pair_of(rational_base(), rational_triangles())
}

/// How a certificate's pair relates to a published one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMatch {
    Exact,
    /// Equal after conjugating every coefficient.
    Conjugate,
}

/// Compares the final line sets with `want` in either order, up to a
/// scalar per line, directly or after conjugation.
pub fn pair_match(c: &PairCertificate, want: &[Arrangement; 2]) -> Option<PairMatch> {
    let got: BTreeSet<_> = [c.final_pair.0.line_set(), c.final_pair.1.line_set()].into();
    let exact: BTreeSet<_> = want.iter().map(|a| a.line_set()).collect();
    if got == exact {
        return Some(PairMatch::Exact);
    }
    let conj: BTreeSet<BTreeSet<ProjLine>> = want
        .iter()
        .map(|a| a.lines().iter().map(|l| l.conjugate()).collect())
        .collect();
    (got == conj).then_some(PairMatch::Conjugate)
}

/// The 5-line base and a search restricted to the published plinths and
/// extra lines.
pub fn maclane_search() -> (Arrangement, PipelineConfig) {
    let ext = maclane_extended();
    let mut cfg = PipelineConfig::new(3);
    cfg.first_plinths = Some(vec![maclane_psi1()]);
    cfg.extra_line_pool = Some(ext.lines()[8..].to_vec());
    cfg.final_plinths = Some(vec![maclane_psi2()]);
    (maclane_base(), cfg)
}

/// `FS1` and a search restricted to `L10` and the published plinth.
pub fn falk_sturmfels_search() -> (Arrangement, PipelineConfig) {
    let ext = falk_sturmfels_extended();
    let mut cfg = PipelineConfig::new(3);
    cfg.extra_line_pool = Some(ext.lines()[9..].to_vec());
    cfg.final_plinths = Some(vec![falk_sturmfels_psi2()]);
    (falk_sturmfels(), cfg)
}

/// The rational base with only the published plinth.
pub fn rational_search() -> (Arrangement, PipelineConfig) {
    let mut cfg = PipelineConfig::new(3);
    cfg.final_plinths = Some(vec![rational_psi()]);
    (rational_base(), cfg)
}
