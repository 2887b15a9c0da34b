use std::collections::BTreeSet;

use super::delta::{delta_polynomial, DeltaPolynomial};
use super::plinth::Plinth;
use super::SplittingError;
use crate::arrangement::{combinatorics, validate_combinatorics, Arrangement, Combinatorics};
use crate::numberfield::{solve_quadratic, FieldElement, QuadraticSolution};
use crate::projgeom::{concurrent, incident, ProjLine};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    Splitting,
    NonSplitting,
    Degenerate(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Splitting => "splitting",
            Verdict::NonSplitting => "nonsplitting",
            Verdict::Degenerate(_) => "degenerate",
        }
    }
}

/// The polygon `E_1 .. E_r` obtained at one parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub plinth: Plinth,
    pub lambda: FieldElement,
    pub lines: Vec<ProjLine>,
    pub verdict: Verdict,
}

/// The incidences a generic polygon on `psi` must create, with the new
/// lines numbered `n .. n + r`. When `closed` is false the closing point on
/// the first support line is replaced by three double points.
///
/// Fails when the mandated incidences contradict each other (two new lines
/// forced through two common points).
pub fn predicted_combinatorics(c: &Combinatorics, psi: &Plinth, closed: bool) -> Result<Combinatorics, String> {
    let n = c.n_lines();
    let r = psi.len();
    let mut points: Vec<Vec<usize>> = c
        .points()
        .iter()
        .map(|p| {
            let mut q = p.clone();
            for (i, piv) in psi.pivots.iter().enumerate() {
                if piv == p {
                    q.push(n + i);
                }
            }
            q
        })
        .collect();
    for i in 1..r {
        points.push(vec![psi.support[i], n + i - 1, n + i]);
    }
    if closed {
        points.push(vec![psi.support[0], n + r - 1, n]);
    }
    let mut covered = vec![false; (n + r) * (n + r)];
    for p in &points {
        for &x in p {
            for &y in p {
                covered[x * (n + r) + y] = true;
            }
        }
    }
    for e in n..n + r {
        for m in 0..n + r {
            if m != e && !covered[e * (n + r) + m] {
                covered[e * (n + r) + m] = true;
                covered[m * (n + r) + e] = true;
                points.push(vec![m, e]);
            }
        }
    }
    let out = Combinatorics::new(n + r, points);
    let v = validate_combinatorics(&out);
    if !v.ok() {
        return Err(format!("mandated incidences are inconsistent: {}", v.diagnostics[0]));
    }
    Ok(out)
}

fn point_label(a: &Arrangement, p: &[usize]) -> String {
    let names: Vec<String> = p.iter().map(|&i| a.label(i)).collect();
    format!("{{{}}}", names.join(", "))
}

/// First difference between the actual and predicted incidences.
fn first_mismatch(enlarged: &Arrangement, actual: &Combinatorics, predicted: &Combinatorics) -> Option<String> {
    let a: BTreeSet<&Vec<usize>> = actual.points().iter().collect();
    let p: BTreeSet<&Vec<usize>> = predicted.points().iter().collect();
    if let Some(x) = a.difference(&p).next() {
        return Some(format!("unexpected point {}", point_label(enlarged, x)));
    }
    p.difference(&a)
        .next()
        .map(|x| format!("missing point {}", point_label(enlarged, x)))
}

fn polygon_labels(a: &Arrangement, r: usize) -> Vec<String> {
    a.all_labels()
        .into_iter()
        .chain((1..=r).map(|i| format!("E{i}")))
        .collect()
}

/// Evaluates the trace at `lambda` and classifies the result.
///
/// Checks run in order: nonvanishing lines, closure against `Δ`, pivot and
/// chain incidences, distinctness, then the full incidence structure of
/// the enlarged arrangement against [`predicted_combinatorics`].
pub fn build_polygon(
    a: &Arrangement,
    psi: &Plinth,
    d: &DeltaPolynomial,
    lambda: &FieldElement,
) -> Result<Polygon, SplittingError> {
    let lambda = lambda.embed(a.field())?;
    if d.is_excluded(&lambda) {
        return Err(SplittingError::ExcludedParameter(lambda.to_string()));
    }
    let r = psi.len();
    let mut lines = Vec::with_capacity(r);
    for (i, e) in d.trace.iter().enumerate() {
        match e.eval(&lambda) {
            Ok(l) => lines.push(l),
            Err(_) => {
                return Ok(Polygon {
                    plinth: psi.clone(),
                    lambda,
                    lines: Vec::new(),
                    verdict: Verdict::Degenerate(format!("E{} vanishes", i + 1)),
                })
            }
        }
    }
    let verdict = classify(a, psi, d, &lambda, &lines);
    Ok(Polygon {
        plinth: psi.clone(),
        lambda,
        lines,
        verdict,
    })
}

fn classify(a: &Arrangement, psi: &Plinth, d: &DeltaPolynomial, lambda: &FieldElement, lines: &[ProjLine]) -> Verdict {
    let r = psi.len();
    let s = |i: usize| a.line(psi.support_line(i));
    let closed = concurrent(s(0), &lines[0], &lines[r - 1]);
    if closed != d.poly.eval(lambda).is_zero() {
        return Verdict::Degenerate("closure determinant disagrees with the polynomial".into());
    }
    for i in 0..r {
        if !incident(&d.pivot_points[i], &lines[i]) {
            return Verdict::Degenerate(format!("E{} misses its pivot", i + 1));
        }
    }
    for i in 0..r - 1 {
        if !concurrent(&lines[i], &lines[i + 1], s(i + 1)) {
            return Verdict::Degenerate(format!("E{} and E{} do not meet on support line {}", i + 1, i + 2, i + 2));
        }
    }
    for (i, e) in lines.iter().enumerate() {
        if let Some(k) = a.position(e) {
            return Verdict::Degenerate(format!("E{} coincides with {}", i + 1, a.label(k)));
        }
        if let Some(j) = lines[..i].iter().position(|f| f == e) {
            return Verdict::Degenerate(format!("E{} coincides with E{}", i + 1, j + 1));
        }
    }
    let predicted = match predicted_combinatorics(&combinatorics(a), psi, closed) {
        Ok(p) => p,
        Err(e) => return Verdict::Degenerate(e),
    };
    let all: Vec<ProjLine> = a.lines().iter().chain(lines).cloned().collect();
    let enlarged = match Arrangement::new(a.field(), all, Some(polygon_labels(a, r))) {
        Ok(x) => x,
        Err(e) => return Verdict::Degenerate(e.to_string()),
    };
    let actual = combinatorics(&enlarged);
    if let Some(why) = first_mismatch(&enlarged, &actual, &predicted) {
        return Verdict::Degenerate(format!("not generic: {why}"));
    }
    if closed {
        Verdict::Splitting
    } else {
        Verdict::NonSplitting
    }
}

#[derive(Debug, Clone)]
pub enum SplittingOutcome {
    /// `Δ` has degree two and no root in the ground field.
    Irreducible(DeltaPolynomial),
    /// Both roots give splitting polygons, in canonical root order.
    Pairs {
        delta: DeltaPolynomial,
        first: Polygon,
        second: Polygon,
    },
    None {
        delta: Option<DeltaPolynomial>,
        reason: String,
    },
}

/// Computes `Δ` and, when it splits, both root polygons.
pub fn find_splitting_polygons(a: &Arrangement, psi: &Plinth) -> SplittingOutcome {
    let d = match delta_polynomial(a, psi) {
        Ok(d) => d,
        Err(e) => {
            return SplittingOutcome::None {
                delta: None,
                reason: e.to_string(),
            }
        }
    };
    splitting_from_delta(a, psi, d)
}

pub fn splitting_from_delta(a: &Arrangement, psi: &Plinth, d: DeltaPolynomial) -> SplittingOutcome {
    let none = |d: DeltaPolynomial, reason: String| SplittingOutcome::None { delta: Some(d), reason };
    let sol = match solve_quadratic(&d.poly) {
        Ok(s) => s,
        Err(e) => return none(d, e.to_string()),
    };
    let (l1, l2) = match sol {
        QuadraticSolution::Irreducible { .. } => return SplittingOutcome::Irreducible(d),
        QuadraticSolution::LinearOrConstant(_) => {
            let deg = d.degree().map_or("-inf".to_string(), |k| k.to_string());
            return none(d, format!("degree {deg} is below 2"));
        }
        QuadraticSolution::Roots(x, y) if x == y => return none(d, format!("double root {x}")),
        QuadraticSolution::Roots(x, y) => (x, y),
    };
    let mut polys = Vec::with_capacity(2);
    for l in [&l1, &l2] {
        match build_polygon(a, psi, &d, l) {
            Ok(p) if p.verdict == Verdict::Splitting => polys.push(p),
            Ok(p) => {
                let why = match &p.verdict {
                    Verdict::Degenerate(w) => w.clone(),
                    v => v.name().to_string(),
                };
                return none(d, format!("root {l}: {why}"));
            }
            Err(e) => return none(d, format!("root {l}: {e}")),
        }
    }
    let second = polys.pop().unwrap();
    let first = polys.pop().unwrap();
    if first.lines.iter().collect::<BTreeSet<_>>() == second.lines.iter().collect::<BTreeSet<_>>() {
        return none(d, "both roots give the same line set".into());
    }
    SplittingOutcome::Pairs {
        delta: d,
        first,
        second,
    }
}

/// The parameter sequence `0, 1, -1, 2, -2, ...`.
pub fn probe_parameter(k: usize) -> i64 {
    let m = k.div_ceil(2) as i64;
    if k % 2 == 1 {
        m
    } else {
        -m
    }
}

pub const DEFAULT_NONSPLITTING_CAP: usize = 200;

/// First small integer parameter giving a nonsplitting polygon.
pub fn find_nonsplitting_polygon(
    a: &Arrangement,
    psi: &Plinth,
    d: &DeltaPolynomial,
    cap: usize,
) -> Result<Polygon, SplittingError> {
    if d.degree() != Some(2) {
        return Err(SplittingError::Precondition(format!(
            "nonsplitting search needs degree 2, found {:?}",
            d.degree()
        )));
    }
    for k in 0..cap {
        let l = FieldElement::from_int(probe_parameter(k), a.field());
        if d.is_excluded(&l) || d.poly.eval(&l).is_zero() {
            continue;
        }
        let p = build_polygon(a, psi, d, &l)?;
        if p.verdict == Verdict::NonSplitting {
            return Ok(p);
        }
    }
    Err(SplittingError::SearchExhausted(cap))
}

/// `a` with the polygon lines appended, labeled after the existing ones.
pub fn add_polygon(a: &Arrangement, p: &Polygon) -> Result<Arrangement, SplittingError> {
    if p.verdict != Verdict::Splitting {
        return Err(SplittingError::NotSplitting(p.verdict.name().to_string()));
    }
    Ok(a.extended(&p.lines, None)?)
}
