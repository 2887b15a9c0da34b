//! Labeled line arrangements and their combinatorics.

mod equivalence;
mod iso;
mod rigidity;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::numberfield::{Field, FieldElement, Reduction};
use crate::projgeom::{concurrent, join, meet, GeomError, ProjLine, ProjPoint};

pub use equivalence::projectively_equivalent;
pub use iso::{lattice_isomorphisms, refined_colors};
pub use rigidity::{first_general_frame, tangent_dimension, tangent_dimension_with_frame};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("line {0} is not defined over the arrangement field")]
    FieldMismatch(usize),
    #[error("label count {labels} does not match line count {lines}")]
    LabelCount { labels: usize, lines: usize },
    #[error("no four lines in general position")]
    NoFrame,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// An ordered list of distinct lines over a common field.
#[derive(Clone, PartialEq, Eq)]
pub struct Arrangement {
    field: Field,
    lines: Vec<ProjLine>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Arrangement over {}", self.field)?;
        for (i, l) in self.lines.iter().enumerate() {
            writeln!(f, "  {}: {:?}", self.label(i), l)?;
        }
        Ok(())
    }
}

impl Arrangement {
    pub fn new(
        field: &Field,
        lines: Vec<ProjLine>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, ArrangementError> {
        for (i, l) in lines.iter().enumerate() {
            if **l.field() != **field {
                return Err(ArrangementError::FieldMismatch(i));
            }
        }
        let mut seen: BTreeMap<&ProjLine, usize> = BTreeMap::new();
        for (i, l) in lines.iter().enumerate() {
            if let Some(&j) = seen.get(l) {
                return Err(ArrangementError::DuplicateLine(j, i));
            }
            seen.insert(l, i);
        }
        if let Some(ls) = &labels {
            if ls.len() != lines.len() {
                return Err(ArrangementError::LabelCount {
                    labels: ls.len(),
                    lines: lines.len(),
                });
            }
        }
        Ok(Arrangement {
            field: field.clone(),
            lines,
            labels,
        })
    }

    /// Builds an arrangement from integer coefficient triples.
    pub fn from_int_lines(field: &Field, lines: &[[i64; 3]]) -> Result<Self, ArrangementError> {
        let lines = lines
            .iter()
            .map(|&v| ProjLine::from_ints(v, field))
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(field, lines, None)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &ProjLine {
        &self.lines[i]
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => format!("L{}", i + 1),
        }
    }

    pub fn all_labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn position(&self, l: &ProjLine) -> Option<usize> {
        self.lines.iter().position(|m| m == l)
    }

    /// Appends lines; fails if any coincides with an existing one.
    pub fn extended(
        &self,
        extra: &[ProjLine],
        extra_labels: Option<Vec<String>>,
    ) -> Result<Arrangement, ArrangementError> {
        let mut lines = self.lines.clone();
        lines.extend(extra.iter().cloned());
        let n = self.len();
        let labels = match (&self.labels, extra_labels) {
            (None, None) => None,
            (_, extra_labels) => {
                let tail = extra_labels
                    .unwrap_or_else(|| (n..n + extra.len()).map(|i| format!("L{}", i + 1)).collect());
                Some(self.all_labels().into_iter().chain(tail).collect())
            }
        };
        Arrangement::new(&self.field, lines, labels)
    }

    /// Re-homes every line into `target` (rational coefficients only).
    pub fn embed(&self, target: &Field) -> Result<Arrangement, ArrangementError> {
        let lines = self
            .lines
            .iter()
            .map(|l| l.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(target, lines, self.labels.clone())
    }

    pub fn map_lines(&self, f: impl Fn(&ProjLine) -> ProjLine) -> Result<Arrangement, ArrangementError> {
        Arrangement::new(&self.field, self.lines.iter().map(f).collect(), self.labels.clone())
    }

    pub fn line_set(&self) -> BTreeSet<ProjLine> {
        self.lines.iter().cloned().collect()
    }

    /// True when every normalized coefficient is rational.
    pub fn is_defined_over_q(&self) -> bool {
        self.lines.iter().all(|l| l.is_rational())
    }

    pub fn prefix(&self, n: usize) -> Arrangement {
        Arrangement {
            field: self.field.clone(),
            lines: self.lines[..n].to_vec(),
            labels: self.labels.as_ref().map(|ls| ls[..n].to_vec()),
        }
    }
}

/// A multiple point together with the lines through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub incident: Vec<usize>,
}

/// All intersection points of at least two lines, sorted by point.
pub fn singular_points(a: &Arrangement) -> Vec<SingularPoint> {
    let n = a.len();
    let mut groups: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = meet(&a.lines[i], &a.lines[j]).expect("arrangement lines are distinct");
            let g = groups.entry(p).or_default();
            g.insert(i);
            g.insert(j);
        }
    }
    groups
        .into_iter()
        .map(|(point, inc)| SingularPoint {
            point,
            incident: inc.into_iter().collect(),
        })
        .collect()
}

/// Abstract incidence structure: line count plus the multiple points as
/// sorted index sets, the whole list sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combinatorics {
    n_lines: usize,
    points: Vec<Vec<usize>>,
}

impl Combinatorics {
    /// Normalizes ordering; does not validate the axioms.
    pub fn new(n_lines: usize, points: Vec<Vec<usize>>) -> Self {
        let mut points: Vec<Vec<usize>> = points
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        points.sort();
        Combinatorics { n_lines, points }
    }

    pub fn n_lines(&self) -> usize {
        self.n_lines
    }

    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    pub fn point_index(&self, set: &[usize]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(set)).ok()
    }

    /// `table[i * n + j]` = index of the point containing lines `i != j`.
    pub fn pair_table(&self) -> Vec<usize> {
        let n = self.n_lines;
        let mut t = vec![usize::MAX; n * n];
        for (k, p) in self.points.iter().enumerate() {
            for &i in p {
                for &j in p {
                    if i != j && i < n && j < n {
                        t[i * n + j] = k;
                    }
                }
            }
        }
        t
    }

    /// Points through each line.
    pub fn line_points(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_lines];
        for (k, p) in self.points.iter().enumerate() {
            for &i in p {
                if i < self.n_lines {
                    out[i].push(k);
                }
            }
        }
        out
    }

    /// Number of points of each multiplicity, keyed by multiplicity.
    pub fn multiplicity_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for p in &self.points {
            *m.entry(p.len()).or_insert(0) += 1;
        }
        m
    }

    /// Relabels lines: line `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Combinatorics {
        Combinatorics::new(
            self.n_lines,
            self.points
                .iter()
                .map(|p| p.iter().map(|&i| perm[i]).collect())
                .collect(),
        )
    }

    pub fn contains_point(&self, set: &[usize]) -> bool {
        self.point_index(set).is_some()
    }
}

/// The multiple points as line sets, without computing coordinates.
///
/// Incidences are screened mod a prime and confirmed exactly; exact
/// concurrency always survives reduction, so nothing is missed.
pub fn combinatorics(a: &Arrangement) -> Combinatorics {
    let n = a.len();
    let l = a.lines();
    let red = Reduction::for_field(a.field());
    let reduced: Option<Vec<[u64; 3]>> =
        red.and_then(|r| l.iter().map(|x| r.reduce_triple(x.coords())).collect());
    let through = |i: usize, j: usize, k: usize| match (&red, &reduced) {
        (Some(r), Some(m)) => r.det3(&[m[i], m[j], m[k]]) == 0 && concurrent(&l[i], &l[j], &l[k]),
        _ => concurrent(&l[i], &l[j], &l[k]),
    };
    let mut covered = vec![false; n * n];
    let mut points = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if covered[i * n + j] {
                continue;
            }
            let mut p = vec![i, j];
            p.extend((j + 1..n).filter(|&k| through(i, j, k)));
            for &x in &p {
                for &y in &p {
                    covered[x * n + y] = true;
                }
            }
            points.push(p);
        }
    }
    Combinatorics::new(n, points)
}

/// Result of checking the two line-combinatorics axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub diagnostics: Vec<String>,
}

impl Validation {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

pub fn validate_combinatorics(c: &Combinatorics) -> Validation {
    let mut diagnostics = Vec::new();
    let n = c.n_lines;
    let mut count = vec![0usize; n * n];
    for (k, p) in c.points.iter().enumerate() {
        if p.len() < 2 {
            diagnostics.push(format!("point #{k} {p:?} has fewer than two lines"));
        }
        if let Some(&bad) = p.iter().find(|&&i| i >= n) {
            diagnostics.push(format!("point #{k} {p:?} names line {bad} out of range"));
            continue;
        }
        for (x, &i) in p.iter().enumerate() {
            for &j in &p[x + 1..] {
                count[i * n + j] += 1;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            match count[i * n + j] {
                1 => {}
                0 => diagnostics.push(format!("pair {{{i}, {j}}} lies in no point")),
                k => diagnostics.push(format!("pair {{{i}, {j}}} lies in {k} points")),
            }
        }
    }
    Validation { diagnostics }
}

/// Lines through at least two singular points that are not already in
/// the arrangement, in order of first appearance over point pairs.
pub fn candidate_lines_through_pairs(a: &Arrangement) -> Vec<ProjLine> {
    let sing = singular_points(a);
    let existing = a.line_set();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..sing.len() {
        for j in i + 1..sing.len() {
            let l = join(&sing[i].point, &sing[j].point).expect("singular points are distinct");
            if existing.contains(&l) || !seen.insert(l.clone()) {
                continue;
            }
            out.push(l);
        }
    }
    out
}

/// Applies `f` to each coefficient of each line.
pub fn map_coefficients(
    a: &Arrangement,
    f: impl Fn(&FieldElement) -> FieldElement,
) -> Result<Arrangement, ArrangementError> {
    let lines = a
        .lines
        .iter()
        .map(|l| {
            let c = l.coords();
            ProjLine::new([f(&c[0]), f(&c[1]), f(&c[2])])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Arrangement::new(a.field(), lines, a.labels.clone())
}
