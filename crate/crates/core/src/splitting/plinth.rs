use serde::{Deserialize, Serialize};

use super::SplittingError;
use crate::arrangement::{Combinatorics, Validation};

/// A cyclic chain of `r` support lines with one pivot point per edge.
///
/// Pivots are stored as the sorted set of lines through the point, so a
/// plinth is meaningful only relative to the combinatorics it came from.
/// Edge `i` joins `support[i]` and `support[(i + 1) % r]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Plinth {
    pub support: Vec<usize>,
    pub pivots: Vec<Vec<usize>>,
}

impl Plinth {
    pub fn new(support: Vec<usize>, pivots: Vec<Vec<usize>>) -> Self {
        let pivots = pivots
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        Plinth { support, pivots }
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support_line(&self, i: usize) -> usize {
        self.support[i % self.len()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportQuotient {
    /// Every ordered tuple of distinct lines.
    Ordered,
    /// Tuples up to rotation (the smallest line first).
    Cyclic,
    /// Tuples up to rotation and reflection.
    Dihedral,
}

/// Counting conventions for plinth enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConventionOptions {
    pub quotient: SupportQuotient,
    pub pivots_distinct: bool,
    pub skip_concurrent_supports: bool,
}

impl Default for ConventionOptions {
    /// The convention that reproduces the published plinth counts.
    fn default() -> Self {
        ConventionOptions {
            quotient: SupportQuotient::Dihedral,
            pivots_distinct: true,
            skip_concurrent_supports: true,
        }
    }
}

impl ConventionOptions {
    pub fn all() -> Vec<ConventionOptions> {
        let mut out = Vec::new();
        for quotient in [SupportQuotient::Ordered, SupportQuotient::Cyclic, SupportQuotient::Dihedral] {
            for pivots_distinct in [false, true] {
                for skip_concurrent_supports in [true, false] {
                    out.push(ConventionOptions {
                        quotient,
                        pivots_distinct,
                        skip_concurrent_supports,
                    });
                }
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        format!(
            "{}, pivots {}, concurrent supports {}",
            match self.quotient {
                SupportQuotient::Ordered => "ordered",
                SupportQuotient::Cyclic => "cyclic",
                SupportQuotient::Dihedral => "dihedral",
            },
            if self.pivots_distinct { "distinct" } else { "repeatable" },
            if self.skip_concurrent_supports { "skipped" } else { "kept" }
        )
    }
}

/// Support tuples, one per orbit of the chosen quotient, in lexicographic
/// order.
pub fn support_tuples(n: usize, r: usize, quotient: SupportQuotient) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        r: usize,
        q: SupportQuotient,
        cur: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == r {
            if q == SupportQuotient::Dihedral && cur[1] > cur[r - 1] {
                return;
            }
            out.push(cur.clone());
            return;
        }
        for s in 0..n {
            if used[s] {
                continue;
            }
            if q != SupportQuotient::Ordered && !cur.is_empty() && s < cur[0] {
                continue;
            }
            used[s] = true;
            cur.push(s);
            rec(n, r, q, cur, used, out);
            cur.pop();
            used[s] = false;
        }
    }
    rec(n, r, quotient, &mut cur, &mut used, &mut out);
    out
}

/// True when some point of `c` contains every support line.
pub fn support_is_concurrent(c: &Combinatorics, support: &[usize]) -> bool {
    c.points()
        .iter()
        .any(|p| support.iter().all(|s| p.binary_search(s).is_ok()))
}

/// Indices of the points of `c` usable as the pivot of each edge.
pub fn pivot_candidates(c: &Combinatorics, support: &[usize]) -> Vec<Vec<usize>> {
    let r = support.len();
    (0..r)
        .map(|i| {
            let (a, b) = (support[i], support[(i + 1) % r]);
            c.points()
                .iter()
                .enumerate()
                .filter(|(_, p)| p.binary_search(&a).is_err() && p.binary_search(&b).is_err())
                .map(|(k, _)| k)
                .collect()
        })
        .collect()
}

/// Visits every plinth of length `r` as (support, pivot point indices) in
/// deterministic order. Returns the number visited.
pub fn for_each_plinth(
    c: &Combinatorics,
    r: usize,
    conv: &ConventionOptions,
    mut visit: impl FnMut(&[usize], &[usize]),
) -> Result<usize, SplittingError> {
    check_length(c, r)?;
    let mut count = 0;
    for support in support_tuples(c.n_lines(), r, conv.quotient) {
        if conv.skip_concurrent_supports && support_is_concurrent(c, &support) {
            continue;
        }
        let cands = pivot_candidates(c, &support);
        let mut chosen = Vec::with_capacity(r);
        walk_pivots(&cands, conv.pivots_distinct, &mut chosen, &mut |piv| {
            count += 1;
            visit(&support, piv)
        });
    }
    Ok(count)
}

pub(crate) fn walk_pivots(
    cands: &[Vec<usize>],
    distinct: bool,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == cands.len() {
        visit(chosen);
        return;
    }
    for &k in &cands[chosen.len()] {
        if distinct && chosen.contains(&k) {
            continue;
        }
        chosen.push(k);
        walk_pivots(cands, distinct, chosen, visit);
        chosen.pop();
    }
}

pub(crate) fn check_length(c: &Combinatorics, r: usize) -> Result<(), SplittingError> {
    if r < 3 {
        return Err(SplittingError::Precondition(format!("plinth length {r} is below 3")));
    }
    if r > c.n_lines() {
        return Err(SplittingError::Precondition(format!(
            "plinth length {r} exceeds the {} available lines",
            c.n_lines()
        )));
    }
    Ok(())
}

pub fn enumerate_plinths(
    c: &Combinatorics,
    r: usize,
    conv: &ConventionOptions,
) -> Result<Vec<Plinth>, SplittingError> {
    let mut out = Vec::new();
    for_each_plinth(c, r, conv, |s, piv| {
        out.push(Plinth {
            support: s.to_vec(),
            pivots: piv.iter().map(|&k| c.points()[k].clone()).collect(),
        })
    })?;
    Ok(out)
}

pub fn count_plinths(c: &Combinatorics, r: usize, conv: &ConventionOptions) -> Result<usize, SplittingError> {
    for_each_plinth(c, r, conv, |_, _| {})
}

/// Checks the plinth axioms against `c`, naming every failing edge.
pub fn validate_plinth(c: &Combinatorics, psi: &Plinth) -> Validation {
    let mut diagnostics = Vec::new();
    let r = psi.len();
    let n = c.n_lines();
    if r < 3 {
        diagnostics.push(format!("length {r} is below 3"));
    }
    if psi.pivots.len() != r {
        diagnostics.push(format!("{} pivots for {r} support lines", psi.pivots.len()));
        return Validation { diagnostics };
    }
    for (i, &s) in psi.support.iter().enumerate() {
        if s >= n {
            diagnostics.push(format!("support[{i}] = {s} is out of range"));
        }
        if psi.support[..i].contains(&s) {
            diagnostics.push(format!("support[{i}] = {s} repeats an earlier support line"));
        }
    }
    if !diagnostics.is_empty() {
        return Validation { diagnostics };
    }
    for i in 0..r {
        let p = &psi.pivots[i];
        if !c.contains_point(p) {
            diagnostics.push(format!("pivot[{i}] {p:?} is not a singular point"));
            continue;
        }
        let (a, b) = (psi.support[i], psi.support_line(i + 1));
        if p.contains(&a) {
            diagnostics.push(format!("pivot[{i}] lies on support[{i}] = {a}"));
        }
        if p.contains(&b) {
            diagnostics.push(format!("pivot[{i}] lies on support[{}] = {b}", (i + 1) % r));
        }
    }
    Validation { diagnostics }
}
