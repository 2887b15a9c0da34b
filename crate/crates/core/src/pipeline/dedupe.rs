use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::PairCertificate;
use crate::arrangement::{combinatorics, lattice_isomorphisms, projectively_equivalent, Arrangement, Combinatorics};
use crate::projgeom::ProjLine;

/// What makes two pairs the same.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DedupeKey {
    /// Same unordered pair of line sets.
    Raw,
    /// Lattice-isomorphic shared combinatorics.
    #[default]
    Lattice,
    /// Members projectively equivalent, in either order.
    Projective,
}

type Invariant = (usize, BTreeMap<usize, usize>, Vec<Vec<usize>>);

fn invariant(c: &Combinatorics) -> Invariant {
    let mut per_line: Vec<Vec<usize>> = c
        .line_points()
        .iter()
        .map(|pts| {
            let mut m: Vec<usize> = pts.iter().map(|&k| c.points()[k].len()).collect();
            m.sort_unstable();
            m
        })
        .collect();
    per_line.sort();
    (c.n_lines(), c.multiplicity_profile(), per_line)
}

fn raw_key(p: &(Arrangement, Arrangement)) -> BTreeSet<BTreeSet<ProjLine>> {
    [p.0.line_set(), p.1.line_set()].into_iter().collect()
}

fn same_projective(p: &(Arrangement, Arrangement), q: &(Arrangement, Arrangement)) -> bool {
    let eq = |a: &Arrangement, b: &Arrangement| projectively_equivalent(a, b).is_some();
    (eq(&p.0, &q.0) && eq(&p.1, &q.1)) || (eq(&p.0, &q.1) && eq(&p.1, &q.0))
}

/// Index of the first pair of each class, in input order.
pub fn dedupe_representatives(pairs: &[(Arrangement, Arrangement)], key: DedupeKey) -> Vec<usize> {
    if key == DedupeKey::Raw {
        let mut seen = BTreeSet::new();
        return (0..pairs.len()).filter(|&i| seen.insert(raw_key(&pairs[i]))).collect();
    }
    let combs: Vec<Combinatorics> = pairs.iter().map(|p| combinatorics(&p.0)).collect();
    let mut buckets: BTreeMap<Invariant, Vec<usize>> = BTreeMap::new();
    let mut reps = Vec::new();
    for i in 0..pairs.len() {
        let bucket = buckets.entry(invariant(&combs[i])).or_default();
        let duplicate = bucket.iter().any(|&j| {
            !lattice_isomorphisms(&combs[j], &combs[i], true).is_empty()
                && (key == DedupeKey::Lattice || same_projective(&pairs[j], &pairs[i]))
        });
        if !duplicate {
            bucket.push(i);
            reps.push(i);
        }
    }
    reps
}

/// Keeps the first certificate of each class. Driver output is in
/// canonical order, so this is the canonically smallest representative.
pub fn dedupe_pairs(certs: &[PairCertificate], key: DedupeKey) -> Vec<PairCertificate> {
    let pairs: Vec<(Arrangement, Arrangement)> = certs.iter().map(|c| c.final_pair.clone()).collect();
    dedupe_representatives(&pairs, key)
        .into_iter()
        .map(|i| certs[i].clone())
        .collect()
}
