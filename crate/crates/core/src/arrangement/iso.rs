//! Lattice isomorphism search between line combinatorics.

use std::collections::BTreeMap;

use super::Combinatorics;

/// Iterated per-line invariant: start from the multiset of incident point
/// sizes, refine with the colors of co-incident lines until the partition
/// stops splitting. Colors are drawn from one palette shared by all inputs,
/// so they are comparable across combinatorics.
pub fn refined_colors(cs: &[&Combinatorics]) -> Vec<Vec<u32>> {
    let line_points: Vec<Vec<Vec<usize>>> = cs.iter().map(|c| c.line_points()).collect();

    let mut colors: Vec<Vec<u32>> = {
        let keys: Vec<Vec<Vec<usize>>> = cs
            .iter()
            .zip(&line_points)
            .map(|(c, lp)| {
                lp.iter()
                    .map(|pts| {
                        let mut s: Vec<usize> = pts.iter().map(|&k| c.points()[k].len()).collect();
                        s.sort_unstable();
                        s
                    })
                    .collect()
            })
            .collect();
        palette(&keys)
    };
    let mut n_classes = count_classes(&colors);

    loop {
        let keys: Vec<Vec<(u32, Vec<(usize, Vec<u32>)>)>> = cs
            .iter()
            .zip(&line_points)
            .zip(&colors)
            .map(|((c, lp), col)| {
                lp.iter()
                    .enumerate()
                    .map(|(i, pts)| {
                        let mut nb: Vec<(usize, Vec<u32>)> = pts
                            .iter()
                            .map(|&k| {
                                let p = &c.points()[k];
                                let mut cc: Vec<u32> =
                                    p.iter().filter(|&&j| j != i).map(|&j| col[j]).collect();
                                cc.sort_unstable();
                                (p.len(), cc)
                            })
                            .collect();
                        nb.sort();
                        (col[i], nb)
                    })
                    .collect()
            })
            .collect();
        let next = palette(&keys);
        let m = count_classes(&next);
        colors = next;
        if m == n_classes {
            break;
        }
        n_classes = m;
    }
    colors
}

fn palette<K: Ord + Clone>(keys: &[Vec<K>]) -> Vec<Vec<u32>> {
    let mut ids: BTreeMap<K, u32> = BTreeMap::new();
    for k in keys.iter().flatten() {
        ids.entry(k.clone()).or_insert(0);
    }
    for (n, v) in ids.values_mut().enumerate() {
        *v = n as u32;
    }
    keys.iter()
        .map(|ks| ks.iter().map(|k| ids[k]).collect())
        .collect()
}

fn count_classes(colors: &[Vec<u32>]) -> usize {
    let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Cheap necessary conditions shared by the isomorphism searches.
pub(crate) fn compatible(c1: &Combinatorics, c2: &Combinatorics) -> Option<(Vec<u32>, Vec<u32>)> {
    if c1.n_lines() != c2.n_lines() || c1.multiplicity_profile() != c2.multiplicity_profile() {
        return None;
    }
    let mut colors = refined_colors(&[c1, c2]);
    let b = colors.pop().unwrap();
    let a = colors.pop().unwrap();
    let (mut sa, mut sb) = (a.clone(), b.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    Some((a, b))
}

/// Incremental line assignment that keeps point images consistent.
pub(crate) struct PartialMap<'a> {
    n: usize,
    t1: Vec<usize>,
    t2: Vec<usize>,
    sizes1: Vec<usize>,
    sizes2: Vec<usize>,
    pub(crate) image: Vec<usize>,
    used: Vec<bool>,
    point_fwd: Vec<usize>,
    point_bwd: Vec<usize>,
    assigned: Vec<usize>,
    trail: Vec<Vec<usize>>,
    _c: std::marker::PhantomData<&'a ()>,
}

const NONE: usize = usize::MAX;

impl<'a> PartialMap<'a> {
    pub(crate) fn new(c1: &'a Combinatorics, c2: &'a Combinatorics) -> Self {
        let n = c1.n_lines();
        PartialMap {
            n,
            t1: c1.pair_table(),
            t2: c2.pair_table(),
            sizes1: c1.points().iter().map(|p| p.len()).collect(),
            sizes2: c2.points().iter().map(|p| p.len()).collect(),
            image: vec![NONE; n],
            used: vec![false; n],
            point_fwd: vec![NONE; c1.points().len()],
            point_bwd: vec![NONE; c2.points().len()],
            assigned: Vec::new(),
            trail: Vec::new(),
            _c: std::marker::PhantomData,
        }
    }

    pub(crate) fn is_used(&self, j: usize) -> bool {
        self.used[j]
    }

    /// Tries `i -> j`; on failure the state is unchanged.
    pub(crate) fn push(&mut self, i: usize, j: usize) -> bool {
        let mut newly = Vec::new();
        for &u in &self.assigned {
            let p = self.t1[i * self.n + u];
            let q = self.t2[j * self.n + self.image[u]];
            if self.sizes1[p] != self.sizes2[q] {
                self.undo_points(&newly);
                return false;
            }
            match (self.point_fwd[p], self.point_bwd[q]) {
                (NONE, NONE) => {
                    self.point_fwd[p] = q;
                    self.point_bwd[q] = p;
                    newly.push(p);
                }
                (fq, bp) if fq == q && bp == p => {}
                _ => {
                    self.undo_points(&newly);
                    return false;
                }
            }
        }
        self.image[i] = j;
        self.used[j] = true;
        self.assigned.push(i);
        self.trail.push(newly);
        true
    }

    pub(crate) fn pop(&mut self) {
        let i = self.assigned.pop().expect("pop on empty map");
        let newly = self.trail.pop().unwrap();
        self.undo_points(&newly);
        self.used[self.image[i]] = false;
        self.image[i] = NONE;
    }

    fn undo_points(&mut self, ps: &[usize]) {
        for &p in ps {
            let q = self.point_fwd[p];
            self.point_fwd[p] = NONE;
            self.point_bwd[q] = NONE;
        }
    }
}

/// Line bijections `pi` with `pi(points of c1) = points of c2`, in
/// lexicographic order of the image vectors. Empty iff non-isomorphic.
pub fn lattice_isomorphisms(c1: &Combinatorics, c2: &Combinatorics, first_only: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_isomorphism(c1, c2, |m| {
        out.push(m.to_vec());
        first_only
    });
    out
}

/// Visits isomorphisms in the same order until `visit` returns true.
pub(crate) fn for_each_isomorphism(c1: &Combinatorics, c2: &Combinatorics, mut visit: impl FnMut(&[usize]) -> bool) {
    let Some((col1, col2)) = compatible(c1, c2) else {
        return;
    };
    let n = c1.n_lines();
    let mut map = PartialMap::new(c1, c2);
    search(0, n, &col1, &col2, &mut map, &mut visit);
}

fn search(
    i: usize,
    n: usize,
    col1: &[u32],
    col2: &[u32],
    map: &mut PartialMap<'_>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if i == n {
        return visit(&map.image);
    }
    for j in 0..n {
        if map.is_used(j) || col1[i] != col2[j] {
            continue;
        }
        if map.push(i, j) {
            let stop = search(i + 1, n, col1, col2, map, visit);
            map.pop();
            if stop {
                return true;
            }
        }
    }
    false
}
