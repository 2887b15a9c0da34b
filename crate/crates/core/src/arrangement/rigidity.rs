//! Infinitesimal rigidity of an arrangement inside its realization space.

use super::{combinatorics, Arrangement, ArrangementError};
use crate::numberfield::{FieldElement, Reduction};
use crate::projgeom::{concurrent, det3, Triple};

/// Lexicographically first four lines with no three concurrent.
pub fn first_general_frame(a: &Arrangement) -> Option<[usize; 4]> {
    let n = a.len();
    let l = a.lines();
    let ok3 = |i: usize, j: usize, k: usize| !concurrent(&l[i], &l[j], &l[k]);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !ok3(i, j, k) {
                    continue;
                }
                for m in k + 1..n {
                    if ok3(i, j, m) && ok3(i, k, m) && ok3(j, k, m) {
                        return Some([i, j, k, m]);
                    }
                }
            }
        }
    }
    None
}

/// Dimension of the first-order deformation space with a pinned frame.
///
/// Each unpinned line moves in the two coordinates other than its
/// normalized one. Every point of multiplicity `k >= 3` contributes the
/// `k - 2` linearized conditions `det(l_a, l_b, l_c) = 0` with `l_a, l_b`
/// its first two lines. Zero means the arrangement is infinitesimally
/// rigid; this bounds the local dimension of the moduli space from above.
pub fn tangent_dimension(a: &Arrangement) -> Result<usize, ArrangementError> {
    let frame = first_general_frame(a).ok_or(ArrangementError::NoFrame)?;
    tangent_dimension_with_frame(a, frame)
}

pub fn tangent_dimension_with_frame(a: &Arrangement, frame: [usize; 4]) -> Result<usize, ArrangementError> {
    let l = a.lines();
    for x in 0..4 {
        for y in x + 1..4 {
            for z in y + 1..4 {
                if concurrent(&l[frame[x]], &l[frame[y]], &l[frame[z]]) {
                    return Err(ArrangementError::NoFrame);
                }
            }
        }
    }
    let field = a.field().clone();
    let zero = FieldElement::zero(&field);
    let one = FieldElement::one(&field);

    // column index of (line, free coordinate)
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut col_of = vec![[usize::MAX; 3]; a.len()];
    for (i, line) in l.iter().enumerate() {
        if frame.contains(&i) {
            continue;
        }
        let pivot = line.coords().iter().position(|c| !c.is_zero()).unwrap();
        for k in 0..3 {
            if k != pivot {
                col_of[i][k] = unknowns.len();
                unknowns.push((i, k));
            }
        }
    }
    if unknowns.is_empty() {
        return Ok(0);
    }

    // full rank mod p already proves full rank
    if modular_rank(a, &unknowns, &col_of) == Some(unknowns.len()) {
        return Ok(0);
    }

    let unit = |k: usize| -> Triple {
        std::array::from_fn(|m| if m == k { one.clone() } else { zero.clone() })
    };

    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for p in combinatorics(a).points() {
        if p.len() < 3 {
            continue;
        }
        let (ia, ib) = (p[0], p[1]);
        for &ic in &p[2..] {
            let mut row = vec![zero.clone(); unknowns.len()];
            let trio = [ia, ib, ic];
            for (slot, &li) in trio.iter().enumerate() {
                for k in 0..3 {
                    let c = col_of[li][k];
                    if c == usize::MAX {
                        continue;
                    }
                    let mut t: [Triple; 3] = trio.map(|x| l[x].coords().clone());
                    t[slot] = unit(k);
                    row[c] = &row[c] + &det3(&t[0], &t[1], &t[2]);
                }
            }
            rows.push(row);
        }
    }
    Ok(unknowns.len() - rank(rows))
}

/// Rank of the same linear system reduced mod a prime, if the line
/// coordinates reduce; a lower bound for the exact rank.
fn modular_rank(a: &Arrangement, unknowns: &[(usize, usize)], col_of: &[[usize; 3]]) -> Option<usize> {
    let red = Reduction::for_field(a.field())?;
    let lines: Vec<[u64; 3]> = a.lines().iter().map(|l| red.reduce_triple(l.coords())).collect::<Option<_>>()?;
    let mut rows = Vec::new();
    for pt in combinatorics(a).points() {
        if pt.len() < 3 {
            continue;
        }
        for &ic in &pt[2..] {
            let trio = [pt[0], pt[1], ic];
            let mut row = vec![0u64; unknowns.len()];
            for (slot, &li) in trio.iter().enumerate() {
                for k in 0..3 {
                    let c = col_of[li][k];
                    if c == usize::MAX {
                        continue;
                    }
                    let mut t = trio.map(|x| lines[x]);
                    t[slot] = std::array::from_fn(|m| (m == k) as u64);
                    row[c] = red.add(row[c], red.det3(&t));
                }
            }
            rows.push(row);
        }
    }
    Some(red.rank(rows))
}

/// Exact rank by Gaussian elimination.
pub(crate) fn rank(mut rows: Vec<Vec<FieldElement>>) -> usize {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        let pivot_row: Vec<FieldElement> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..width {
                    let v = &rows[i][k] - &(&f * &pivot_row[k]);
                    rows[i][k] = v;
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
