use super::iso::for_each_isomorphism;
use super::{combinatorics, first_general_frame, Arrangement};
use crate::projgeom::{line_frame_transform, ProjLine, ProjTransform};

/// A projective transformation carrying one arrangement onto another,
/// with the induced line bijection (`line i -> line permutation[i]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveWitness {
    pub transform: ProjTransform,
    pub permutation: Vec<usize>,
}

/// Searches for `t` in PGL3 and a relabeling with `t(a1) = a2` as line sets.
///
/// Any such relabeling is a lattice isomorphism, so each isomorphism is
/// tried in turn: the images of a general frame fix `t`, and the other
/// lines must land where the isomorphism sends them.
pub fn projectively_equivalent(a1: &Arrangement, a2: &Arrangement) -> Option<ProjectiveWitness> {
    if a1.field() != a2.field() || a1.len() != a2.len() {
        return None;
    }
    let frame = first_general_frame(a1)?;
    let src: [ProjLine; 4] = frame.map(|k| a1.line(k).clone());
    let mut found = None;
    for_each_isomorphism(&combinatorics(a1), &combinatorics(a2), |perm| {
        let dst: [ProjLine; 4] = frame.map(|k| a2.line(perm[k]).clone());
        let Ok(t) = line_frame_transform(&src, &dst) else {
            return false;
        };
        let ok = a1
            .lines()
            .iter()
            .zip(perm)
            .all(|(l, &j)| &t.apply_line(l) == a2.line(j));
        if ok {
            found = Some(ProjectiveWitness {
                transform: t,
                permutation: perm.to_vec(),
            });
        }
        ok
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{FieldDescriptor, FieldElement};
    use crate::projgeom::apply;

    fn five() -> Arrangement {
        Arrangement::from_int_lines(
            &FieldDescriptor::rationals(),
            &[[0, 0, 1], [1, 0, 0], [1, 0, -1], [0, 1, 0], [0, 1, -1]],
        )
        .unwrap()
    }

    #[test]
    fn identity_witness() {
        let a = five();
        let w = projectively_equivalent(&a, &a).unwrap();
        for l in a.lines() {
            assert!(a.line_set().contains(&apply(&w.transform, l)));
        }
    }

    #[test]
    fn diagonal_witness() {
        let a = five();
        let f = a.field().clone();
        let d = ProjTransform::diagonal([1, 2, 3].map(|c| FieldElement::from_int(c, &f))).unwrap();
        let b = a.map_lines(|l| d.apply_line(l)).unwrap();
        let w = projectively_equivalent(&a, &b).unwrap();
        for (i, l) in a.lines().iter().enumerate() {
            assert_eq!(&w.transform.apply_line(l), b.line(w.permutation[i]));
        }
    }

    #[test]
    fn inequivalent_same_lattice() {
        // five concurrent-free lines in general position vs a different generic set:
        // same combinatorics, but a fifth general line is a modulus
        let q = FieldDescriptor::rationals();
        let a = Arrangement::from_int_lines(&q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 5]]).unwrap();
        let b = Arrangement::from_int_lines(&q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 3, 7]]).unwrap();
        assert!(projectively_equivalent(&a, &a).is_some());
        assert!(projectively_equivalent(&a, &b).is_none());
    }
}
