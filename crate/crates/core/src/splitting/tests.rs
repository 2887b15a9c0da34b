use std::collections::BTreeSet;

use super::*;
use crate::arrangement::{combinatorics, validate_combinatorics, Arrangement};
use crate::fixtures;
use crate::numberfield::{solve_quadratic, FieldElement, QuadraticSolution, Rational};
use crate::projgeom::{concurrent, cross, is_zero_triple, meet, ProjLine, Triple};

fn ints(v: [i64; 3], a: &Arrangement) -> Triple {
    v.map(|c| FieldElement::from_int(c, a.field()))
}

fn set(ls: &[ProjLine]) -> BTreeSet<ProjLine> {
    ls.iter().cloned().collect()
}

fn pair_sets(out: &SplittingOutcome) -> [BTreeSet<ProjLine>; 2] {
    match out {
        SplittingOutcome::Pairs { first, second, .. } => {
            assert_eq!(first.verdict, Verdict::Splitting);
            assert_eq!(second.verdict, Verdict::Splitting);
            [set(&first.lines), set(&second.lines)]
        }
        other => panic!("expected a pair, got {other:?}"),
    }
}

#[test]
fn trace_parametrization_gives_eisenstein_polynomial() {
    let a = fixtures::maclane_base();
    let psi = fixtures::maclane_psi1();
    let d = delta_polynomial_with(&a, &psi, fixtures::maclane_trace_parametrization(a.field())).unwrap();
    // det of rows (0,0,1), (1,l,-1), (l-1,-1,1) is -(l^2 - l + 1)
    let expected: Vec<FieldElement> = [-1, 1, -1].map(|c| FieldElement::from_int(c, a.field())).to_vec();
    let lead = d.poly.coeff(2);
    let k = &lead / &expected[2];
    for (i, e) in expected.iter().enumerate() {
        assert_eq!(d.poly.coeff(i), e * &k);
    }
    // the first trace line is x + l y - z up to a scalar
    let l = FieldElement::from_int(7, a.field());
    let e1 = d.trace[0].eval(&l).unwrap();
    assert_eq!(e1, ProjLine::new(ints([1, 7, -1], &a)).unwrap());
}

#[test]
fn canonical_maclane_delta_is_irreducible() {
    let a = fixtures::maclane_base();
    let d = delta_polynomial(&a, &fixtures::maclane_psi1()).unwrap();
    assert_eq!(d.degree(), Some(2));
    assert!(d.excluded.is_empty());
    match solve_quadratic(&d.poly).unwrap() {
        QuadraticSolution::Irreducible { discriminant } => {
            let q = discriminant.as_rational().unwrap();
            assert_eq!(q.squarefree_class(), Some((-3).into()));
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        find_splitting_polygons(&a, &fixtures::maclane_psi1()),
        SplittingOutcome::Irreducible(_)
    ));
}

#[test]
fn canonical_parametrization_rule() {
    let a = fixtures::maclane_base();
    // S1 = z, S2 = x: C = [0:1:0]; x = 0 gives C again, so B comes from y = 0
    let p = Parametrization::canonical(a.line(0), a.line(1)).unwrap();
    assert_eq!(p.dir, ints([0, 1, 0], &a));
    assert_eq!(p.base, ints([1, 0, 0], &a));
    // S1 = x itself skips the x = 0 auxiliary line
    let p = Parametrization::canonical(a.line(1), a.line(3)).unwrap();
    assert_eq!(p.dir, ints([0, 0, 1], &a));
    assert_eq!(p.base, ints([0, 1, 0], &a));
}

#[test]
fn concurrent_support_drops_degree() {
    let a = fixtures::maclane_base();
    // L1, L2, L3 all pass through [0:1:0]
    let psi = Plinth::new(vec![0, 1, 2], vec![vec![2, 3], vec![0, 3, 4], vec![1, 3]]);
    assert!(validate_plinth(&combinatorics(&a), &psi).ok());
    let d = delta_polynomial(&a, &psi).unwrap();
    assert!(d.degree().is_none_or(|k| k <= 1), "{:?}", d.poly);
}

#[test]
fn degree_at_most_two_on_all_fixture_plinths() {
    let conv = ConventionOptions {
        quotient: SupportQuotient::Ordered,
        pivots_distinct: false,
        skip_concurrent_supports: false,
    };
    let a = fixtures::maclane_base();
    let mut n = 0;
    for psi in enumerate_plinths(&combinatorics(&a), 3, &conv).unwrap() {
        let d = delta_polynomial(&a, &psi).unwrap();
        assert!(d.poly.coeffs().len() <= 3);
        n += 1;
    }
    assert!(n > 0);
}

#[test]
fn rational_example_splits_into_published_triangles() {
    let a = fixtures::rational_base();
    let psi = fixtures::rational_psi();
    let out = find_splitting_polygons(&a, &psi);
    let got: BTreeSet<_> = pair_sets(&out).into_iter().collect();
    let want: BTreeSet<_> = fixtures::rational_triangles().iter().map(|t| set(t)).collect();
    assert_eq!(got, want);
}

#[test]
fn maclane_second_step_splits_into_published_triangles() {
    let a = fixtures::maclane_extended();
    let psi = fixtures::maclane_psi2();
    let out = find_splitting_polygons(&a, &psi);
    let got: BTreeSet<_> = pair_sets(&out).into_iter().collect();
    let want: BTreeSet<_> = fixtures::maclane_triangles().iter().map(|t| set(t)).collect();
    assert_eq!(got, want);
}

#[test]
fn falk_sturmfels_second_step_splits_into_published_triangles() {
    let a = fixtures::falk_sturmfels_extended();
    let psi = fixtures::falk_sturmfels_psi2();
    let out = find_splitting_polygons(&a, &psi);
    let got: BTreeSet<_> = pair_sets(&out).into_iter().collect();
    let want: BTreeSet<_> = fixtures::falk_sturmfels_triangles().iter().map(|t| set(t)).collect();
    assert_eq!(got, want);
}

#[test]
fn closure_vanishes_exactly_at_roots() {
    let a = fixtures::rational_base();
    let psi = fixtures::rational_psi();
    let d = delta_polynomial(&a, &psi).unwrap();
    let QuadraticSolution::Roots(r1, r2) = solve_quadratic(&d.poly).unwrap() else {
        panic!("rational example splits");
    };
    let s1 = a.line(psi.support[0]);
    for l in [&r1, &r2] {
        assert!(closure_determinant(&a, &psi, &d, l).is_zero());
        let e1 = d.trace[0].eval(l).unwrap();
        let e3 = d.trace[2].eval(l).unwrap();
        assert!(concurrent(s1, &e1, &e3));
    }
    for k in -6..=6 {
        let l = FieldElement::from_rational(Rational::new(k, 5), a.field());
        if l == r1 || l == r2 {
            continue;
        }
        assert!(!closure_determinant(&a, &psi, &d, &l).is_zero());
        let e1 = d.trace[0].eval(&l).unwrap();
        let e3 = d.trace[2].eval(&l).unwrap();
        assert!(!concurrent(s1, &e1, &e3));
    }
}

#[test]
fn other_parametrization_gives_same_polygons() {
    let a = fixtures::rational_base();
    let psi = fixtures::rational_psi();
    let s1 = a.line(psi.support[0]);
    let canon = delta_polynomial(&a, &psi).unwrap();
    // B from x + y = 0 and C scaled, both on S1
    let b = meet(s1, &ProjLine::from_ints([1, 1, 0], a.field()).unwrap()).unwrap();
    let c = canon.parametrization.dir.clone().map(|x| &x * &FieldElement::from_int(-3, a.field()));
    let param = Parametrization::custom(s1, b.coords().clone(), c).unwrap();
    let other = delta_polynomial_with(&a, &psi, param).unwrap();
    assert_ne!(canon.poly, other.poly);
    let roots = |d: &DeltaPolynomial| {
        let QuadraticSolution::Roots(x, y) = solve_quadratic(&d.poly).unwrap() else {
            panic!()
        };
        [x, y]
            .iter()
            .map(|l| set(&build_polygon(&a, &psi, d, l).unwrap().lines))
            .collect::<BTreeSet<_>>()
    };
    assert_eq!(roots(&canon), roots(&other));
}

#[test]
fn nonsplitting_witnesses_exist() {
    for (a, psi) in [
        (fixtures::rational_base(), fixtures::rational_psi()),
        (fixtures::maclane_extended(), fixtures::maclane_psi2()),
        (fixtures::falk_sturmfels_extended(), fixtures::falk_sturmfels_psi2()),
    ] {
        let d = delta_polynomial(&a, &psi).unwrap();
        let p = find_nonsplitting_polygon(&a, &psi, &d, DEFAULT_NONSPLITTING_CAP).unwrap();
        assert_eq!(p.verdict, Verdict::NonSplitting);
        assert!(!d.poly.eval(&p.lambda).is_zero());
        assert!(p.lambda.as_rational().is_some());
    }
}

#[test]
fn nonsplitting_needs_degree_two() {
    let a = fixtures::maclane_base();
    let psi = Plinth::new(vec![0, 1, 2], vec![vec![2, 3], vec![0, 3, 4], vec![1, 3]]);
    let d = delta_polynomial(&a, &psi).unwrap();
    assert!(matches!(
        find_nonsplitting_polygon(&a, &psi, &d, 10),
        Err(SplittingError::Precondition(_))
    ));
}

#[test]
fn coincidence_with_existing_line_is_degenerate() {
    let a = fixtures::maclane_base();
    let psi = fixtures::maclane_psi1();
    let d = delta_polynomial(&a, &psi).unwrap();
    // solve Q1(l) = L4 meet S1, so that E1 = L4 through the first pivot
    let target = meet(a.line(3), a.line(0)).unwrap();
    let (b, c) = (&d.parametrization.base, &d.parametrization.dir);
    let bt = cross(b, target.coords());
    let ct = cross(c, target.coords());
    let k = (0..3).find(|&k| !ct[k].is_zero()).unwrap();
    let l = -&(&bt[k] / &ct[k]);
    let q1 = d.chain[0].raw_at(&l);
    assert!(is_zero_triple(&cross(&q1, target.coords())));
    let p = build_polygon(&a, &psi, &d, &l).unwrap();
    assert_eq!(p.verdict, Verdict::Degenerate("E1 coincides with L4".into()));
}

#[test]
fn generic_value_is_nonsplitting() {
    let a = fixtures::maclane_base();
    let psi = fixtures::maclane_psi1();
    let d = delta_polynomial(&a, &psi).unwrap();
    let p = build_polygon(&a, &psi, &d, &FieldElement::from_int(5, a.field())).unwrap();
    assert_eq!(p.verdict, Verdict::NonSplitting);
}

#[test]
fn excluded_parameter_is_an_error() {
    let a = fixtures::maclane_base();
    let psi = fixtures::maclane_psi1();
    let mut d = delta_polynomial(&a, &psi).unwrap();
    let z = FieldElement::from_int(3, a.field());
    d.excluded.push(z.clone());
    assert!(matches!(
        build_polygon(&a, &psi, &d, &z),
        Err(SplittingError::ExcludedParameter(_))
    ));
}

#[test]
fn add_polygon_is_root_independent() {
    let a = fixtures::rational_base();
    let psi = fixtures::rational_psi();
    let SplittingOutcome::Pairs { first, second, .. } = find_splitting_polygons(&a, &psi) else {
        panic!()
    };
    let b1 = add_polygon(&a, &first).unwrap();
    let b2 = add_polygon(&a, &second).unwrap();
    assert_eq!(b1.len(), 13);
    assert_eq!(b1.label(12), "L13");
    let c1 = combinatorics(&b1);
    assert_eq!(c1, combinatorics(&b2));
    assert!(validate_combinatorics(&c1).ok());
    assert_eq!(c1, predicted_combinatorics(&combinatorics(&a), &psi, true).unwrap());
    let mut nonsplit = first.clone();
    nonsplit.verdict = Verdict::NonSplitting;
    assert!(add_polygon(&a, &nonsplit).is_err());
}

#[test]
fn maclane_extension_grows_to_thirteen() {
    let a = fixtures::maclane_extended();
    let SplittingOutcome::Pairs { first, .. } = find_splitting_polygons(&a, &fixtures::maclane_psi2()) else {
        panic!()
    };
    assert_eq!(add_polygon(&a, &first).unwrap().len(), 13);
}

#[test]
fn probe_sequence() {
    let v: Vec<i64> = (0..7).map(probe_parameter).collect();
    assert_eq!(v, vec![0, 1, -1, 2, -2, 3, -3]);
}
