use std::collections::BTreeSet;

use super::*;
use crate::fixtures;
use crate::io::certificate_to_json;
use crate::projgeom::ProjLine;
use crate::splitting::add_polygon;

fn with_lines(a: &Arrangement, extra: &[ProjLine]) -> Arrangement {
    a.extended(extra, None).unwrap()
}

fn set(a: &Arrangement) -> BTreeSet<ProjLine> {
    a.line_set()
}

fn fixtured_maclane_run() -> PipelineRun {
    let (a, cfg) = fixtures::maclane_search();
    run_algorithm_nonarithmetic(&a, &cfg).unwrap()
}

#[test]
fn conjugation_is_an_involution() {
    let a = fixtures::maclane(false);
    let g = galois_image(&a);
    assert!(!g.identity_only);
    assert_eq!(set(&g.arrangement), set(&fixtures::maclane(true)));
    assert_eq!(set(&galois_image(&g.arrangement).arrangement), set(&a));
    assert!(galois_image(&fixtures::rational_base()).identity_only);
}

#[test]
fn maclane_pair_is_arithmetic() {
    let (c, v) = classify_pair(&fixtures::maclane(false), &fixtures::maclane(true), ArithmeticMode::Literal);
    assert_eq!(c, Classification::Arithmetic);
    assert!(v.literal && v.up_to_pgl);
}

#[test]
fn falk_sturmfels_pair_is_nonarithmetic() {
    let ext = fixtures::falk_sturmfels_extended();
    let [t1, t2] = fixtures::falk_sturmfels_triangles();
    let (a1, a2) = (with_lines(&ext, &t1), with_lines(&ext, &t2));
    for mode in [ArithmeticMode::Literal, ArithmeticMode::UpToPgl] {
        let (c, v) = classify_pair(&a1, &a2, mode);
        assert_eq!(c, Classification::Nonarithmetic);
        assert!(!v.literal);
    }
    // the conjugate of FS2 is not FS1 either
    assert_ne!(set(&galois_image(&a2).arrangement), set(&a1));
}

#[test]
fn rational_pair_classifies_rational() {
    let base = fixtures::rational_base();
    let [t1, t2] = fixtures::rational_triangles();
    let (c, v) = classify_pair(&with_lines(&base, &t1), &with_lines(&base, &t2), ArithmeticMode::Literal);
    assert_eq!(c, Classification::Rational);
    assert!(!v.literal);
}

#[test]
fn rational_driver_finds_the_published_pair() {
    let run = run_algorithm_rational(&fixtures::rational_base(), &PipelineConfig::new(3)).unwrap();
    assert!(!run.certificates.is_empty());
    let base = fixtures::rational_base();
    let [t1, t2] = fixtures::rational_triangles();
    let want: BTreeSet<_> = [set(&with_lines(&base, &t1)), set(&with_lines(&base, &t2))].into();
    let found = run.certificates.iter().find(|c| {
        let got: BTreeSet<_> = [set(&c.final_pair.0), set(&c.final_pair.1)].into();
        got == want
    });
    let c = found.expect("published pair among certificates");
    assert_eq!(c.classification, Classification::Rational);
    assert!(verify_certificate(c).passed());
}

#[test]
fn fixtured_maclane_run_reaches_the_published_pair() {
    let run = fixtured_maclane_run();
    assert_eq!(run.certificates.len(), 1, "{:?}", run.log.notes);
    let c = &run.certificates[0];
    assert_eq!(fixtures::pair_match(c, &fixtures::maclane_pair()), Some(fixtures::PairMatch::Exact));
    assert_eq!(c.classification, Classification::Nonarithmetic);
    assert_eq!(c.plinth_chain.len(), 2);
    assert!(c.rigidity.iter().all(|r| r.dimension == 0));
    let t = verify_certificate(c);
    assert!(t.passed(), "{}", t.render());
}

#[test]
fn verifier_rejects_a_moved_line() {
    let run = fixtured_maclane_run();
    let mut c = run.certificates[0].clone();
    let f = c.field().clone();
    let n = c.final_pair.0.len();
    let moved = ProjLine::from_ints([1, 5, 7], &f).unwrap();
    let mut lines = c.final_pair.0.lines().to_vec();
    lines[n - 1] = moved;
    c.final_pair.0 = Arrangement::new(&f, lines, None).unwrap();
    let t = verify_certificate(&c);
    assert!(!t.passed());
    assert!(t.first_failure().is_some());
}

#[test]
fn dedupe_collapses_copies() {
    let run = fixtured_maclane_run();
    let c = run.certificates[0].clone();
    let mut swapped = c.clone();
    swapped.final_pair = (c.final_pair.1.clone(), c.final_pair.0.clone());
    let certs = vec![c.clone(), swapped, c];
    for key in [DedupeKey::Raw, DedupeKey::Lattice, DedupeKey::Projective] {
        assert_eq!(dedupe_pairs(&certs, key).len(), 1, "{key:?}");
    }
}

#[test]
fn splitting_commutes_with_conjugation() {
    // sigma applied to A + polygon(lambda) equals sigma(A) + polygon(sigma lambda)
    let a = fixtures::maclane_extended();
    let psi = fixtures::maclane_psi2();
    let sa = galois_image(&a).arrangement;
    let out = crate::splitting::find_splitting_polygons(&a, &psi);
    let out_s = crate::splitting::find_splitting_polygons(&sa, &psi);
    let (crate::splitting::SplittingOutcome::Pairs { first, second, .. }, crate::splitting::SplittingOutcome::Pairs { first: f_s, second: s_s, .. }) = (out, out_s) else {
        panic!("both sides should split");
    };
    for p in [&first, &second] {
        let img = set(&galois_image(&add_polygon(&a, p).unwrap()).arrangement);
        let lam = p.lambda.conjugate();
        let q = [&f_s, &s_s].into_iter().find(|q| q.lambda == lam).expect("conjugate root");
        assert_eq!(img, set(&add_polygon(&sa, q).unwrap()));
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let run = run_algorithm_rational(&fixtures::rational_base(), &PipelineConfig::new(3)).unwrap();
            run.certificates.iter().map(certificate_to_json).collect::<Vec<_>>()
        })
    };
    assert_eq!(render(1), render(4));
}

#[test]
fn config_rejects_bad_values() {
    let mut cfg = PipelineConfig::new(2);
    assert!(cfg.validate().is_err());
    cfg.length = 3;
    cfg.branch = 3;
    assert!(cfg.validate().is_err());
}
