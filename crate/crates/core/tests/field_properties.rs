use proptest::prelude::*;
use splitpoly::fixtures;
use splitpoly::numberfield::{solve_quadratic, Field, FieldDescriptor, FieldElement, QuadraticSolution, Rational, UniPoly};

fn fields() -> Vec<Field> {
    vec![
        FieldDescriptor::rationals(),
        fixtures::eisenstein_field(),
        fixtures::golden_field(),
        // x^2 - 2 and x^2 + x + 3/2
        FieldDescriptor::quadratic(Rational::from(-2), Rational::zero()).unwrap(),
        FieldDescriptor::quadratic(Rational::new(3, 2), Rational::one()).unwrap(),
    ]
}

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn element(f: Field) -> impl Strategy<Value = FieldElement> {
    let rational_only = f.is_rational();
    (rational(), rational()).prop_map(move |(a, b)| {
        let b = if rational_only { Rational::zero() } else { b };
        FieldElement::new(a, b, &f).unwrap()
    })
}

fn field_and(n: usize) -> impl Strategy<Value = (Field, Vec<FieldElement>)> {
    (0..fields().len()).prop_flat_map(move |i| {
        let f = fields()[i].clone();
        (Just(f.clone()), proptest::collection::vec(element(f), n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn ring_axioms((f, v) in field_and(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a + &FieldElement::zero(&f), a.clone());
        prop_assert_eq!(a * &FieldElement::one(&f), a.clone());
        prop_assert!((a + &(-a)).is_zero());
    }

    #[test]
    fn inverses((_f, v) in field_and(2)) {
        let (a, b) = (&v[0], &v[1]);
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert!((a * &inv).is_one());
            prop_assert_eq!(&(b / a) * a, b.clone());
        } else {
            prop_assert!(a.inverse().is_err());
        }
    }

    #[test]
    fn conjugation_is_a_ring_map((_f, v) in field_and(2)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assert_eq!((a * b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((a + b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
    }

    #[test]
    fn sqrt_of_a_square((_f, v) in field_and(1)) {
        let a = &v[0];
        let sq = a * a;
        let r = sq.sqrt().expect("a square has a root");
        prop_assert_eq!(&r * &r, sq);
        prop_assert!(r == *a || r == -a);
    }

    #[test]
    fn sqrt_result_squares_back((_f, v) in field_and(1)) {
        if let Some(r) = v[0].sqrt() {
            prop_assert_eq!(&r * &r, v[0].clone());
        }
    }

    #[test]
    fn quadratic_with_known_roots((f, v) in field_and(3)) {
        let (r1, r2, k) = (&v[0], &v[1], &v[2]);
        prop_assume!(!k.is_zero());
        // k (t - r1)(t - r2)
        let p = UniPoly::linear_factor(r1).mul(&UniPoly::linear_factor(r2)).scale(k);
        prop_assert_eq!(p.field(), &f);
        match solve_quadratic(&p).unwrap() {
            QuadraticSolution::Roots(a, b) => {
                let mut want = [r1.clone(), r2.clone()];
                want.sort();
                prop_assert_eq!([a, b], want);
            }
            other => prop_assert!(false, "expected roots, got {:?}", other),
        }
    }

    #[test]
    fn solutions_are_roots((_f, v) in field_and(3)) {
        let p = UniPoly::new(v.clone(), v[0].field());
        prop_assume!(p.degree() == Some(2));
        match solve_quadratic(&p).unwrap() {
            QuadraticSolution::Roots(a, b) => {
                prop_assert!(p.eval(&a).is_zero());
                prop_assert!(p.eval(&b).is_zero());
            }
            QuadraticSolution::Irreducible { discriminant } => {
                prop_assert!(discriminant.sqrt().is_none());
            }
            QuadraticSolution::LinearOrConstant(_) => prop_assert!(false, "degree two"),
        }
    }
}
