use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::FieldError;

/// The ground field of a computation: Q itself, or a quadratic extension
/// `Q[x]/(x^2 + c1 x + c0)` with irreducible defining polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    #[serde(rename = "rational")]
    Rationals,
    Quadratic {
        /// `[c0, c1]`, meaning `w^2 + c1 w + c0 = 0`.
        min_poly: [Rational; 2],
    },
}

/// Shared handle on a field descriptor.
pub type Field = Arc<FieldDescriptor>;

impl FieldDescriptor {
    pub fn rationals() -> Field {
        Arc::new(FieldDescriptor::Rationals)
    }

    /// Builds `Q(w)` with `w^2 + c1 w + c0 = 0`; fails when the polynomial
    /// splits over Q.
    pub fn quadratic(c0: Rational, c1: Rational) -> Result<Field, FieldError> {
        let disc = &(&c1 * &c1) - &(&Rational::from(4) * &c0);
        if disc.is_square() {
            return Err(FieldError::Reducible(format!(
                "x^2 + ({c1})x + ({c0}) has square discriminant {disc}"
            )));
        }
        Ok(Arc::new(FieldDescriptor::Quadratic { min_poly: [c0, c1] }))
    }

    /// `Q(sqrt(d))` for squarefree `d != 1`, presented by the generator of
    /// its ring of integers: `x^2 + x + (1 - d)/4` when `d = 1 mod 4`,
    /// otherwise `x^2 - d`.
    pub fn quadratic_from_class(d: &num_bigint::BigInt) -> Result<Field, FieldError> {
        use num_integer::Integer;
        let four = num_bigint::BigInt::from(4);
        if d.mod_floor(&four) == num_bigint::BigInt::from(1) {
            let c0 = Rational::new(num_bigint::BigInt::from(1) - d, four);
            FieldDescriptor::quadratic(c0, Rational::one())
        } else {
            FieldDescriptor::quadratic(Rational::from_integer(-d), Rational::zero())
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldDescriptor::Rationals)
    }

    pub fn min_poly(&self) -> Option<(&Rational, &Rational)> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Quadratic { min_poly: [c0, c1] } => Some((c0, c1)),
        }
    }

    /// `c1^2 - 4 c0` for a quadratic field.
    pub fn discriminant(&self) -> Option<Rational> {
        self.min_poly()
            .map(|(c0, c1)| c1 * c1 - &Rational::from(4) * c0)
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Quadratic { min_poly: [c0, c1] } => {
                let one = FieldDescriptor::rationals();
                let p = super::UniPoly::new(
                    [c0, c1, &Rational::one()].map(|c| FieldElement::from_rational(c.clone(), &one)).to_vec(),
                    &one,
                );
                write!(f, "Q(w), {} = 0", p.render("w", "w"))
            }
        }
    }
}

/// `a0 + a1 w` in a field of degree at most two over Q.
#[derive(Clone)]
pub struct FieldElement {
    a0: Rational,
    a1: Rational,
    field: Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    /// Builds `a0 + a1 w`; over Q the `a1` part must vanish.
    pub fn new(a0: Rational, a1: Rational, field: &Field) -> Result<Self, FieldError> {
        if field.is_rational() && !a1.is_zero() {
            return Err(FieldError::NotInField(format!("{a0} + ({a1})w over Q")));
        }
        Ok(FieldElement {
            a0,
            a1,
            field: field.clone(),
        })
    }

    pub fn from_rational(a0: Rational, field: &Field) -> Self {
        FieldElement {
            a0,
            a1: Rational::zero(),
            field: field.clone(),
        }
    }

    pub fn from_int(n: i64, field: &Field) -> Self {
        Self::from_rational(Rational::from(n), field)
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_rational(Rational::zero(), field)
    }

    pub fn one(field: &Field) -> Self {
        Self::from_rational(Rational::one(), field)
    }

    /// The generator `w`; `None` over Q.
    pub fn generator(field: &Field) -> Option<Self> {
        if field.is_rational() {
            None
        } else {
            Some(FieldElement {
                a0: Rational::zero(),
                a1: Rational::one(),
                field: field.clone(),
            })
        }
    }

    pub fn a0(&self) -> &Rational {
        &self.a0
    }

    pub fn a1(&self) -> &Rational {
        &self.a1
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a0.is_one() && self.a1.is_zero()
    }

    /// `Some(q)` when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.a1.is_zero() {
            Some(&self.a0)
        } else {
            None
        }
    }

    /// Re-homes a rational element into another field.
    pub fn embed(&self, target: &Field) -> Result<Self, FieldError> {
        if self.same_field(target) {
            return Ok(self.clone());
        }
        match self.as_rational() {
            Some(q) => Ok(Self::from_rational(q.clone(), target)),
            None => Err(FieldError::Mismatch),
        }
    }

    fn same_field(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.field, other) || *self.field == **other
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.same_field(&other.field) {
            Ok(())
        } else {
            Err(FieldError::Mismatch)
        }
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other),
            ArithOp::Sub => self.sub_unchecked(other),
            ArithOp::Mul => self.mul_unchecked(other),
            ArithOp::Div => {
                let inv = other.inverse()?;
                self.mul_unchecked(&inv)
            }
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.arith(other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.arith(other, ArithOp::Div)
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        FieldElement {
            a0: &self.a0 + &other.a0,
            a1: &self.a1 + &other.a1,
            field: self.field.clone(),
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        FieldElement {
            a0: &self.a0 - &other.a0,
            a1: &self.a1 - &other.a1,
            field: self.field.clone(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        match self.field.min_poly() {
            None => FieldElement {
                a0: &self.a0 * &other.a0,
                a1: Rational::zero(),
                field: self.field.clone(),
            },
            Some((c0, c1)) => {
                // w^2 = -c1 w - c0
                let hi = &self.a1 * &other.a1;
                let a0 = &(&self.a0 * &other.a0) - &(&hi * c0);
                let a1 =
                    &(&(&self.a0 * &other.a1) + &(&self.a1 * &other.a0)) - &(&hi * c1);
                FieldElement {
                    a0,
                    a1,
                    field: self.field.clone(),
                }
            }
        }
    }

    /// The nontrivial automorphism `w -> -c1 - w`; identity over Q.
    pub fn conjugate(&self) -> Self {
        match self.field.min_poly() {
            None => self.clone(),
            Some((_, c1)) => FieldElement {
                a0: &self.a0 - &(&self.a1 * c1),
                a1: -&self.a1,
                field: self.field.clone(),
            },
        }
    }

    /// `(N(x), Tr(x))`.
    pub fn norm_trace(&self) -> (Rational, Rational) {
        match self.field.min_poly() {
            None => (&self.a0 * &self.a0, &self.a0 + &self.a0),
            Some((c0, c1)) => {
                // N = a0^2 - c1 a0 a1 + c0 a1^2, Tr = 2 a0 - c1 a1
                let n = &(&(&self.a0 * &self.a0) - &(&(c1 * &self.a0) * &self.a1))
                    + &(&(c0 * &self.a1) * &self.a1);
                let t = &(&self.a0 + &self.a0) - &(c1 * &self.a1);
                (n, t)
            }
        }
    }

    pub fn norm(&self) -> Rational {
        self.norm_trace().0
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        let inv = n.recip().ok_or(FieldError::DivisionByZero)?;
        let c = self.conjugate();
        Ok(FieldElement {
            a0: &c.a0 * &inv,
            a1: &c.a1 * &inv,
            field: self.field.clone(),
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement {
            a0: &self.a0 * q,
            a1: &self.a1 * q,
            field: self.field.clone(),
        }
    }

    /// Square root inside the field, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        sqrt_in_field(self)
    }

    /// Canonical total order: lexicographic on `(a0, a1)`; notational only.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.a0.cmp(&other.a0).then_with(|| self.a1.cmp(&other.a1))
    }

    pub fn to_complex(&self, root: (f64, f64)) -> (f64, f64) {
        let a0 = self.a0.to_f64().unwrap_or(f64::NAN);
        let a1 = self.a1.to_f64().unwrap_or(f64::NAN);
        (a0 + a1 * root.0, a1 * root.1)
    }
}

/// Square root of `d` in its own field, or `None`.
///
/// Over Q(w) a root `u + v w` with `v != 0` satisfies
/// `u^2 - c0 v^2 = d0` and `2uv - c1 v^2 = d1`; eliminating `u` leaves
/// `(c1^2 - 4c0) t^2 + (2 c1 d1 - 4 d0) t + d1^2 = 0` in `t = v^2`.
pub fn sqrt_in_field(d: &FieldElement) -> Option<FieldElement> {
    let field = d.field.clone();
    let (c0, c1) = match field.min_poly() {
        None => return d.a0.sqrt().map(|r| FieldElement::from_rational(r, &field)),
        Some((c0, c1)) => (c0.clone(), c1.clone()),
    };
    if d.is_zero() {
        return Some(d.clone());
    }
    if d.a1.is_zero() {
        if let Some(u) = d.a0.sqrt() {
            return Some(FieldElement::from_rational(u, &field));
        }
    }
    let four = Rational::from(4);
    let qa = &(&c1 * &c1) - &(&four * &c0);
    let qb = &(&(&Rational::from(2) * &c1) * &d.a1) - &(&four * &d.a0);
    let qc = &d.a1 * &d.a1;
    let disc = &(&qb * &qb) - &(&(&four * &qa) * &qc);
    let s = disc.sqrt()?;
    let two_a = &Rational::from(2) * &qa;
    let mut ts = vec![(&(-&qb) + &s) / two_a.clone(), (&(-&qb) - &s) / two_a];
    ts.sort();
    ts.dedup();
    for t in ts {
        if t.is_zero() {
            continue;
        }
        let Some(v) = t.sqrt() else { continue };
        let u = &(&d.a1 + &(&c1 * &t)) / &(&Rational::from(2) * &v);
        let x = FieldElement {
            a0: u,
            a1: v,
            field: field.clone(),
        };
        if &(&x * &x) == d {
            return Some(x);
        }
    }
    None
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.a0 == other.a0 && self.a1 == other.a1 && self.same_field(&other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a0.hash(state);
        self.a1.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

// Operators panic on field mismatch; use `arith` for the fallible form.
macro_rules! field_binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.arith(rhs, $op) {
                    Ok(v) => v,
                    Err(e) => panic!("field arithmetic: {e}"),
                }
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

field_binop!(Add, add, ArithOp::Add);
field_binop!(Sub, sub, ArithOp::Sub);
field_binop!(Mul, mul, ArithOp::Mul);
field_binop!(Div, div, ArithOp::Div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a0: -&self.a0,
            a1: -&self.a1,
            field: self.field.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("w"))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FieldElement {
    /// Human-readable form with the generator printed as `symbol`.
    pub fn render(&self, symbol: &str) -> String {
        if self.a1.is_zero() {
            return self.a0.to_string();
        }
        let coeff = if self.a1.is_one() {
            symbol.to_string()
        } else if (-&self.a1).is_one() {
            format!("-{symbol}")
        } else {
            format!("{}{symbol}", self.a1)
        };
        if self.a0.is_zero() {
            coeff
        } else if self.a1.is_negative() {
            format!("{} - {}", self.a0, coeff.trim_start_matches('-'))
        } else {
            format!("{} + {}", self.a0, coeff)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn eisenstein() -> Field {
        FieldDescriptor::quadratic(q(1, 1), q(1, 1)).unwrap()
    }

    #[test]
    fn class_presentations() {
        let f = |d: i64| FieldDescriptor::quadratic_from_class(&d.into()).unwrap();
        assert_eq!(f(-3), eisenstein());
        assert_eq!(f(5), FieldDescriptor::quadratic(q(-1, 1), q(1, 1)).unwrap());
        assert_eq!(f(-1), FieldDescriptor::quadratic(q(1, 1), q(0, 1)).unwrap());
        assert_eq!(f(2), FieldDescriptor::quadratic(q(-2, 1), q(0, 1)).unwrap());
    }

    fn sqrt5() -> Field {
        FieldDescriptor::quadratic(q(-5, 1), q(0, 1)).unwrap()
    }

    fn el(a0: Rational, a1: Rational, f: &Field) -> FieldElement {
        FieldElement::new(a0, a1, f).unwrap()
    }

    #[test]
    fn cancellation() {
        let f = eisenstein();
        let x = el(q(1, 2), q(1, 1), &f);
        let y = el(q(1, 2), q(-1, 1), &f);
        assert!((&x + &y).is_one());
    }

    #[test]
    fn min_poly_reduction_and_inverse() {
        let f = eisenstein();
        let w = FieldElement::generator(&f).unwrap();
        let expected = el(q(-1, 1), q(-1, 1), &f);
        assert_eq!(&w * &w, expected);
        let inv = w.inverse().unwrap();
        assert_eq!(inv, expected);
        assert!((&w * &inv).is_one());
    }

    #[test]
    fn conjugation() {
        let f = eisenstein();
        let w = FieldElement::generator(&f).unwrap();
        assert_eq!(w.conjugate(), el(q(-1, 1), q(-1, 1), &f));
        let qf = FieldDescriptor::rationals();
        let r = FieldElement::from_rational(q(7, 3), &qf);
        assert_eq!(r.conjugate(), r);
        let g = sqrt5();
        let x = el(q(1, 1), q(1, 1), &g);
        assert_eq!(x.conjugate(), el(q(1, 1), q(-1, 1), &g));
    }

    #[test]
    fn norms() {
        let f = eisenstein();
        let w = FieldElement::generator(&f).unwrap();
        assert_eq!(w.norm_trace(), (q(1, 1), q(-1, 1)));
        let qf = FieldDescriptor::rationals();
        assert_eq!(FieldElement::from_int(3, &qf).norm_trace(), (q(9, 1), q(6, 1)));
        let g = sqrt5();
        assert_eq!(el(q(2, 1), q(1, 1), &g).norm_trace(), (q(-1, 1), q(4, 1)));
    }

    #[test]
    fn square_roots() {
        let qf = FieldDescriptor::rationals();
        assert_eq!(
            FieldElement::from_rational(q(49, 4), &qf).sqrt(),
            Some(FieldElement::from_rational(q(7, 2), &qf))
        );
        let g = sqrt5();
        let s = FieldElement::from_int(5, &g).sqrt().unwrap();
        assert_eq!(&s * &s, FieldElement::from_int(5, &g));
        assert_eq!(FieldElement::from_int(2, &g).sqrt(), None);
        let f = eisenstein();
        let s = FieldElement::from_int(-3, &f).sqrt().unwrap();
        assert_eq!(&s * &s, FieldElement::from_int(-3, &f));
        let expected = el(q(1, 1), q(2, 1), &f);
        assert!(s == expected || s == -&expected);
    }

    #[test]
    fn mismatch_and_zero_division() {
        let f = eisenstein();
        let g = sqrt5();
        let a = FieldElement::one(&f);
        let b = FieldElement::one(&g);
        assert_eq!(a.checked_add(&b), Err(FieldError::Mismatch));
        assert_eq!(
            a.checked_div(&FieldElement::zero(&f)),
            Err(FieldError::DivisionByZero)
        );
        assert!(FieldDescriptor::quadratic(q(-1, 1), q(0, 1)).is_err());
        let qf = FieldDescriptor::rationals();
        assert!(FieldElement::new(q(1, 1), q(1, 1), &qf).is_err());
    }

    #[test]
    fn rendering() {
        let f = eisenstein();
        assert_eq!(el(q(2, 1), q(-1, 1), &f).render("z"), "2 - z");
        assert_eq!(el(q(0, 1), q(3, 2), &f).render("z"), "3/2z");
        assert_eq!(el(q(-1, 1), q(1, 1), &f).render("z"), "-1 + z");
    }
}
