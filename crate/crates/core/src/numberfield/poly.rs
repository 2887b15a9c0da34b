use std::fmt;

use super::field::{Field, FieldDescriptor, FieldElement};
use super::rational::Rational;
use super::FieldError;

/// Univariate polynomial over a field, coefficients lowest degree first,
/// trailing zeros stripped.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
    field: Field,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<FieldElement>, field: &Field) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            coeffs,
            field: field.clone(),
        }
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly::new(Vec::new(), field)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![FieldElement::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out, &self.field)
    }

    pub fn scale(&self, s: &FieldElement) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * s).collect(), &self.field)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Option<UniPoly> {
        let lead = self.leading()?.inverse().ok()?;
        Some(self.scale(&lead))
    }

    /// `x - r`.
    pub fn linear_factor(r: &FieldElement) -> UniPoly {
        let f = r.field().clone();
        UniPoly::new(vec![-r, FieldElement::one(&f)], &f)
    }

    /// Applies `sigma` coefficient-wise.
    pub fn conjugate(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.conjugate()).collect(), &self.field)
    }

    /// Moves a polynomial with rational coefficients into another field.
    pub fn embed(&self, target: &Field) -> Result<UniPoly, FieldError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(coeffs, target))
    }

    pub fn render(&self, var: &str, symbol: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = match c.as_rational() {
                Some(q) => (q.is_negative(), q.abs()),
                None => (false, Rational::zero()),
            };
            let coeff = if c.as_rational().is_none() {
                format!("({})", c.render(symbol))
            } else if body.is_one() && i > 0 {
                String::new()
            } else if i > 0 {
                format!("{body}*")
            } else {
                body.to_string()
            };
            let coeff = if c.as_rational().is_none() && i > 0 { format!("{coeff}*") } else { coeff };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&coeff);
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x", "w"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Outcome of solving a polynomial of degree at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticSolution {
    /// Degree two with a nonsquare discriminant.
    Irreducible { discriminant: FieldElement },
    /// Degree two, roots in canonical order (equal for a double root).
    Roots(FieldElement, FieldElement),
    /// Degree at most one; the root when the degree is exactly one.
    LinearOrConstant(Option<FieldElement>),
}

impl QuadraticSolution {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, QuadraticSolution::Irreducible { .. })
    }

    pub fn distinct_roots(&self) -> Option<(&FieldElement, &FieldElement)> {
        match self {
            QuadraticSolution::Roots(a, b) if a != b => Some((a, b)),
            _ => None,
        }
    }
}

pub fn discriminant(p: &UniPoly) -> FieldElement {
    let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let four = FieldElement::from_int(4, p.field());
    &(&b * &b) - &(&four * &(&a * &c))
}

pub fn solve_quadratic(p: &UniPoly) -> Result<QuadraticSolution, FieldError> {
    match p.degree() {
        None | Some(0) => Ok(QuadraticSolution::LinearOrConstant(None)),
        Some(1) => {
            let root = -&(&p.coeff(0) / &p.coeff(1));
            Ok(QuadraticSolution::LinearOrConstant(Some(root)))
        }
        Some(2) => {
            let disc = discriminant(p);
            match disc.sqrt() {
                None => Ok(QuadraticSolution::Irreducible { discriminant: disc }),
                Some(s) => {
                    let two_a = &FieldElement::from_int(2, p.field()) * &p.coeff(2);
                    let nb = -&p.coeff(1);
                    let mut r1 = &(&nb + &s) / &two_a;
                    let mut r2 = &(&nb - &s) / &two_a;
                    if r2 < r1 {
                        std::mem::swap(&mut r1, &mut r2);
                    }
                    Ok(QuadraticSolution::Roots(r1, r2))
                }
            }
        }
        Some(d) => Err(FieldError::DegreeTooHigh(d)),
    }
}

/// Adjoins a root of an irreducible quadratic over Q.
///
/// Returns the new field (generator `w` a root of the monic form of `p`)
/// and the embedding of Q into it.
pub fn extend_by_quadratic(
    base: &Field,
    p: &UniPoly,
) -> Result<(Field, impl Fn(&Rational) -> FieldElement), FieldError> {
    if !base.is_rational() {
        return Err(FieldError::TowerTooDeep);
    }
    if p.degree() != Some(2) {
        return Err(FieldError::Reducible(format!(
            "extension polynomial must have degree 2, got {p}"
        )));
    }
    let monic = p.monic().ok_or(FieldError::DivisionByZero)?;
    let c0 = monic.coeff(0).as_rational().cloned().ok_or(FieldError::Mismatch)?;
    let c1 = monic.coeff(1).as_rational().cloned().ok_or(FieldError::Mismatch)?;
    let field = FieldDescriptor::quadratic(c0, c1)?;
    let target = field.clone();
    Ok((field, move |q: &Rational| {
        FieldElement::from_rational(q.clone(), &target)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn poly(cs: &[i64], f: &Field) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| FieldElement::from_int(c, f)).collect(), f)
    }

    #[test]
    fn rendering() {
        let f = FieldDescriptor::rationals();
        assert_eq!(poly(&[-5, 3, -1], &f).render("t", "w"), "-t^2 + 3*t - 5");
        assert_eq!(poly(&[0, -1], &f).render("t", "w"), "-t");
        let g = FieldDescriptor::quadratic(q(1), q(1)).unwrap();
        let w = FieldElement::generator(&g).unwrap();
        let p = UniPoly::new(vec![FieldElement::one(&g), w, FieldElement::from_int(2, &g)], &g);
        assert_eq!(p.render("t", "w"), "2*t^2 + (w)*t + 1");
    }

    #[test]
    fn irreducible_over_q() {
        let f = FieldDescriptor::rationals();
        let p = poly(&[1, -1, 1], &f);
        match solve_quadratic(&p).unwrap() {
            QuadraticSolution::Irreducible { discriminant } => {
                assert_eq!(discriminant, FieldElement::from_int(-3, &f))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn splits_over_eisenstein() {
        let f = FieldDescriptor::quadratic(q(1), q(1)).unwrap();
        let p = poly(&[1, -1, 1], &f);
        let w = FieldElement::generator(&f).unwrap();
        let one = FieldElement::one(&f);
        match solve_quadratic(&p).unwrap() {
            QuadraticSolution::Roots(a, b) => {
                let mut expected = vec![&one + &w, -&w];
                expected.sort();
                assert_eq!(vec![a, b], expected);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_roots() {
        let f = FieldDescriptor::rationals();
        let p = poly(&[-10, 19, -6], &f);
        assert_eq!(
            solve_quadratic(&p).unwrap(),
            QuadraticSolution::Roots(
                FieldElement::from_rational(Rational::new(2, 3), &f),
                FieldElement::from_rational(Rational::new(5, 2), &f)
            )
        );
        let lin = poly(&[3, 2], &f);
        assert_eq!(
            solve_quadratic(&lin).unwrap(),
            QuadraticSolution::LinearOrConstant(Some(FieldElement::from_rational(
                Rational::new(-3, 2),
                &f
            )))
        );
        assert!(solve_quadratic(&poly(&[1, 0, 0, 1], &f)).is_err());
    }

    #[test]
    fn extension() {
        let f = FieldDescriptor::rationals();
        let (g, emb) = extend_by_quadratic(&f, &poly(&[1, 1, 1], &f)).unwrap();
        assert_eq!(g.min_poly(), Some((&q(1), &q(1))));
        assert_eq!(emb(&q(3)), FieldElement::from_int(3, &g));
        let w = FieldElement::generator(&g).unwrap();
        let p = poly(&[1, 1, 1], &f).embed(&g).unwrap();
        assert!(p.eval(&w).is_zero());
        assert!(p.eval(&(&(-&FieldElement::one(&g)) - &w)).is_zero());

        let (h, _) = extend_by_quadratic(&f, &poly(&[-1, 1, 1], &f)).unwrap();
        assert_eq!(h.discriminant(), Some(q(5)));

        assert!(extend_by_quadratic(&f, &poly(&[-1, 0, 1], &f)).is_err());
        assert!(matches!(
            extend_by_quadratic(&g, &poly(&[1, 0, 1], &g)),
            Err(FieldError::TowerTooDeep)
        ));
    }
}
