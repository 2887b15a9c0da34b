use super::field::{Field, FieldElement};
use super::poly::{solve_quadratic, QuadraticSolution, UniPoly};
use super::FieldError;

/// A field homomorphism fixing Q, determined by the image of the generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMap {
    source: Field,
    target: Field,
    image: Option<FieldElement>,
}

impl FieldMap {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    /// Image of the source generator; `None` for a source equal to Q.
    pub fn image(&self) -> Option<&FieldElement> {
        self.image.as_ref()
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if **x.field() != *self.source {
            return Err(FieldError::Mismatch);
        }
        let base = FieldElement::from_rational(x.a0().clone(), &self.target);
        Ok(match &self.image {
            None => base,
            Some(w) => &base + &w.scale(x.a1()),
        })
    }
}

/// All embeddings of `source` into `target`, in canonical order of the
/// generator image.
pub fn field_embeddings(source: &Field, target: &Field) -> Vec<FieldMap> {
    let Some((c0, c1)) = source.min_poly() else {
        return vec![FieldMap {
            source: source.clone(),
            target: target.clone(),
            image: None,
        }];
    };
    let p = UniPoly::new(
        vec![
            FieldElement::from_rational(c0.clone(), target),
            FieldElement::from_rational(c1.clone(), target),
            FieldElement::one(target),
        ],
        target,
    );
    match solve_quadratic(&p) {
        Ok(QuadraticSolution::Roots(a, b)) => [a, b]
            .into_iter()
            .map(|w| FieldMap {
                source: source.clone(),
                target: target.clone(),
                image: Some(w),
            })
            .collect(),
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{FieldDescriptor, Rational};

    #[test]
    fn eisenstein_presentations() {
        // w^2 + w + 1 and u^2 + 3 both give Q(sqrt -3)
        let f = FieldDescriptor::quadratic(Rational::from(1), Rational::from(1)).unwrap();
        let g = FieldDescriptor::quadratic(Rational::from(3), Rational::zero()).unwrap();
        let maps = field_embeddings(&f, &g);
        assert_eq!(maps.len(), 2);
        let w = FieldElement::generator(&f).unwrap();
        let rel = &(&(&w * &w) + &w) + &FieldElement::one(&f);
        assert!(rel.is_zero());
        for m in &maps {
            let x = m.image().unwrap();
            let v = &(&(x * x) + x) + &FieldElement::one(&g);
            assert!(v.is_zero());
            let y = m.apply(&(&w + &FieldElement::from_int(2, &f))).unwrap();
            assert_eq!(y, x + &FieldElement::from_int(2, &g));
        }
    }

    #[test]
    fn different_fields_have_no_embedding() {
        let f = FieldDescriptor::quadratic(Rational::from(1), Rational::from(1)).unwrap();
        let g = FieldDescriptor::quadratic(Rational::from(-1), Rational::from(1)).unwrap();
        assert!(field_embeddings(&f, &g).is_empty());
    }
}
