//! Exact arithmetic over Q and quadratic extensions of Q.

mod embed;
mod field;
mod modp;
mod poly;
mod rational;

pub use embed::{field_embeddings, FieldMap};
pub use field::{sqrt_in_field, ArithOp, Field, FieldDescriptor, FieldElement};
pub use modp::Reduction;
pub use poly::{discriminant, extend_by_quadratic, solve_quadratic, QuadraticSolution, UniPoly};
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("operands live in different fields")]
    Mismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value not in field: {0}")]
    NotInField(String),
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("only one quadratic extension of Q is supported")]
    TowerTooDeep,
    #[error("degree {0} exceeds the supported maximum of 2")]
    DegreeTooHigh(usize),
}
