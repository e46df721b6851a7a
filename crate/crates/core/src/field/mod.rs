//! The ordered field ℚ(τ^(1/D)).
//!
//! Elements are ratios of polynomials in `s = τ^(1/D)` with rational
//! coefficients, ordered by their germ as `τ -> 0⁺`. This makes `τ` a
//! positive infinitesimal and `τ⁻¹` an infinitely large element, while all
//! four field operations, the order, and the real part stay exact.

mod element;
mod literal;
mod poly;

pub use element::FieldElement;
pub use literal::parse_literal;
pub use poly::Polynomial;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("context denominator {target} is not a multiple of {source_denom}")]
    ContextMismatch { source_denom: u32, target: u32 },
    #[error("relation requires positive arguments")]
    NonPositiveArgument,
    #[error("element {0} is infinitely large; real part undefined")]
    InfinitelyLarge(String),
    #[error("exponent {exponent} needs denominator dividing {denom}")]
    IncompatibleDenominator { exponent: String, denom: u32 },
    #[error("context denominator must be positive")]
    InvalidContext,
    #[error("cannot parse field literal {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// The generator of the field is `s = τ^(1/denom)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldContext {
    denom: u32,
}

impl Default for FieldContext {
    fn default() -> Self {
        Self { denom: 1 }
    }
}

impl FieldContext {
    pub fn new(denom: u32) -> Result<Self, FieldError> {
        if denom == 0 {
            return Err(FieldError::InvalidContext);
        }
        Ok(Self { denom })
    }

    pub fn denom(self) -> u32 {
        self.denom
    }

    /// Smallest context containing both.
    pub fn widen(self, other: Self) -> Self {
        Self {
            denom: self.denom.lcm(&other.denom),
        }
    }

    pub fn contains(self, x: &FieldElement) -> bool {
        self.denom.is_multiple_of(x.denom())
    }

    /// `τ^q`, provided `q`'s denominator divides this context's.
    pub fn tau_pow(self, q: &Rational) -> Result<FieldElement, FieldError> {
        let qd = q.denom();
        if (BigInt::from(self.denom) % qd) != BigInt::from(0) {
            return Err(FieldError::IncompatibleDenominator {
                exponent: q.to_string(),
                denom: self.denom,
            });
        }
        Ok(FieldElement::tau_pow(q))
    }

    /// Parses a literal and checks that it lives in this context.
    pub fn parse(self, s: &str) -> Result<FieldElement, FieldError> {
        let x = parse_literal(s)?;
        if !self.contains(&x) {
            return Err(FieldError::IncompatibleDenominator {
                exponent: format!("in {s:?}"),
                denom: self.denom,
            });
        }
        Ok(x)
    }
}
