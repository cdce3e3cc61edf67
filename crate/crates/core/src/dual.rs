use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::ring::Ring;
use crate::scalar::{ExactScalar, FieldKind};

/// `a + b·ε` with `ε² = 0`: the smallest non-reduced commutative algebra,
/// used to exercise identities over rings with nilpotents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualNumber<F> {
    pub re: F,
    pub eps: F,
}

impl<F: Ring> DualNumber<F> {
    pub fn new(re: F, eps: F) -> Self {
        DualNumber { re, eps }
    }

    pub fn constant(re: F) -> Self {
        let eps = re.zero_like();
        DualNumber { re, eps }
    }

    pub fn epsilon_like(x: &F) -> Self {
        DualNumber {
            re: x.zero_like(),
            eps: x.one_like(),
        }
    }
}

impl<F: Ring> Ring for DualNumber<F> {
    fn zero_like(&self) -> Self {
        DualNumber::constant(self.re.zero_like())
    }

    fn one_like(&self) -> Self {
        DualNumber::constant(self.re.one_like())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        DualNumber::new(self.re.add(&rhs.re), self.eps.add(&rhs.eps))
    }

    fn sub(&self, rhs: &Self) -> Self {
        DualNumber::new(self.re.sub(&rhs.re), self.eps.sub(&rhs.eps))
    }

    fn mul(&self, rhs: &Self) -> Self {
        DualNumber::new(
            self.re.mul(&rhs.re),
            self.re.mul(&rhs.eps).add(&self.eps.mul(&rhs.re)),
        )
    }

    fn neg(&self) -> Self {
        DualNumber::new(self.re.neg(), self.eps.neg())
    }

    fn from_int_like(&self, k: i64) -> Self {
        DualNumber::constant(self.re.from_int_like(k))
    }

    fn div_int(&self, k: i64) -> Option<Self> {
        Some(DualNumber::new(self.re.div_int(k)?, self.eps.div_int(k)?))
    }

    /// Division by a unit `c + dε` (that is, `c` invertible). Division by
    /// non-units is not attempted.
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        let c_inv = rhs.re.try_inv()?;
        let re = self.re.mul(&c_inv);
        // (a + bε)/(c + dε) = a/c + (b c − a d)/c² ε
        let eps = self
            .eps
            .mul(&rhs.re)
            .sub(&self.re.mul(&rhs.eps))
            .mul(&c_inv)
            .mul(&c_inv);
        Some(DualNumber::new(re, eps))
    }

    fn is_integral_domain(&self) -> bool {
        false
    }

    fn imaginary_unit_like(&self) -> Option<Self> {
        self.re.imaginary_unit_like().map(DualNumber::constant)
    }
}

impl<F: fmt::Display> fmt::Display for DualNumber<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} eps", self.re, self.eps)
    }
}

impl DualNumber<ExactScalar> {
    /// Parses `"a + b eps"` (or a bare `a`) over the given field.
    pub fn parse(s: &str, field: FieldKind) -> Result<Self> {
        let s = s.trim();
        match s.strip_suffix("eps") {
            Some(body) => {
                let (a, b) = body.rsplit_once(" + ").ok_or_else(|| AlgebraError::Parse {
                    what: "dual number",
                    input: s.to_string(),
                })?;
                Ok(DualNumber::new(
                    field.parse_scalar(a)?,
                    field.parse_scalar(b)?,
                ))
            }
            None => Ok(DualNumber::constant(field.parse_scalar(s)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_squares_to_zero() {
        let e = DualNumber::epsilon_like(&FieldKind::Rational.one());
        assert!(e.mul(&e).is_zero());
        assert!(!e.is_zero());
    }

    #[test]
    fn division_by_units() {
        let f = FieldKind::Rational;
        let x = DualNumber::new(f.from_int(3), f.from_int(5));
        let y = DualNumber::new(f.from_int(2), f.from_int(7));
        let q = x.try_div(&y).unwrap();
        assert_eq!(q.mul(&y), x);
        assert!(x.try_div(&DualNumber::epsilon_like(&f.one())).is_none());
    }

    #[test]
    fn text_round_trip() {
        let f = FieldKind::Gaussian;
        let x = DualNumber::parse("1/2+1 i + -3+0 i eps", f).unwrap();
        assert_eq!(x.to_string(), "1/2+1 i + -3+0 i eps");
        assert_eq!(DualNumber::parse(&x.to_string(), f).unwrap(), x);
    }
}
