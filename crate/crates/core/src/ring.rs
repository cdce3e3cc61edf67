use std::fmt;

/// A commutative ring with identity whose elements carry enough context to
/// build their own zero and one (prime-field moduli and polynomial variable
/// tables live in the values, not in the type).
///
/// Binary operations assume both operands live in the same ring; mixing
/// incompatible values is a programming error and panics. Checked variants
/// exist on the concrete scalar type where the distinction matters.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// The image of the integer `k` in this ring.
    #[allow(clippy::wrong_self_convention)]
    fn from_int_like(&self, k: i64) -> Self;

    /// Multiplication by `1/k`, or `None` when `k` is not a unit.
    fn div_int(&self, k: i64) -> Option<Self>;

    /// Exact division. `None` when `rhs` does not divide `self` (or the
    /// ring cannot decide it).
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    /// True for rings without zero divisors, where fraction-free elimination
    /// is valid.
    fn is_integral_domain(&self) -> bool;

    /// A square root of −1, if the ring has one.
    fn imaginary_unit_like(&self) -> Option<Self> {
        None
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn mul_int(&self, k: i64) -> Self {
        self.mul(&self.from_int_like(k))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn try_inv(&self) -> Option<Self> {
        self.one_like().try_div(self)
    }
}
