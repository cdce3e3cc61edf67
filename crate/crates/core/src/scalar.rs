//! Exact coefficient fields: the rationals, the Gaussian rationals `Q(i)` and
//! prime fields `F_p` with `p` odd.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::ring::Ring;

/// Which exact field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldKind {
    Rational,
    Gaussian,
    Prime(u64),
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

impl FieldKind {
    /// `F_p`, rejecting anything but odd primes.
    pub fn prime(p: u64) -> Result<Self> {
        if is_odd_prime(p) {
            Ok(FieldKind::Prime(p))
        } else {
            Err(AlgebraError::InvalidModulus(p))
        }
    }

    pub fn zero(self) -> ExactScalar {
        self.from_int(0)
    }

    pub fn one(self) -> ExactScalar {
        self.from_int(1)
    }

    pub fn from_int(self, k: i64) -> ExactScalar {
        match self {
            FieldKind::Rational => ExactScalar::Rational(BigRational::from_integer(k.into())),
            FieldKind::Gaussian => ExactScalar::Gaussian {
                re: BigRational::from_integer(k.into()),
                im: BigRational::zero(),
            },
            FieldKind::Prime(p) => ExactScalar::Prime {
                residue: k.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Maps a rational number into this field. Fails in `F_p` when `p`
    /// divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<ExactScalar> {
        match self {
            FieldKind::Rational => Ok(ExactScalar::Rational(q.clone())),
            FieldKind::Gaussian => Ok(ExactScalar::Gaussian {
                re: q.clone(),
                im: BigRational::zero(),
            }),
            FieldKind::Prime(p) => {
                let num = reduce_bigint(q.numer(), p);
                let den = reduce_bigint(q.denom(), p);
                if den == 0 {
                    return Err(AlgebraError::DivisionByZero);
                }
                let inv = pow_mod(den, p - 2, p);
                Ok(ExactScalar::Prime {
                    residue: ((num as u128 * inv as u128) % p as u128) as u64,
                    modulus: p,
                })
            }
        }
    }

    /// A square root of −1 in this field, when one exists.
    pub fn imaginary_unit(self) -> Option<ExactScalar> {
        match self {
            FieldKind::Rational => None,
            FieldKind::Gaussian => Some(ExactScalar::Gaussian {
                re: BigRational::zero(),
                im: BigRational::one(),
            }),
            FieldKind::Prime(p) => {
                if p % 4 != 1 {
                    return None;
                }
                // g^((p-1)/4) for any quadratic non-residue g.
                (2..p)
                    .find(|&g| pow_mod(g, (p - 1) / 2, p) == p - 1)
                    .map(|g| ExactScalar::Prime {
                        residue: pow_mod(g, (p - 1) / 4, p),
                        modulus: p,
                    })
            }
        }
    }

    /// Parses a scalar written in this field's text encoding.
    pub fn parse_scalar(self, s: &str) -> Result<ExactScalar> {
        let s = s.trim();
        let err = || AlgebraError::Parse {
            what: "scalar",
            input: s.to_string(),
        };
        match self {
            FieldKind::Rational => parse_rational(s).map(ExactScalar::Rational).ok_or_else(err),
            FieldKind::Gaussian => parse_gaussian(s).ok_or_else(err),
            FieldKind::Prime(p) => {
                if let Some((r, m)) = s.split_once(" mod ") {
                    let m: u64 = m.trim().parse().map_err(|_| err())?;
                    if m != p {
                        return Err(AlgebraError::FieldMismatch {
                            left: format!("fp:{p}"),
                            right: format!("fp:{m}"),
                        });
                    }
                    let r: BigInt = r.trim().parse().map_err(|_| err())?;
                    Ok(ExactScalar::Prime {
                        residue: reduce_bigint(&r, p),
                        modulus: p,
                    })
                } else {
                    let q = parse_rational(s).ok_or_else(err)?;
                    self.from_rational(&q)
                }
            }
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "q"),
            FieldKind::Gaussian => write!(f, "qi"),
            FieldKind::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" => Ok(FieldKind::Rational),
            "qi" => Ok(FieldKind::Gaussian),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| AlgebraError::Parse {
                        what: "field",
                        input: s.to_string(),
                    })?;
                FieldKind::prime(p)
            }
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn parse_gaussian(s: &str) -> Option<ExactScalar> {
    let Some(body) = s.strip_suffix('i') else {
        return parse_rational(s).map(|re| ExactScalar::Gaussian {
            re,
            im: BigRational::zero(),
        });
    };
    let body = body.trim_end();
    // split at the last sign that is not leading and not part of an exponent
    let split = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .next_back();
    let (re, im) = match split {
        Some(i) => (parse_rational(&body[..i])?, {
            let imag = body[i..].trim();
            let imag = imag.strip_prefix('+').unwrap_or(imag);
            if imag == "-" {
                -BigRational::one()
            } else if imag.is_empty() {
                BigRational::one()
            } else {
                parse_rational(imag)?
            }
        }),
        None => (
            BigRational::zero(),
            if body.is_empty() {
                BigRational::one()
            } else if body == "-" {
                -BigRational::one()
            } else {
                parse_rational(body)?
            },
        ),
    };
    Some(ExactScalar::Gaussian { re, im })
}

/// An element of `Q`, `Q(i)` or `F_p`.
///
/// Rationals are kept in lowest terms with positive denominator (the
/// invariant `BigRational` maintains); prime-field residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rational(BigRational),
    Gaussian { re: BigRational, im: BigRational },
    Prime { residue: u64, modulus: u64 },
}

impl ExactScalar {
    pub fn rational(n: i64, d: i64) -> Self {
        ExactScalar::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        ExactScalar::Gaussian { re, im }
    }

    pub fn field(&self) -> FieldKind {
        match self {
            ExactScalar::Rational(_) => FieldKind::Rational,
            ExactScalar::Gaussian { .. } => FieldKind::Gaussian,
            ExactScalar::Prime { modulus, .. } => FieldKind::Prime(*modulus),
        }
    }

    /// Re-normalizes the representation. Values built through the public
    /// API are already normal, so this is the identity on them.
    pub fn normalized(&self) -> Self {
        match self {
            ExactScalar::Rational(q) => ExactScalar::Rational(q.reduced()),
            ExactScalar::Gaussian { re, im } => ExactScalar::Gaussian {
                re: re.reduced(),
                im: im.reduced(),
            },
            ExactScalar::Prime { residue, modulus } => ExactScalar::Prime {
                residue: residue % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactScalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    fn mismatch(&self, other: &Self) -> AlgebraError {
        AlgebraError::FieldMismatch {
            left: self.field().to_string(),
            right: other.field().to_string(),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        use ExactScalar::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Ok(Rational(a + b)),
            (Gaussian { re: a, im: b }, Gaussian { re: c, im: d }) => Ok(Gaussian {
                re: a + c,
                im: b + d,
            }),
            (Prime { residue: a, modulus: p }, Prime { residue: b, modulus: q }) if p == q => {
                Ok(Prime {
                    residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        use ExactScalar::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Ok(Rational(a * b)),
            (Gaussian { re: a, im: b }, Gaussian { re: c, im: d }) => Ok(Gaussian {
                re: a * c - b * d,
                im: a * d + b * c,
            }),
            (Prime { residue: a, modulus: p }, Prime { residue: b, modulus: q }) if p == q => {
                Ok(Prime {
                    residue: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn checked_inv(&self) -> Result<Self> {
        use ExactScalar::*;
        if Ring::is_zero(self) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Rational(a) => Rational(a.recip()),
            Gaussian { re, im } => {
                let norm = re * re + im * im;
                Gaussian {
                    re: re / &norm,
                    im: -(im / &norm),
                }
            }
            Prime { residue, modulus } => Prime {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(&rhs.checked_inv()?)
    }
}

impl Ring for ExactScalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }

    fn one_like(&self) -> Self {
        self.field().one()
    }

    fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(q) => q.is_zero(),
            ExactScalar::Gaussian { re, im } => re.is_zero() && im.is_zero(),
            ExactScalar::Prime { residue, .. } => *residue == 0,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn neg(&self) -> Self {
        match self {
            ExactScalar::Rational(q) => ExactScalar::Rational(-q),
            ExactScalar::Gaussian { re, im } => ExactScalar::Gaussian {
                re: -re,
                im: -im,
            },
            ExactScalar::Prime { residue, modulus } => ExactScalar::Prime {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }

    fn from_int_like(&self, k: i64) -> Self {
        self.field().from_int(k)
    }

    fn div_int(&self, k: i64) -> Option<Self> {
        let k = self.from_int_like(k);
        self.checked_div(&k).ok()
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }

    fn is_integral_domain(&self) -> bool {
        true
    }

    fn imaginary_unit_like(&self) -> Option<Self> {
        self.field().imaginary_unit()
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(q) => write!(f, "{}", fmt_rational(q)),
            ExactScalar::Gaussian { re, im } => {
                let sign = if im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{} i", fmt_rational(re), sign, fmt_rational(&im.abs()))
            }
            ExactScalar::Prime { residue, modulus } => write!(f, "{residue} mod {modulus}"),
        }
    }
}

impl FromStr for ExactScalar {
    type Err = AlgebraError;

    /// Parses with the field inferred from the text: `"r mod p"` is a
    /// prime-field element, a trailing `i` marks a Gaussian rational and
    /// anything else is rational.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((_, m)) = t.split_once(" mod ") {
            let p: u64 = m.trim().parse().map_err(|_| AlgebraError::Parse {
                what: "scalar",
                input: s.to_string(),
            })?;
            FieldKind::prime(p)?.parse_scalar(t)
        } else if t.ends_with('i') {
            FieldKind::Gaussian.parse_scalar(t)
        } else {
            FieldKind::Rational.parse_scalar(t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::rational(n, d)
    }

    #[test]
    fn rational_sum_is_in_lowest_terms() {
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = FieldKind::Gaussian.imaginary_unit().unwrap();
        assert_eq!(i.mul(&i), FieldKind::Gaussian.from_int(-1));
    }

    #[test]
    fn prime_field_products() {
        let f5 = FieldKind::prime(5).unwrap();
        assert_eq!(f5.from_int(3).mul(&f5.from_int(4)), f5.from_int(2));
        let f7 = FieldKind::prime(7).unwrap();
        assert!(f7.from_int(14).is_zero());
    }

    #[test]
    fn zero_tests() {
        assert!(q(0, 1).is_zero());
        assert!(!q(2, 4).is_zero());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = q(1, 2);
        let b = FieldKind::Gaussian.one();
        assert!(matches!(
            a.checked_add(&b),
            Err(AlgebraError::FieldMismatch { .. })
        ));
        let f3 = FieldKind::prime(3).unwrap().one();
        let f5 = FieldKind::prime(5).unwrap().one();
        assert!(f3.checked_mul(&f5).is_err());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(q(0, 1).checked_inv(), Err(AlgebraError::DivisionByZero));
        assert_eq!(
            FieldKind::Gaussian.zero().checked_inv(),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn moduli_must_be_odd_primes() {
        assert!(FieldKind::prime(2).is_err());
        assert!(FieldKind::prime(9).is_err());
        assert!(FieldKind::prime(101).is_ok());
    }

    #[test]
    fn gaussian_inverse() {
        let z = FieldKind::Gaussian.parse_scalar("1+2 i").unwrap();
        let w = z.checked_inv().unwrap();
        assert_eq!(w.to_string(), "1/5-2/5 i");
        assert_eq!(z.mul(&w), FieldKind::Gaussian.one());
    }

    #[test]
    fn sqrt_minus_one_in_prime_fields() {
        let f13 = FieldKind::prime(13).unwrap();
        let i = f13.imaginary_unit().unwrap();
        assert_eq!(i.mul(&i), f13.from_int(-1));
        assert!(FieldKind::prime(7).unwrap().imaginary_unit().is_none());
        assert!(FieldKind::Rational.imaginary_unit().is_none());
    }

    #[test]
    fn text_round_trip() {
        for s in ["5/6", "-3", "0", "1/2+1/3 i", "0-1 i", "-7/2+0 i", "4 mod 7"] {
            let v: ExactScalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!(
            FieldKind::Gaussian.parse_scalar("3/4").unwrap().to_string(),
            "3/4+0 i"
        );
        assert_eq!(
            FieldKind::prime(7).unwrap().parse_scalar("1/2").unwrap(),
            FieldKind::prime(7).unwrap().from_int(4)
        );
    }

    #[test]
    fn field_descriptors() {
        assert_eq!("fp:101".parse::<FieldKind>().unwrap(), FieldKind::Prime(101));
        assert_eq!("qi".parse::<FieldKind>().unwrap(), FieldKind::Gaussian);
        assert!("fp:4".parse::<FieldKind>().is_err());
    }
}
