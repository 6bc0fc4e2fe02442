//! Exact field elements: arbitrary-precision rationals and residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The ground field, identified by its characteristic.
///
/// Characteristic `0` stands for the rationals; any other value must be a prime `p`
/// and selects the prime field of `p` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u64) -> Result<Self, Error> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    /// Prime field; panics if `p` is not prime.
    pub fn prime(p: u64) -> Self {
        Self::new(p).expect("characteristic must be prime")
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_char_two(&self) -> bool {
        self.characteristic == 2
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            p => Scalar::Modular {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Embeds an exact rational; fails in positive characteristic when the
    /// denominator is divisible by `p`.
    pub fn from_rational(&self, q: &BigRational) -> Option<Scalar> {
        match self.characteristic {
            0 => Some(Scalar::Rational(q.clone())),
            p => {
                let modulus = BigInt::from(p);
                let num = reduce_bigint(q.numer(), &modulus);
                let den = reduce_bigint(q.denom(), &modulus);
                if den == 0 {
                    return None;
                }
                let num = Scalar::Modular { value: num, modulus: p };
                let den = Scalar::Modular { value: den, modulus: p };
                Some(&num * &den.inverse()?)
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        x.characteristic() == self.characteristic
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

fn reduce_bigint(x: &BigInt, modulus: &BigInt) -> u64 {
    let r = ((x % modulus) + modulus) % modulus;
    u64::try_from(r).expect("residue fits in u64")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact element of a [`FieldSpec`].
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `num-rational` canonical form), so derived equality is field equality.
/// Mixing elements of different fields in arithmetic is a usage bug and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn characteristic(&self) -> u64 {
        match self {
            Scalar::Rational(_) => 0,
            Scalar::Modular { modulus, .. } => *modulus,
        }
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec {
            characteristic: self.characteristic(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Small integer value when the element is an integer that fits in `i64`
    /// (for residues, the representative in `[0, p)`).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => i64::try_from(q.to_integer()).ok(),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => i64::try_from(*value).ok(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Scalar {
        match k {
            1 => self.clone(),
            -1 => -self,
            _ => self * &self.field().from_i64(k),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
fn check_same(a: u64, b: u64) {
    assert_eq!(a, b, "scalars from different fields");
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                check_same(*p, *q);
                let s = a + b;
                Scalar::Modular {
                    value: if s >= *p { s - p } else { s },
                    modulus: *p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                check_same(*p, *q);
                Scalar::Modular {
                    value: if a >= b { a - b } else { a + p - b },
                    modulus: *p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                check_same(*p, *q);
                Scalar::Modular {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(q) if q.is_integer() && q.numer().abs() < BigInt::from(i64::MAX) => {
                serializer.serialize_i64(i64::try_from(q.to_integer()).unwrap())
            }
            Scalar::Rational(q) => serializer.serialize_str(&q.to_string()),
            Scalar::Modular { value, .. } => serializer.serialize_u64(*value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(7919).is_ok());
    }

    #[test]
    fn modular_arithmetic() {
        let f = FieldSpec::prime(7);
        let a = f.from_i64(3);
        let b = f.from_i64(-4);
        assert_eq!(&a + &b, f.from_i64(6));
        assert_eq!(&a * &a.inverse().unwrap(), f.one());
        assert_eq!(-&f.zero(), f.zero());
        assert!(f.zero().inverse().is_none());
    }

    #[test]
    fn char_two_signs_collapse() {
        let f = FieldSpec::prime(2);
        assert_eq!(f.from_i64(-1), f.one());
    }

    #[test]
    fn rationals_are_canonical() {
        let f = FieldSpec::rationals();
        let half = f.from_rational(&BigRational::new(2.into(), 4.into())).unwrap();
        let other = f.from_rational(&BigRational::new((-1).into(), (-2).into())).unwrap();
        assert_eq!(half, other);
        assert_eq!(&half + &half, f.one());
    }

    #[test]
    fn rational_embedding_into_prime_field() {
        let f = FieldSpec::prime(5);
        let q = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&q).unwrap(), f.from_i64(3));
        assert!(f.from_rational(&BigRational::new(1.into(), 5.into())).is_none());
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = &FieldSpec::prime(2).one() + &FieldSpec::prime(3).one();
    }
}
