//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.
//!
//! A [`Scalar`] carries its field with it. The checked operations return
//! [`Error::FieldMismatch`] when the operands live in different fields; the
//! operator impls panic in that case, since every container in this crate
//! is single-field by construction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground field: the rationals or a prime field F_p with p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// F_p after checking that p is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= (1u64 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// True for F_2 and F_3, where some results from characteristic zero may fail.
    pub fn is_small_characteristic(&self) -> bool {
        matches!(self, Field::Prime(2) | Field::Prime(3))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
        }
    }

    /// The class of num/den; fails if den vanishes in this field.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let n = num.mod_floor(&m).to_u32().unwrap_or(0);
                let d = den.mod_floor(&m).to_u32().unwrap_or(0);
                let n = Scalar::Mod { value: n, modulus: *p };
                let d = Scalar::Mod { value: d, modulus: *p };
                n.checked_div(&d)
            }
        }
    }

    /// All elements of a prime field in the order 0, 1, ..., p-1.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..*p).map(|v| Scalar::Mod { value: v, modulus: *p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator (guaranteed by `BigRational`); residues lie in [0, p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Mod {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                })
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Mod {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                })
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        self.checked_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Mod { value, modulus } => {
                let ext = (*value as i64).extended_gcd(&(*modulus as i64));
                Ok(Scalar::Mod {
                    value: ext.x.rem_euclid(*modulus as i64) as u32,
                    modulus: *modulus,
                })
            }
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Multiply by a machine integer.
    pub fn mul_i64(&self, k: i64) -> Scalar {
        self * &self.field().from_i64(k)
    }

    /// Numerator and denominator of a rational; residues report denominator 1.
    pub fn as_fraction(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rat(r) => (r.numer().clone(), r.denom().clone()),
            Scalar::Mod { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    /// True if the value prints with a leading minus sign.
    pub fn is_negative_literal(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Add<&Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        &self + rhs
    }
}

impl Sub<&Scalar> for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        &self - rhs
    }
}

impl Mul<&Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        &self * rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rational.fraction(&BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn fraction_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn zero_absorbs() {
        let f = Field::Rational;
        assert!((&f.from_i64(3) * &f.zero()).is_zero());
    }

    #[test]
    fn inverse_mod_five_matches_euclid() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(2).inverse().unwrap(), f.from_i64(3));
        for v in 1..5 {
            let x = f.from_i64(v);
            assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn errors() {
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(f5.zero().inverse(), Err(Error::DivisionByZero)));
        assert!(matches!(q(1, 2).checked_add(&f5.one()), Err(Error::FieldMismatch)));
        assert!(matches!(Field::prime(6), Err(Error::InvalidField(_))));
        assert!(matches!(f5.fraction(&BigInt::from(1), &BigInt::from(10)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn negative_residue_is_reduced() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_i64(-1), Scalar::Mod { value: 6, modulus: 7 });
        assert_eq!(-&f.from_i64(0), f.zero());
    }

    proptest! {
        #[test]
        fn rationals_stay_canonical(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
            let x = q(a, b);
            let y = q(c, d);
            for z in [&x + &y, &x - &y, &x * &y] {
                let (n, den) = z.as_fraction();
                prop_assert!(den.is_positive());
                prop_assert!(n.gcd(&den).is_one());
            }
        }

        #[test]
        fn prime_field_division_inverts_multiplication(a in 0i64..101, b in 1i64..101) {
            let f = Field::prime(101).unwrap();
            let x = f.from_i64(a);
            let y = f.from_i64(b);
            prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x);
        }
    }
}
