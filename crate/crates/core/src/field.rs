//! Exact scalars: rationals and integers modulo a prime.
//!
//! Every [`Scalar`] carries enough information to identify its field, so
//! arithmetic between values of different fields is a programming error and
//! panics. Constructors go through a [`Field`] descriptor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Largest modulus accepted for prime fields; keeps products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The working field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`. Rejects composites and moduli above [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Field, Error> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::InvalidField(format!(
                "modulus {p} is not a prime below 2^31"
            )));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    fn embed_integer(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor_big(p);
                Scalar::Mod { value: r, modulus: p }
            }
        }
    }

    /// Parses a decimal integer or a `p/q` fraction. Over `F_p` a fraction
    /// means `p * q^-1`.
    pub fn parse(&self, text: &str) -> Result<Scalar, Error> {
        let text = text.trim();
        let bad = || Error::InvalidScalar(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        let n = self.embed_integer(&num);
        let d = self.embed_integer(&den);
        let inv = d.inv().ok_or_else(bad)?;
        Ok(&n * &inv)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidField(s.to_string()))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(s.to_string()))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

trait ModFloor {
    fn mod_floor_big(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("residue fits")
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
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

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// In-place `self -= factor * other`; the hot path of elimination.
    pub fn sub_mul_assign(&mut self, factor: &Scalar, other: &Scalar) {
        match (self, factor, other) {
            (Scalar::Rat(a), Scalar::Rat(f), Scalar::Rat(o)) => {
                *a -= f * o;
            }
            (
                Scalar::Mod { value, modulus },
                Scalar::Mod { value: f, modulus: m1 },
                Scalar::Mod { value: o, modulus: m2 },
            ) => {
                assert!(*modulus == *m1 && *m1 == *m2, "field mismatch");
                let p = *modulus;
                let prod = (f * o) % p;
                *value = (*value + p - prod) % p;
            }
            _ => panic!("field mismatch between scalars"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $modop:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat($rat(a, b)),
                    (
                        Scalar::Mod { value: a, modulus: p },
                        Scalar::Mod { value: b, modulus: q },
                    ) => {
                        assert_eq!(p, q, "field mismatch between scalars");
                        Scalar::Mod {
                            value: $modop(*a, *b, *p),
                            modulus: *p,
                        }
                    }
                    _ => panic!("field mismatch between scalars"),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a, b, p| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a, b, p| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a: u64, b: u64, p| a * b % p);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
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

impl Scalar {
    /// Sign-aware integer view used by diagnostics; `None` for proper fractions.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rat(_) => None,
            Scalar::Mod { value, .. } => Some(*value as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rational;
        let a = q.parse("4/6").unwrap();
        assert_eq!(a.to_string(), "2/3");
        let b = q.parse("-3/-6").unwrap();
        assert_eq!(b.to_string(), "1/2");
        assert_eq!(q.parse("2/-4").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, f.from_i64(6));
        assert_eq!(f.parse("1/3").unwrap(), f.from_i64(5));
        let inv = f.from_i64(3).inv().unwrap();
        assert!((&inv * &f.from_i64(3)).is_one());
        assert!(f.from_i64(14).is_zero());
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn field_descriptor_round_trip() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("Fp:5".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("Fp:6".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
        assert_eq!(Field::Prime(11).to_string(), "Fp:11");
    }

    #[test]
    fn sub_mul_assign_matches_operators() {
        let q = Field::Rational;
        let mut a = q.parse("1/2").unwrap();
        let f = q.parse("2/3").unwrap();
        let o = q.parse("-3").unwrap();
        let expected = &a - &(&f * &o);
        a.sub_mul_assign(&f, &o);
        assert_eq!(a, expected);
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = Field::Rational.one() + Field::Prime(3).one();
    }
}
