//! Exact scalars over the rationals and over prime fields.
//!
//! A [`Scalar`] carries its field with it, so a matrix or a complex never has
//! to be told separately which arithmetic to use. Mixing fields is a logic
//! error and panics; every public constructor that combines user-supplied
//! data checks [`FieldDesc`] equality first and reports
//! [`Error::FieldMismatch`](crate::Error::FieldMismatch).

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which field the entries of a matrix (or a whole complex) live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rationals,
    Prime(u64),
}

impl FieldDesc {
    /// The prime field of order `p`, rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldDesc::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldDesc::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldDesc::Prime(p) => Scalar::Modular {
                value: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    /// `num / den`; over a prime field the denominator is inverted modulo p.
    /// Returns `None` when `den` vanishes in the field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        match self {
            FieldDesc::Rationals => {
                if den.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
                }
            }
            FieldDesc::Prime(_) => {
                let n = self.from_bigint(num);
                let d = self.from_bigint(den);
                d.inv().map(|d| &n * &d)
            }
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            FieldDesc::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldDesc::Prime(p) => {
                let m = BigInt::from(p);
                let mut r = n % &m;
                if r.is_negative() {
                    r += &m;
                }
                let value = r.iter_u64_digits().next().unwrap_or(0);
                Scalar::Modular { value, p }
            }
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element. Rationals are always kept in lowest terms with a
/// positive denominator; residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldDesc {
        match self {
            Scalar::Rational(_) => FieldDesc::Rationals,
            Scalar::Modular { p, .. } => FieldDesc::Prime(*p),
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
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    /// Integer power; negative exponents invert. Panics on `0^(negative)`.
    pub fn pow(&self, exp: i64) -> Scalar {
        let base = if exp < 0 {
            self.inv().expect("zero raised to a negative power")
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field().one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    fn check_same(&self, other: &Scalar) -> u64 {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => 0,
            (Scalar::Modular { p, .. }, Scalar::Modular { p: q, .. }) if p == q => *p,
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), other.field()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all of `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let p = self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: ((*a as u128 + *b as u128) % p as u128) as u64,
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let p = self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: mul_mod(*a, *b, p),
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
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

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(n: i64, d: i64) -> Scalar {
        FieldDesc::Rationals
            .from_ratio(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn rationals_normalize_eagerly() {
        let a = q(2, -4);
        assert_eq!(a, q(-1, 2));
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!((&q(1, 3) + &q(1, 6)).to_string(), "1/2");
        assert_eq!(q(6, 3).to_string(), "2");
    }

    #[test]
    fn prime_field_basics() {
        let f = FieldDesc::prime(5).unwrap();
        assert_eq!(f.from_i64(6), f.one());
        assert_eq!(f.from_i64(-1).to_string(), "4");
        assert_eq!(&f.from_i64(2) * &f.from_i64(3), f.one());
        assert_eq!(f.from_i64(3).inv().unwrap(), f.from_i64(2));
        assert!(f.zero().inv().is_none());
        assert_eq!(f.from_i64(2).pow(-1), f.from_i64(3));
    }

    #[test]
    fn primality() {
        assert!(FieldDesc::prime(4).is_err());
        assert!(FieldDesc::prime(1).is_err());
        assert!(FieldDesc::prime(2).is_ok());
        assert!(FieldDesc::prime(101).is_ok());
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn ratio_in_prime_field() {
        let f = FieldDesc::Prime(7);
        let s = f.from_ratio(&BigInt::from(1), &BigInt::from(3)).unwrap();
        assert_eq!(s, f.from_i64(5));
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_none());
        assert_eq!(f.from_bigint(&BigInt::from(-15)), f.from_i64(6));
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = &FieldDesc::Rationals.one() + &FieldDesc::Prime(3).one();
    }
}
