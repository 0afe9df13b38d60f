//! Arbitrary-precision integers with an inline `i64` fast path.
//!
//! Almost every coefficient met in practice fits in a machine word, so `Int`
//! stores small values inline and promotes to `BigInt` only on overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub fn zero() -> Int {
        Int::Small(0)
    }

    pub fn one() -> Int {
        Int::Small(1)
    }

    fn norm(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn is_even(&self) -> bool {
        match self {
            Int::Small(v) => v % 2 == 0,
            Int::Big(b) => b.is_even(),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Floor division and the matching non-negative-divisor remainder.
    pub fn div_floor(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                Int::Small(a.div_floor(b))
            }
            _ => Int::norm(self.to_bigint().div_floor(&other.to_bigint())),
        }
    }

    /// Quotient rounded to the nearest integer, so that the remainder has
    /// absolute value at most |other|/2.
    pub fn div_round(&self, other: &Int) -> Int {
        let q = self.div_floor(other);
        let r = self - &(&q * other);
        let twice = &r + &r;
        if twice.abs().cmp_abs(other) == Ordering::Greater {
            if twice.is_negative() == other.is_negative() {
                &q + &Int::one()
            } else {
                &q - &Int::one()
            }
        } else {
            q
        }
    }

    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_bigint().abs().cmp(&other.to_bigint().abs()),
        }
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        (other - &(&other.div_floor(self) * self)).is_zero()
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => {
                Int::Small(a.gcd(b))
            }
            _ => Int::norm(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.to_bigint())
    }

    /// Returns the integer value of `q` if it has denominator 1.
    pub fn from_rational(q: &BigRational) -> Option<Int> {
        if q.is_integer() {
            Some(Int::from(q.to_integer()))
        } else {
            None
        }
    }

    pub fn mod2(&self) -> u8 {
        if self.is_even() {
            0
        } else {
            1
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::zero()
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Int {
        Int::Small(v as i64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::norm(b)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

/// Serialized as a JSON number when it fits in an `i64`, else as a decimal
/// string.
impl serde::Serialize for Int {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $trait<&'b Int> for &'a Int {
            type Output = Int;
            fn $method(self, rhs: &'b Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::norm(self.to_bigint().$method(rhs.to_bigint()))
            }
        }
        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &'b Int) -> Int {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::norm(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::norm(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl Zero for Int {
    fn zero() -> Int {
        Int::Small(0)
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Int {
        Int::Small(1)
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is 1.
pub fn rat_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let a = Int::from(i64::MAX);
        let b = &a + &Int::one();
        assert!(matches!(b, Int::Big(_)));
        let c = &b - &Int::one();
        assert_eq!(c, Int::Small(i64::MAX));
        let sq = &a * &a;
        assert_eq!(sq.to_bigint(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        assert_eq!(-Int::from(i64::MIN), Int::Big(-BigInt::from(i64::MIN)));
    }

    #[test]
    fn rounding_division() {
        let r = |a: i64, b: i64| Int::from(a).div_round(&Int::from(b)).to_i64().unwrap();
        assert_eq!(r(7, 2), 3);
        assert_eq!(r(-7, 2), -4);
        assert_eq!(r(8, 3), 3);
        assert_eq!(r(-8, 3), -3);
        assert_eq!(r(5, -3), -2);
        for a in -20..20 {
            for b in [-7i64, -3, -2, 2, 3, 7] {
                let q = r(a, b);
                let rem = a - q * b;
                assert!(2 * rem.abs() <= b.abs(), "{a} {b}");
            }
        }
    }

    #[test]
    fn rational_io() {
        assert_eq!(parse_rational("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("4/2"), Some(rat(2, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(rat_to_string(&rat(3, -6)), "-1/2");
        assert_eq!(rat_to_string(&rat(4, 2)), "2");
    }
}
