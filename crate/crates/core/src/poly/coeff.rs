//! Exact rational coefficients.
//!
//! Values that fit in a pair of machine words stay inline; anything larger
//! spills into an arbitrary-precision `BigRational`. Every value is kept in
//! lowest terms with a positive denominator, and a value is stored inline
//! whenever it fits, so structural equality is numeric equality.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeff(Repr);

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Coeff(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Coeff(Repr::Small(n, 1))
    }

    /// Builds `num / den`; panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Coeff(Repr::Small(n, d)),
            _ => Coeff(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced with positive denominators.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Coeff(Repr::Small(n, d)),
            _ => Coeff(Repr::Big(r)),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    /// The value as a big integer, when it is one. Integer arithmetic on
    /// these skips the gcd normalization of `BigRational`.
    fn integer(&self) -> Option<Cow<'_, BigInt>> {
        match &self.0 {
            Repr::Small(n, 1) => Some(Cow::Owned(BigInt::from(*n))),
            Repr::Big(r) if r.is_integer() => Some(Cow::Borrowed(r.numer())),
            _ => None,
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_negative() {
                    -1
                } else if r.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "inverse of zero");
                Self::from_i128(*d as i128, *n as i128)
            }
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Coeff::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `gcd(a, c) / lcm(b, d)` for `a/b` and `c/d`, nonnegative; dividing by
    /// the gcd of a list of coefficients leaves coprime integers.
    pub fn gcd(&self, other: &Coeff) -> Coeff {
        match (&self.0, &other.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => Coeff::from_i128((*a as i128).gcd(&(*c as i128)), 1),
            _ => {
                if let (Some(a), Some(c)) = (self.integer(), other.integer()) {
                    return Coeff::from_bigint(a.gcd(&c));
                }
                let (a, b) = self.parts();
                let (c, d) = other.parts();
                Coeff::from_big(BigRational::new(a.gcd(&c), b.lcm(&d)))
            }
        }
    }

    /// Numerator and denominator as big integers.
    pub fn parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => (r.numer().clone(), r.denom().clone()),
        }
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::from_int(n)
    }
}

impl From<i32> for Coeff {
    fn from(n: i32) -> Self {
        Coeff::from_int(n as i64)
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Coeff(Repr::Small(s, 1)),
                        None => Coeff::from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Coeff::from_i128(a * d + c * b, b * d)
            }
            _ => match (self.integer(), rhs.integer()) {
                (Some(a), Some(b)) => Coeff::from_bigint(&*a + &*b),
                _ => Coeff::from_big(self.to_big() + rhs.to_big()),
            },
        }
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_sub(*c) {
                        Some(s) => Coeff(Repr::Small(s, 1)),
                        None => Coeff::from_i128(*a as i128 - *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Coeff::from_i128(a * d - c * b, b * d)
            }
            _ => match (self.integer(), rhs.integer()) {
                (Some(a), Some(b)) => Coeff::from_bigint(&*a - &*b),
                _ => Coeff::from_big(self.to_big() - rhs.to_big()),
            },
        }
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(s) => Coeff(Repr::Small(s, 1)),
                        None => Coeff::from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Coeff::from_i128(a * c, b * d)
            }
            _ => {
                if self.is_zero() || rhs.is_zero() {
                    return Coeff::zero();
                }
                if let (Some(a), Some(b)) = (self.integer(), rhs.integer()) {
                    return Coeff::from_bigint(&*a * &*b);
                }
                Coeff::from_big(self.to_big() * rhs.to_big())
            }
        }
    }
}

impl<'a> Div<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn div(self, rhs: &Coeff) -> Coeff {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Coeff::from_i128(a * d, b * c)
            }
            _ => {
                if let (Some(a), Some(b)) = (self.integer(), rhs.integer()) {
                    let (q, r) = a.div_rem(&b);
                    if r.is_zero() {
                        return Coeff::from_bigint(q);
                    }
                }
                Coeff::from_big(self.to_big() / rhs.to_big())
            }
        }
    }
}

impl<'a> Neg for &'a Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Coeff(Repr::Small(m, *d)),
                None => Coeff::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(r) => Coeff::from_big(-r),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: &Coeff) -> Coeff {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{}", n),
            Repr::Small(n, d) => write!(f, "{}/{}", n, d),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `n` or `n/d` with optional leading sign.
impl FromStr for Coeff {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| format!("bad integer `{}`", num))?;
        let d: BigInt = den.parse().map_err(|_| format!("bad integer `{}`", den))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Coeff::from_big(BigRational::new(n, d)))
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::zero()
    }
    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
}

impl One for Coeff {
    fn one() -> Self {
        Coeff::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_is_reduced() {
        let a = Coeff::new(2, 4);
        assert_eq!(a, Coeff::new(1, 2));
        assert_eq!(&a + &a, Coeff::one());
        assert_eq!(&Coeff::new(1, 3) - &Coeff::new(1, 3), Coeff::zero());
        assert_eq!(Coeff::new(3, -6), Coeff::new(-1, 2));
        assert_eq!(Coeff::new(2, 3).recip(), Coeff::new(3, 2));
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(Coeff::from_int(-12).gcd(&Coeff::from_int(18)), Coeff::from_int(6));
        assert_eq!(Coeff::new(1, 2).gcd(&Coeff::new(1, 3)), Coeff::new(1, 6));
        assert_eq!(Coeff::new(4, 3).gcd(&Coeff::from_int(6)), Coeff::new(2, 3));
        assert_eq!(Coeff::zero().gcd(&Coeff::from_int(-5)), Coeff::from_int(5));
        let big = Coeff::from_bigint(BigInt::from(i64::MAX) * BigInt::from(4));
        assert_eq!(big.gcd(&Coeff::from_int(6)), Coeff::from_int(2));
    }

    #[test]
    fn overflow_spills_and_returns() {
        let big = Coeff::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        let m = Coeff::from_int(i64::MIN);
        assert_eq!(-&(-&m), m);
    }

    #[test]
    fn parse_and_display() {
        let c: Coeff = "-6/4".parse().unwrap();
        assert_eq!(c.to_string(), "-3/2");
        let big: Coeff = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big.to_string(), "123456789012345678901234567890");
        assert!("1/0".parse::<Coeff>().is_err());
    }

    #[test]
    fn ordering_matches_value() {
        assert!(Coeff::new(1, 3) < Coeff::new(1, 2));
        assert!(Coeff::new(-1, 2) < Coeff::zero());
    }
}
