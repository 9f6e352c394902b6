//! Arbitrary-precision rational scalars.
//!
//! `Rat` wraps `num_rational::BigRational` and is the coefficient field for
//! the whole crate. Values are always stored in lowest terms with a positive
//! denominator (the wrapped type maintains this). Parsing and display use the
//! `"num/den"` form, plain integers have no slash.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True for n in Z_{>=0}.
    pub fn is_nonneg_integer(&self) -> bool {
        self.0.is_integer() && !self.0.is_negative()
    }

    /// True for n in Z_{<0}. The divided power lambda^(n) vanishes exactly here.
    pub fn is_negative_integer(&self) -> bool {
        self.0.is_integer() && self.0.is_negative()
    }

    /// The integer value, if this is an integer that fits in i64.
    pub fn to_integer(&self) -> Option<i64> {
        if !self.0.is_integer() {
            return None;
        }
        let n = self.0.to_integer();
        let (sign, digits) = n.to_u64_digits();
        match (sign, digits.len()) {
            (Sign::NoSign, _) => Some(0),
            (Sign::Plus, 1) if digits[0] <= i64::MAX as u64 => Some(digits[0] as i64),
            (Sign::Minus, 1) if digits[0] <= (i64::MAX as u64) + 1 => {
                Some((digits[0] as i128).wrapping_neg() as i64)
            }
            _ => None,
        }
    }

    /// The fractional part in [0, 1): `self - floor(self)`.
    pub fn frac_part(&self) -> Rat {
        let fl = self.0.floor();
        Rat(&self.0 - fl)
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn pow(&self, exp: i32) -> Rat {
        Rat(self.0.pow(exp))
    }

    /// Exact square root, if the value is a perfect square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let ns = self.numer().sqrt();
        let ds = self.denom().sqrt();
        if &(&ns * &ns) == self.numer() && &(&ds * &ds) == self.denom() {
            Some(Rat::from_big(ns, ds))
        } else {
            None
        }
    }

    /// Rough size measure (bits of numerator plus denominator); used for
    /// pivot selection in exact elimination.
    pub fn bit_size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

/// Generalized binomial coefficient `binom(n, j) = n(n-1)...(n-j+1)/j!`
/// for rational `n` and integer `j >= 0`. Agrees with the classical
/// binomial when `n` is a nonnegative integer.
pub fn binomial(n: &Rat, j: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..j {
        acc = &acc * &(n - &Rat::from_int(i as i64));
        acc = &acc / &Rat::from_int((i + 1) as i64);
    }
    acc
}

/// Parse errors for [`Rat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational: {}", self.0)
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parts: Vec<&str> = s.split('/').collect();
        let parse_int = |t: &str| -> Result<BigInt, ParseRatError> {
            BigInt::from_str(t.trim()).map_err(|_| ParseRatError(s.to_string()))
        };
        match parts.as_slice() {
            [whole] => Ok(Rat(BigRational::from_integer(parse_int(whole)?))),
            [num, den] => {
                let d = parse_int(den)?;
                if d.is_zero() {
                    return Err(ParseRatError(s.to_string()));
                }
                Ok(Rat(BigRational::new(parse_int(num)?, d)))
            }
            _ => Err(ParseRatError(s.to_string())),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        (&self).div(&rhs)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "5", "-7", "3/4", "-22/7", "1/16"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(format!("{r}"), s);
        }
        // non-reduced and padded input normalizes
        let r: Rat = " 6/8 ".parse().unwrap();
        assert_eq!(format!("{r}"), "3/4");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("a/b".parse::<Rat>().is_err());
    }

    #[test]
    fn classification() {
        assert!(Rat::from_int(-3).is_negative_integer());
        assert!(!Rat::new(-1, 2).is_negative_integer());
        assert!(Rat::from_int(0).is_nonneg_integer());
        assert_eq!(Rat::new(-7, 2).frac_part(), Rat::new(1, 2));
        assert_eq!(Rat::from_int(-3).to_integer(), Some(-3));
        assert_eq!(Rat::new(1, 2).to_integer(), None);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(&Rat::from_int(4), 2), Rat::from_int(6));
        // falling factorial (1/2)(-1/2)/2
        assert_eq!(binomial(&Rat::new(1, 2), 2), Rat::new(-1, 8));
        assert_eq!(binomial(&Rat::new(-9, 5), 0), Rat::one());
        assert_eq!(binomial(&Rat::from_int(-1), 3), Rat::from_int(-1));
    }

    #[test]
    fn sqrt_exact_works() {
        assert_eq!(Rat::new(9, 16).sqrt_exact(), Some(Rat::new(3, 4)));
        assert_eq!(Rat::new(2, 1).sqrt_exact(), None);
        assert_eq!(Rat::new(-9, 16).sqrt_exact(), None);
    }
}
