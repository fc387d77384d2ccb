//! Exact rational scalars.
//!
//! [`BRational`] wraps an arbitrary-precision reduced fraction. Every m-number and
//! every Gram entry in this crate is one of these; nothing is ever rounded.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct BRational(BigRational);

impl BRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        BRational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        BRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        BRational(BigRational::zero())
    }

    pub fn one() -> Self {
        BRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        BRational(self.0.abs())
    }

    /// `p^k` for a possibly negative exponent.
    pub fn pow_int(base: u64, exp: i64) -> Self {
        let b = BigInt::from(base);
        if exp >= 0 {
            BRational::from_int(num_traits::pow(b, exp as usize))
        } else {
            BRational::new(1, num_traits::pow(b, (-exp) as usize))
        }
    }

    /// Size measure used to pick elimination pivots: `|num| * den`.
    pub(crate) fn height(&self) -> BigInt {
        self.0.numer().abs() * self.0.denom()
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for BRational {
    fn from(n: i64) -> Self {
        BRational::from_int(n)
    }
}

impl From<BigInt> for BRational {
    fn from(n: BigInt) -> Self {
        BRational::from_int(n)
    }
}

impl fmt::Display for BRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for BRational {
            type Output = BRational;
            fn $m(self, rhs: BRational) -> BRational {
                BRational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a BRational> for &'a BRational {
            type Output = BRational;
            fn $m(self, rhs: &'a BRational) -> BRational {
                BRational((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&BRational> for BRational {
    fn add_assign(&mut self, rhs: &BRational) {
        self.0 += &rhs.0;
    }
}

impl Neg for BRational {
    type Output = BRational;
    fn neg(self) -> BRational {
        BRational(-self.0)
    }
}

impl std::iter::Sum for BRational {
    fn sum<I: Iterator<Item = BRational>>(iter: I) -> Self {
        iter.fold(BRational::zero(), |a, b| a + b)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: String,
    den: String,
}

impl Serialize for BRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            num: self.0.numer().to_string(),
            den: self.0.denom().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        let num: BigInt = w.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = w.den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(BRational::new(num, den))
    }
}

pub(crate) fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub(crate) fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|n| n.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_and_wire_format() {
        let r = BRational::new(-6, 4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"num":"-3","den":"2"}"#
        );
        assert_eq!(BRational::pow_int(3, -2), BRational::new(1, 9));
    }

    #[test]
    fn rejects_zero_denominator_on_the_wire() {
        let bad = r#"{"num":"1","den":"0"}"#;
        assert!(serde_json::from_str::<BRational>(bad).is_err());
    }

    proptest! {
        #[test]
        fn always_reduced_with_positive_denominator(n in -1000i64..1000, d in 1i64..1000, flip in any::<bool>()) {
            let d = if flip { -d } else { d };
            let r = BRational::new(n, d);
            prop_assert!(r.denom() > &BigInt::zero());
            prop_assert_eq!(num_integer::Integer::gcd(r.numer(), r.denom()), BigInt::one());
            let back: BRational = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
