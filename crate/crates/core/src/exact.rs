//! Exact rational helpers and their JSON/text encodings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `x^e` for any integer exponent (`x` must be nonzero when `e < 0`).
pub fn powi(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// `"num/den"`, or just `"num"` for integers.
pub fn to_text(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut v = 0i64;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        v
    };
    Some(count(x.numer().abs()) - count(x.denom().clone()))
}

/// Exact rational as a pair of arbitrary-precision decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(x: &Rational) -> Self {
        RationalJson {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for Rational {
    type Error = num_bigint::ParseBigIntError;

    fn try_from(r: &RationalJson) -> Result<Self, Self::Error> {
        Ok(BigRational::new(r.num.parse()?, r.den.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_forms() {
        assert_eq!(to_text(&rat(3, 6)), "1/2");
        assert_eq!(to_text(&rat(-4, 2)), "-2");
        assert_eq!(to_text(&rat(0, 5)), "0");
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&rat(12, 1), 2), Some(2));
        assert_eq!(valuation(&rat(3, 8), 2), Some(-3));
        assert_eq!(valuation(&rat(5, 7), 3), Some(0));
        assert_eq!(valuation(&rat(0, 1), 3), None);
    }

    #[test]
    fn negative_powers() {
        assert_eq!(powi(&rat(-1, 2), -3), int(-8));
        assert_eq!(powi(&rat(2, 3), 0), int(1));
    }

    #[test]
    fn json_round_trip() {
        let x = rat(-22, 7);
        let j = RationalJson::from(&x);
        assert_eq!(j.num, "-22");
        assert_eq!(Rational::try_from(&j).unwrap(), x);
    }
}
