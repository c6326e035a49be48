//! Arbitrary-precision rationals with an exact decimal reader.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `numer / denom`; panics when `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let d: BigInt = denom.into();
        assert!(!d.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), d))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Lossy conversion for display and logging only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Parses a decimal literal such as `-0.000125`, `12`, `.5` or
    /// `4.0e-7` as the exact rational it denotes.
    pub fn from_decimal_str(s: &str) -> Result<Self, ParseRationalError> {
        let err = |reason| ParseRationalError {
            literal: s.to_string(),
            reason,
        };
        let t = s.trim();
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (mantissa, exponent) = match body.find(['e', 'E']) {
            Some(p) => {
                let e: i64 = body[p + 1..].parse().map_err(|_| err("bad exponent"))?;
                (&body[..p], e)
            }
            None => (body, 0),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(p) => (&mantissa[..p], &mantissa[p + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("no digits"));
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(err("unexpected character"));
        }
        if exponent.unsigned_abs() > 100_000 {
            return Err(err("exponent out of range"));
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer =
            BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| err("no digits"))?;
        if neg {
            numer = -numer;
        }
        let scale = exponent - frac_part.len() as i64;
        let ten = BigInt::from(10u32);
        let value = if scale >= 0 {
            BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Rational(value))
    }

    /// Scientific notation with `sig` significant digits, rounded half away
    /// from zero. Exact zero renders as `0`.
    pub fn to_scientific(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let mag = self.0.abs();
        // exponent e with 10^e <= |x| < 10^(e+1)
        let mut e = estimate_log10(&mag);
        while pow10(e) > mag {
            e -= 1;
        }
        while pow10(e + 1) <= mag {
            e += 1;
        }
        let shift = sig as i64 - 1 - e;
        let scaled = &mag * pow10(shift);
        let half = BigRational::new(BigInt::one(), BigInt::from(2u32));
        let mut digits = (scaled + half).floor().to_integer();
        let mut exp = e;
        if digits >= num_traits::pow(BigInt::from(10u32), sig) {
            digits /= 10;
            exp += 1;
        }
        let s = digits.to_str_radix(10);
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

fn pow10(e: i64) -> BigRational {
    let ten = BigInt::from(10u32);
    if e >= 0 {
        BigRational::from_integer(num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(BigInt::one(), num_traits::pow(ten, (-e) as usize))
    }
}

fn estimate_log10(x: &BigRational) -> i64 {
    let digits = |n: &BigInt| n.magnitude().to_str_radix(10).len() as i64;
    digits(x.numer()) - digits(x.denom())
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q`, `p`, or a decimal literal.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseRationalError {
            literal: s.to_string(),
            reason,
        };
        if s.is_empty() || s.bytes().any(|b| b.is_ascii_whitespace()) {
            return Err(err("empty or contains whitespace"));
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_int(p).ok_or_else(|| err("bad numerator"))?;
            let q = parse_int(q).ok_or_else(|| err("bad denominator"))?;
            if q.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Rational(BigRational::new(p, q)));
        }
        if let Some(n) = parse_int(s) {
            return Ok(Rational::from_integer(n));
        }
        Rational::from_decimal_str(s)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mag = BigUint::parse_bytes(body.as_bytes(), 10)?;
    let sign = if s.starts_with('-') {
        Sign::Minus
    } else {
        Sign::Plus
    };
    Some(BigInt::from_biguint(sign, mag))
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `gcd`-reduced ratio of two counts.
pub fn ratio(count: u64, total: u64) -> Rational {
    let g = count.gcd(&total).max(1);
    Rational::new(count / g, total / g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let r: Rational = "-12/25".parse().unwrap();
        assert_eq!(r.to_string(), "-12/25");
        assert_eq!("6/3".parse::<Rational>().unwrap().to_string(), "2");
        assert_eq!("0".parse::<Rational>().unwrap(), Rational::zero());
        assert_eq!("0/7".parse::<Rational>().unwrap().to_string(), "0");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1 /2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
    }

    #[test]
    fn exact_decimals() {
        assert_eq!(
            Rational::from_decimal_str("0.04").unwrap(),
            Rational::new(1, 25)
        );
        assert_eq!(
            Rational::from_decimal_str("-1.5e-3").unwrap(),
            Rational::new(-3, 2000)
        );
        assert_eq!(
            Rational::from_decimal_str(".5").unwrap(),
            Rational::new(1, 2)
        );
        assert_eq!(
            Rational::from_decimal_str("2.5E2").unwrap(),
            Rational::from_integer(250)
        );
        assert!(Rational::from_decimal_str("1.2.3").is_err());
        assert!(Rational::from_decimal_str("e5").is_err());
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(Rational::new(1, 25).to_scientific(40), "4e-2");
        assert_eq!(Rational::new(-3, 2).to_scientific(5), "-1.5e0");
        assert_eq!(Rational::new(1, 3).to_scientific(5), "3.3333e-1");
        assert_eq!(Rational::new(2, 3).to_scientific(3), "6.67e-1");
        assert_eq!(Rational::new(999_999, 1).to_scientific(3), "1e6");
        let x = Rational::new(1, 120);
        let back = Rational::from_decimal_str(&x.to_scientific(40)).unwrap();
        assert!((back - &x).abs() < Rational::from_decimal_str("1e-42").unwrap());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(25, 5), BigInt::from(53130));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(ratio(6, 12), Rational::new(1, 2));
    }
}
