//! Exact Gaussian rationals `re + i·im` with `re, im ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

pub type Rational = BigRational;

/// An element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(Rational::new(num.into(), den.into()), Rational::zero())
    }

    pub fn from_rational(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// |z|² = re² + im².
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // real operands are the overwhelmingly common case
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Formats in the literal coefficient syntax: `(re)` or `(re+imi)`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_rational(&self.re, f)?;
        if !self.im.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            fmt_rational(&self.im.abs(), f)?;
            write!(f, "i")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::new(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ParseError::new(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Parses `(re)` or `(re±imi)`; whitespace is ignored.
impl FromStr for GaussianRational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(format!("coefficient must be parenthesised: `{s}`")))?;
        let Some(body) = inner.strip_suffix('i') else {
            return Ok(Self::from_rational(parse_rational(inner)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last()
            .ok_or_else(|| ParseError::new(format!("expected `re+imi` in `{s}`")))?;
        let re = parse_rational(&body[..split])?;
        let im_str = &body[split..];
        let im = parse_rational(im_str.strip_prefix('+').unwrap_or(im_str))?;
        Ok(Self::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn field_operations() {
        let z = q("(1+2i)");
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from_integer(-1));
        assert_eq!(z.conj(), q("(1-2i)"));
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(GaussianRational::i().pow(4), GaussianRational::one());
    }

    #[test]
    fn literal_round_trip() {
        for s in ["(1)", "(-3/2)", "(3/2+1i)", "(0-1/2i)", "(-1+1i)"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("( 3/2 + 1 i )"), q("(3/2+1i)"));
        assert!("(1/0)".parse::<GaussianRational>().is_err());
        assert!("1".parse::<GaussianRational>().is_err());
    }
}
