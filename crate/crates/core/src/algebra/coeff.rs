use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Gaussian rational `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient {
    pub re: BigRational,
    pub im: BigRational,
}

impl Coefficient {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Coefficient { re, im }
    }

    pub fn zero() -> Self {
        Coefficient { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Coefficient::from_int(1)
    }

    pub fn i() -> Self {
        Coefficient { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Coefficient {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// `(re_num/re_den) + i (im_num/im_den)`.
    pub fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Coefficient {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
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
        Coefficient { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(Coefficient { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    /// `i^n`.
    pub fn i_pow(n: u32) -> Self {
        match n % 4 {
            0 => Coefficient::one(),
            1 => Coefficient::i(),
            2 => Coefficient::from_int(-1),
            _ => -Coefficient::i(),
        }
    }

    pub fn signed(self, sign: i8) -> Self {
        if sign < 0 {
            -self
        } else {
            self
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Coefficient::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Sign of the leading nonzero part (real part first), used to print terms.
    pub(crate) fn leading_negative(&self) -> bool {
        if !self.re.is_zero() && !self.im.is_zero() {
            false
        } else if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }
}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::zero()
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_int(n)
    }
}

impl From<BigRational> for Coefficient {
    fn from(r: BigRational) -> Self {
        Coefficient { re: r, im: BigRational::zero() }
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        Coefficient { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        &self + &rhs
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        Coefficient { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        &self - &rhs
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        Coefficient {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

impl MulAssign<&Coefficient> for Coefficient {
    fn mul_assign(&mut self, rhs: &Coefficient) {
        *self = &*self * rhs;
    }
}

impl Div for Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs.inv().expect("division by zero coefficient")
    }
}

impl<'a> Div<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &Coefficient) -> Coefficient {
        self * &rhs.inv().expect("division by zero coefficient")
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { re: -self.re, im: -self.im }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coefficient {
    /// `3/2`, `-i`, `2/3i`, `(1/2-3i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else if self.re.is_zero() {
            if self.im.is_one() {
                write!(f, "i")
            } else if (-self.im.clone()).is_one() {
                write!(f, "-i")
            } else {
                write!(f, "{}i", fmt_rational(&self.im))
            }
        } else {
            let im_abs = self.im.abs();
            let sign = if self.im.is_negative() { '-' } else { '+' };
            if im_abs.is_one() {
                write!(f, "({}{}i)", fmt_rational(&self.re), sign)
            } else {
                write!(f, "({}{}{}i)", fmt_rational(&self.re), sign, fmt_rational(&im_abs))
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {:?}", s))?;
            let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {:?}", s))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| format!("bad integer {:?}", s))?)),
    }
}

/// Parses an imaginary-part token such as `i`, `-i`, `3/2i`.
fn parse_imag(s: &str) -> Result<BigRational, String> {
    let body = s.strip_suffix('i').ok_or_else(|| format!("not imaginary: {:?}", s))?;
    match body {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_rational(body),
    }
}

impl FromStr for Coefficient {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            // split at the sign that separates real and imaginary parts
            let bytes = inner.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&j| bytes[j] == b'+' || bytes[j] == b'-')
                .ok_or_else(|| format!("bad complex coefficient {:?}", s))?;
            let re = parse_rational(&inner[..split])?;
            let im = parse_imag(&inner[split..])?;
            return Ok(Coefficient { re, im });
        }
        if s.ends_with('i') {
            Ok(Coefficient { re: BigRational::zero(), im: parse_imag(s)? })
        } else {
            Ok(Coefficient { re: parse_rational(s)?, im: BigRational::zero() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Coefficient::i() * &Coefficient::i(), Coefficient::from_int(-1));
    }

    #[test]
    fn inverse_of_gaussian() {
        let z = Coefficient::gaussian(3, 1, 4, 1);
        let inv = z.inv().unwrap();
        assert_eq!(&z * &inv, Coefficient::one());
        assert!(Coefficient::zero().inv().is_none());
    }

    #[test]
    fn display_and_parse() {
        for c in [
            Coefficient::from_ratio(3, 2),
            Coefficient::i(),
            -Coefficient::i(),
            Coefficient::gaussian(0, 1, 2, 3),
            Coefficient::gaussian(1, 2, -3, 1),
            Coefficient::gaussian(12, 5, -9, 5),
            Coefficient::gaussian(-1, 1, 1, 1),
        ] {
            let text = c.to_string();
            assert_eq!(text.parse::<Coefficient>().unwrap(), c, "{}", text);
        }
        assert_eq!(Coefficient::gaussian(1, 2, -3, 1).to_string(), "(1/2-3i)");
    }
}
