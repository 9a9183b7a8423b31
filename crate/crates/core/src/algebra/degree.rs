use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// An element of Z2 x Z2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Degree {
    pub a: u8,
    pub b: u8,
}

impl Degree {
    pub const ZERO: Degree = Degree { a: 0, b: 0 };
    pub const D11: Degree = Degree { a: 1, b: 1 };
    pub const D10: Degree = Degree { a: 1, b: 0 };
    pub const D01: Degree = Degree { a: 0, b: 1 };

    /// All four degrees in the order (0,0), (1,1), (1,0), (0,1).
    pub const ALL: [Degree; 4] = [Degree::ZERO, Degree::D11, Degree::D10, Degree::D01];

    pub fn new(a: u8, b: u8) -> Self {
        Degree { a: a & 1, b: b & 1 }
    }

    /// Scalar product mod 2.
    pub fn parity(self, other: Degree) -> u8 {
        (self.a * other.a + self.b * other.b) & 1
    }

    /// `(d, d)` is odd exactly for (1,0) and (0,1); such atoms square to zero.
    pub fn is_odd(self) -> bool {
        self.parity(self) == 1
    }

    /// `n` copies of `self` added together.
    pub fn times(self, n: usize) -> Degree {
        if n.is_multiple_of(2) {
            Degree::ZERO
        } else {
            self
        }
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        Degree { a: self.a ^ rhs.a, b: self.b ^ rhs.b }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl std::str::FromStr for Degree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = s.split(',').map(str::trim);
        let parse_bit = |p: Option<&str>| -> Result<u8, String> {
            match p {
                Some("0") => Ok(0),
                Some("1") => Ok(1),
                other => Err(format!("expected bit, found {:?}", other)),
            }
        };
        let a = parse_bit(parts.next())?;
        let b = parse_bit(parts.next())?;
        if parts.next().is_some() {
            return Err("degree has more than two entries".into());
        }
        Ok(Degree { a, b })
    }
}

/// `(-1)^{d1 . d2}` as `+1` or `-1`.
pub fn koszul_sign(d1: Degree, d2: Degree) -> i8 {
    if d1.parity(d2) == 1 {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(Degree::D10, Degree::D01), 1);
        assert_eq!(koszul_sign(Degree::ZERO, Degree::D11), 1);
        assert_eq!(koszul_sign(Degree::D11, Degree::D10), -1);
        assert_eq!(koszul_sign(Degree::D11, Degree::D11), 1);
        assert_eq!(koszul_sign(Degree::D10, Degree::D10), -1);
    }

    #[test]
    fn parity_is_symmetric_and_addition_is_mod_two() {
        for x in Degree::ALL {
            assert_eq!(x + x, Degree::ZERO);
            assert_eq!(x + Degree::ZERO, x);
            for y in Degree::ALL {
                assert_eq!(x.parity(y), y.parity(x));
            }
        }
    }

    #[test]
    fn parse_degree() {
        assert_eq!("1,0".parse::<Degree>().unwrap(), Degree::D10);
        assert_eq!("(0, 1)".parse::<Degree>().unwrap(), Degree::D01);
        assert!("2,0".parse::<Degree>().is_err());
    }
}
