use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{Int, Rat};

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of_int(n: &Int) -> Sign {
        match n.sign() {
            num_bigint::Sign::Minus => Sign::Neg,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Pos,
        }
    }

    pub fn of_rat(r: &Rat) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.numer().sign() == num_bigint::Sign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn of_i64(n: i64) -> Sign {
        match n.cmp(&0) {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }

    pub fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Neg => write!(f, "-1"),
            Sign::Zero => write!(f, "0"),
            Sign::Pos => write!(f, "+1"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(Sign::Neg * Sign::Neg, Sign::Pos);
        assert_eq!(Sign::Neg * Sign::Pos, Sign::Neg);
        assert_eq!(Sign::Zero * Sign::Pos, Sign::Zero);
        assert_eq!(-Sign::Pos, Sign::Neg);
        assert_eq!(-Sign::Zero, Sign::Zero);
    }

    #[test]
    fn display() {
        assert_eq!(Sign::Pos.to_string(), "+1");
        assert_eq!(Sign::Neg.to_string(), "-1");
        assert_eq!(Sign::Zero.to_string(), "0");
    }
}
