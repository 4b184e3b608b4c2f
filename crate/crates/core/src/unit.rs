//! The fourth roots of unity `{1, i, -1, -i}`, stored as the exponent of `i`.

use std::fmt;
use std::ops::{Mul, Neg};

/// `i^e` for `e` in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Unit(u8);

impl Unit {
    pub const ONE: Unit = Unit(0);
    pub const I: Unit = Unit(1);
    pub const NEG_ONE: Unit = Unit(2);
    pub const NEG_I: Unit = Unit(3);

    pub const ALL: [Unit; 4] = [Unit::ONE, Unit::I, Unit::NEG_ONE, Unit::NEG_I];

    pub const fn from_exponent(e: u8) -> Unit {
        Unit(e & 3)
    }

    pub const fn exponent(self) -> u8 {
        self.0
    }

    pub const fn is_real(self) -> bool {
        self.0 & 1 == 0
    }

    /// `(re, im)` as integers.
    pub const fn to_pair(self) -> (i64, i64) {
        match self.0 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        }
    }

    pub fn from_pair(re: i64, im: i64) -> Option<Unit> {
        match (re, im) {
            (1, 0) => Some(Unit::ONE),
            (0, 1) => Some(Unit::I),
            (-1, 0) => Some(Unit::NEG_ONE),
            (0, -1) => Some(Unit::NEG_I),
            _ => None,
        }
    }
}

pub fn unit_mul(u: Unit, v: Unit) -> Unit {
    Unit((u.0 + v.0) & 3)
}

impl Mul for Unit {
    type Output = Unit;
    fn mul(self, rhs: Unit) -> Unit {
        unit_mul(self, rhs)
    }
}

impl Neg for Unit {
    type Output = Unit;
    fn neg(self) -> Unit {
        Unit((self.0 + 2) & 3)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        assert_eq!(Unit::I * Unit::I, Unit::NEG_ONE);
        assert_eq!(Unit::NEG_ONE * Unit::NEG_ONE, Unit::ONE);
        assert_eq!(Unit::I * Unit::NEG_I, Unit::ONE);
    }

    #[test]
    fn cyclic_of_order_four() {
        let mut x = Unit::ONE;
        for step in 1..=4 {
            x = x * Unit::I;
            assert_eq!(x == Unit::ONE, step == 4);
        }
        for u in Unit::ALL {
            assert_eq!(-u, u * Unit::NEG_ONE);
            let (re, im) = u.to_pair();
            assert_eq!(Unit::from_pair(re, im), Some(u));
        }
    }
}
