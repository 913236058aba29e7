use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Angular-momentum quantum number stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Rejects anything whose doubled value is not an integer.
    pub fn try_from_f64(x: f64) -> Result<Self> {
        let t = 2.0 * x;
        if !t.is_finite() || t.fract() != 0.0 || t.abs() > i32::MAX as f64 {
            return Err(Error::InvalidInput(format!("{x} is not a half-integer")));
        }
        Ok(HalfInt(t as i32))
    }

    /// `(j, m)` is a valid pair: j >= 0, |m| <= j, j - m integral.
    pub fn pair_ok(j: HalfInt, m: HalfInt) -> bool {
        j.0 >= 0 && m.0.abs() <= j.0 && (j.0 - m.0) % 2 == 0
    }

    /// Projections m = -j, -j+1, ..., j.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let j = self.0;
        (-j..=j).step_by(2).map(HalfInt)
    }

    /// (-1)^self for integral self.
    pub fn phase(self) -> f64 {
        debug_assert!(self.is_integer());
        if (self.0 / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// 2j + 1
    pub fn multiplicity(self) -> f64 {
        (self.0 + 1) as f64
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl From<i32> for HalfInt {
    fn from(n: i32) -> Self {
        HalfInt::int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `4`, `-3`, `7/2`, `-1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("'{s}' is not a half-integer"));
        match s.split_once('/') {
            Some((num, den)) => {
                let num: i32 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => num.checked_mul(2).map(HalfInt).ok_or_else(bad),
                    "2" => Ok(HalfInt(num)),
                    _ => Err(bad()),
                }
            }
            None => {
                let n: i32 = s.parse().map_err(|_| bad())?;
                n.checked_mul(2).map(HalfInt).ok_or_else(bad)
            }
        }
    }
}
