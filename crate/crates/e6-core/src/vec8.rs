//! The 8-coordinate ambient space carrying the E6 root system, with the
//! standard dot product as the invariant form B.

use crate::rat::{format_rat, parse_rat, Rat};
use num::Zero;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A vector in the 8-dimensional ambient realization. `B` is the standard
/// dot product in these coordinates and every root has `B(α,α) = 2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec8(pub [Rat; 8]);

impl Vec8 {
    pub const DIM: usize = 8;

    pub fn zero() -> Self {
        Vec8([Rat::zero(); 8])
    }

    pub fn from_i64(v: [i64; 8]) -> Self {
        Vec8(v.map(Rat::from_integer))
    }

    /// Entries `n_i / d` for a common denominator `d`.
    pub fn from_scaled(v: [i64; 8], d: i64) -> Self {
        Vec8(v.map(|n| Rat::new(n, d)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    /// The invariant form B (standard dot product).
    pub fn dot(&self, other: &Vec8) -> Rat {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, c: Rat) -> Vec8 {
        Vec8(self.0.map(|x| x * c))
    }

    /// Wire format: comma-separated rationals, e.g. `0,1,2,3,4,-4,-4,4`.
    pub fn to_wire(&self) -> String {
        self.0
            .iter()
            .map(format_rat)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_wire(s: &str) -> Option<Vec8> {
        let parts: Vec<Rat> = s
            .split(',')
            .map(parse_rat)
            .collect::<Option<Vec<_>>>()?;
        let arr: [Rat; 8] = parts.try_into().ok()?;
        Some(Vec8(arr))
    }
}

impl fmt::Debug for Vec8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_wire())
    }
}

impl Add for Vec8 {
    type Output = Vec8;
    fn add(self, rhs: Vec8) -> Vec8 {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
        Vec8(out)
    }
}

impl AddAssign for Vec8 {
    fn add_assign(&mut self, rhs: Vec8) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
    }
}

impl Sub for Vec8 {
    type Output = Vec8;
    fn sub(self, rhs: Vec8) -> Vec8 {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
        Vec8(out)
    }
}

impl SubAssign for Vec8 {
    fn sub_assign(&mut self, rhs: Vec8) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
    }
}

impl Neg for Vec8 {
    type Output = Vec8;
    fn neg(self) -> Vec8 {
        Vec8(self.0.map(|x| -x))
    }
}

impl Mul<Vec8> for Rat {
    type Output = Vec8;
    fn mul(self, rhs: Vec8) -> Vec8 {
        rhs.scale(self)
    }
}
