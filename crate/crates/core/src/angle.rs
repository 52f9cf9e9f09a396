//! Exact rotation angles in eighths of π.

use std::fmt;
use std::ops::{Add, AddAssign, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Eighths of π in a full turn.
const TURN: i64 = 16;

/// A rotation angle `k · π/8`, reduced modulo 2π.
///
/// Equality is exact integer equality, so cancellations such as
/// `π/4 + (-π/4)` are detected without tolerance.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Angle(u8);

/// Coarse classification used by cost models and fusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleKind {
    Zero,
    /// `π`: a Pauli gate.
    Pauli,
    /// `±π/2`: S-like Clifford.
    Clifford,
    /// `±π/4` or `±3π/4`: T-like.
    TLike,
    /// Odd multiples of `π/8`.
    Fine,
}

impl Angle {
    pub const ZERO: Angle = Angle(0);
    pub const PI_8: Angle = Angle(1);
    pub const PI_4: Angle = Angle(2);
    pub const PI_2: Angle = Angle(4);
    pub const PI: Angle = Angle(8);

    pub fn from_eighths(k: i64) -> Self {
        Angle(k.rem_euclid(TURN) as u8)
    }

    /// The reduced numerator in `0..16`.
    pub fn eighths(self) -> u8 {
        self.0
    }

    /// The numerator in `-7..=8`, i.e. the representative in `(-π, π]`.
    pub fn signed_eighths(self) -> i64 {
        let k = self.0 as i64;
        if k > 8 {
            k - TURN
        } else {
            k
        }
    }

    pub fn radians(self) -> f64 {
        self.signed_eighths() as f64 * std::f64::consts::PI / 8.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn kind(self) -> AngleKind {
        match self.0 {
            0 => AngleKind::Zero,
            8 => AngleKind::Pauli,
            4 | 12 => AngleKind::Clifford,
            k if k % 2 == 0 => AngleKind::TLike,
            _ => AngleKind::Fine,
        }
    }

    pub fn is_pauli(self) -> bool {
        self.kind() == AngleKind::Pauli
    }
}

impl Add for Angle {
    type Output = Angle;

    fn add(self, rhs: Angle) -> Angle {
        Angle::from_eighths(self.0 as i64 + rhs.0 as i64)
    }
}

impl AddAssign for Angle {
    fn add_assign(&mut self, rhs: Angle) {
        *self = *self + rhs;
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        Angle::from_eighths(-(self.0 as i64))
    }
}

impl std::iter::Sum for Angle {
    fn sum<I: Iterator<Item = Angle>>(iter: I) -> Angle {
        iter.fold(Angle::ZERO, Add::add)
    }
}

fn write_positive(f: &mut fmt::Formatter<'_>, k: i64) -> fmt::Result {
    let mut num = k;
    let mut den = 8;
    while num % 2 == 0 && den > 1 {
        num /= 2;
        den /= 2;
    }
    match (num, den) {
        (1, 1) => f.write_str("pi"),
        (n, 1) => write!(f, "{n}pi"),
        (1, d) => write!(f, "pi/{d}"),
        (n, d) => write!(f, "{n}pi/{d}"),
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.signed_eighths();
        match k {
            0 => f.write_str("0"),
            k if k < 0 => {
                f.write_str("-")?;
                write_positive(f, -k)
            }
            k => write_positive(f, k),
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `0` and `[-][k]pi[/d]` with `d` one of 1, 2, 4, 8.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAngle(s.to_owned());
        let t = s.trim();
        if t == "0" {
            return Ok(Angle::ZERO);
        }
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        let pos = body.find("pi").ok_or_else(bad)?;
        let coeff = match &body[..pos] {
            "" => 1,
            c => c.parse::<i64>().map_err(|_| bad())?,
        };
        let den = match &body[pos + 2..] {
            "" => 1,
            rest => rest
                .strip_prefix('/')
                .and_then(|d| d.parse::<i64>().ok())
                .ok_or_else(bad)?,
        };
        if !matches!(den, 1 | 2 | 4 | 8) || coeff < 0 {
            return Err(bad());
        }
        Ok(Angle::from_eighths(sign * coeff * (8 / den)))
    }
}

impl Serialize for Angle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    #[test]
    fn parses_standard_forms() {
        assert_eq!(a("pi/4"), Angle::PI_4);
        assert_eq!(a("pi/2"), Angle::PI_2);
        assert_eq!(a("pi"), Angle::PI);
        assert_eq!(a("3pi/4").eighths(), 6);
        assert_eq!(a("-pi/4").eighths(), 14);
        assert_eq!(a("-pi"), Angle::PI);
        assert_eq!(a("2pi"), Angle::ZERO);
        assert_eq!(a("pi/8"), Angle::PI_8);
    }

    #[test]
    fn rejects_off_grid_angles() {
        for s in ["pi/3", "x", "pi/", "3", "pi/16", "--pi"] {
            assert!(s.parse::<Angle>().is_err(), "{s}");
        }
    }

    #[test]
    fn display_round_trips_every_angle() {
        for k in 0..16 {
            let x = Angle::from_eighths(k);
            assert_eq!(a(&x.to_string()), x);
        }
        assert_eq!(Angle::from_eighths(6).to_string(), "3pi/4");
        assert_eq!(Angle::from_eighths(-2).to_string(), "-pi/4");
    }

    #[test]
    fn arithmetic_wraps() {
        assert_eq!(Angle::PI_4 + Angle::PI_4, Angle::PI_2);
        assert_eq!(Angle::PI_4 + -Angle::PI_4, Angle::ZERO);
        assert_eq!(Angle::PI + Angle::PI, Angle::ZERO);
        assert_eq!((Angle::PI_4 + Angle::PI_2).kind(), AngleKind::TLike);
    }

    #[test]
    fn kinds() {
        assert_eq!(Angle::PI.kind(), AngleKind::Pauli);
        assert_eq!((-Angle::PI_2).kind(), AngleKind::Clifford);
        assert_eq!(Angle::PI_8.kind(), AngleKind::Fine);
        assert_eq!(Angle::ZERO.kind(), AngleKind::Zero);
    }
}
