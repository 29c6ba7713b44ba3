//! Exact unit phases `exp(2πi·r)` stored by their rational turn `r ∈ [0, 1)`.
//!
//! Case predicates of the classification theorems sit on measure-zero sets,
//! so parameter points are kept exact and only converted to floats when a
//! matrix is built.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A root of unity (or any rational-angle phase), `exp(2πi·turn)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Phase(Rational64);

fn reduce_turn(r: Rational64) -> Rational64 {
    let f = r - r.floor();
    if f >= Rational64::one() {
        f - Rational64::one()
    } else {
        f
    }
}

impl Phase {
    pub const ONE: Phase = Phase(Rational64::new_raw(0, 1));

    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "zero denominator");
        Phase(reduce_turn(Rational64::new(num, den)))
    }

    pub fn from_turn(r: Rational64) -> Phase {
        Phase(reduce_turn(r))
    }

    /// Rational turn in `[0, 1)`.
    pub fn turn(self) -> Rational64 {
        self.0
    }

    /// Smallest `n ≥ 1` with `self^n = 1`.
    pub fn order(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_one(self) -> bool {
        self.0.is_zero()
    }

    pub fn pow(self, n: i64) -> Phase {
        Phase::from_turn(self.0 * Rational64::from_integer(n))
    }

    pub fn conj(self) -> Phase {
        Phase::from_turn(-self.0)
    }

    pub fn value(self) -> Complex64 {
        let t = *self.0.numer() as f64 / *self.0.denom() as f64;
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
    }

    /// Product of powers `Π p_i^{e_i}`.
    pub fn monomial(phases: &[Phase; 3], exps: [i32; 3]) -> Phase {
        phases
            .iter()
            .zip(exps)
            .fold(Phase::ONE, |acc, (p, e)| acc * p.pow(e as i64))
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_turn(self.0 + rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    /// Multiplication by `-1`.
    fn neg(self) -> Phase {
        self * Phase::new(1, 2)
    }
}

/// Least common multiple of the orders of a set of phases.
pub fn common_order<'a>(phases: impl IntoIterator<Item = &'a Phase>) -> i64 {
    phases.into_iter().fold(1, |acc, p| acc.lcm(&p.order()))
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Phase, Error> {
        parse_rational(s).map(Phase::from_turn)
    }
}

/// Parses `"p/q"` or `"p"`; decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational64, Error> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(n, d))
}

pub fn format_rational(r: Rational64) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Phase, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_mod_one() {
        assert_eq!(Phase::new(5, 4), Phase::new(1, 4));
        assert_eq!(Phase::new(-1, 4), Phase::new(3, 4));
        assert!(Phase::new(3, 3).is_one());
    }

    #[test]
    fn arithmetic_matches_complex() {
        let a = Phase::new(3, 8);
        let b = Phase::new(5, 16);
        let lhs = (a * b.conj()).pow(3).value();
        let rhs = (a.value() * b.value().conj()).powi(3);
        assert!((lhs - rhs).norm() < 1e-14);
        assert!(((-a).value() + a.value()).norm() < 1e-14);
    }

    #[test]
    fn order_and_parse() {
        let p: Phase = "6/16".parse().unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.to_string(), "3/8");
        assert!("0.5".parse::<Phase>().is_err());
        assert!("1/0".parse::<Phase>().is_err());
        assert_eq!(common_order(&[Phase::new(1, 4), Phase::new(1, 6)]), 12);
    }
}
