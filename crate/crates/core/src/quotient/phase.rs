//! Roots of unity as exact rational turns: `Phase(r)` stands for `e^{2πir}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub fn zero() -> Self {
        Phase(Ratio::zero())
    }

    /// `e^{2πi num/den}`, reduced into `[0, 1)`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("phase denominator is zero".into()));
        }
        Ok(Self::reduce(Ratio::new(num, den)))
    }

    fn reduce(r: Ratio<i64>) -> Self {
        let den = *r.denom();
        Phase(Ratio::new(r.numer().mod_floor(&den), den))
    }

    /// `λ^e` for `λ = e^{2πi p/q}`.
    pub fn lambda_pow(p: i64, q: i64, e: i64) -> Self {
        let num = (i128::from(p) * i128::from(e)).rem_euclid(i128::from(q));
        Self::reduce(Ratio::new(num as i64, q))
    }

    pub fn turns(self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    /// Multiplicative order as a root of unity.
    pub fn order(self) -> i64 {
        *self.0.denom()
    }

    pub fn pow(self, e: i64) -> Self {
        let den = *self.0.denom();
        let num = (i128::from(*self.0.numer()) * i128::from(e)).rem_euclid(i128::from(den));
        Self::reduce(Ratio::new(num as i64, den))
    }

    /// `e^{2πi r num/den}` for the representative `r` in `[0, 1)`.
    pub fn scaled(self, num: i64, den: i64) -> Self {
        Self::reduce(self.0 * Ratio::new(num, den))
    }

    /// The principal `n`-th root, i.e. turn `r/n` with `r` in `[0, 1)`.
    pub fn principal_root(self, n: i64) -> Self {
        assert!(n >= 1, "root index must be positive");
        Self::reduce(self.0 / n)
    }

    /// Distance to the identity under `θ ~ -θ`: `min(r, 1 - r)`.
    pub fn up_to_sign(self) -> Ratio<i64> {
        let flipped = Ratio::one() - self.0;
        if self.0.is_zero() || self.0 <= flipped {
            self.0
        } else {
            flipped
        }
    }

    pub fn to_complex(self) -> Complex64 {
        let angle = std::f64::consts::TAU * (*self.0.numer() as f64) / (*self.0.denom() as f64);
        Complex64::from_polar(1.0, angle)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Self::reduce(self.0 + rhs.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Self::reduce(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Self::reduce(-self.0)
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, rhs: i64) -> Phase {
        self.pow(rhs)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl std::str::FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a rational turn like 1/3, got {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        Phase::new(n, d)
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Phase::new(5, 4).unwrap();
        assert_eq!(a, Phase::new(1, 4).unwrap());
        assert_eq!(a.order(), 4);
        assert_eq!(-a, Phase::new(3, 4).unwrap());
        assert_eq!(a.pow(4), Phase::zero());
        assert_eq!(Phase::lambda_pow(5, 12, 3), Phase::new(1, 4).unwrap());
        assert_eq!(Phase::lambda_pow(5, 12, -3), Phase::new(3, 4).unwrap());
        assert_eq!(Phase::zero().order(), 1);
        assert_eq!(a.principal_root(3), Phase::new(1, 12).unwrap());
        assert_eq!(Phase::new(3, 4).unwrap().up_to_sign(), Ratio::new(1, 4));
        assert!((Phase::new(1, 2).unwrap().to_complex() + 1.0).norm() < 1e-15);
        assert_eq!("-1/3".parse::<Phase>().unwrap(), Phase::new(2, 3).unwrap());
        assert!("x".parse::<Phase>().is_err());
    }
}
