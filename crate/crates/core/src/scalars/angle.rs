use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::CycloValue;
use super::ScalarError;

/// A root of unity `exp(2πi·t)`, stored as `t ∈ [0, 1)` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle(Rational64);

impl RationalAngle {
    pub fn new(num: i64, den: i64) -> Self {
        Self::from_ratio(Rational64::new(num, den))
    }

    pub fn from_ratio(t: Rational64) -> Self {
        let f = t - t.floor();
        RationalAngle(f)
    }

    pub fn zero() -> Self {
        RationalAngle(Rational64::zero())
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn times(&self, c: i64) -> Self {
        Self::from_ratio(self.0 * Rational64::from_integer(c))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The root of unity as an element of `Q(ζ_N)`; `N` must be a multiple of the denominator.
    pub fn to_cyclo(&self, conductor: u32) -> Result<CycloValue, ScalarError> {
        let den = self.denom() as u64;
        if !(conductor as u64).is_multiple_of(den) {
            return Err(ScalarError::ConductorMismatch {
                needed: den,
                given: conductor as u64,
            });
        }
        let k = self.numer() * (conductor as i64 / self.denom());
        Ok(CycloValue::zeta_pow(conductor, k))
    }

    pub fn lcm_denominators<'a>(angles: impl IntoIterator<Item = &'a RationalAngle>) -> i64 {
        angles.into_iter().fold(1, |acc, a| acc.lcm(&a.denom()))
    }
}

impl Add for RationalAngle {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_ratio(self.0 + rhs.0)
    }
}

impl Sub for RationalAngle {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for RationalAngle {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_ratio(-self.0)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl std::str::FromStr for RationalAngle {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let bad = || ScalarError::Parse(format!("invalid rational angle {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(RationalAngle::new(n, d))
    }
}

impl Serialize for RationalAngle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalAngle {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
