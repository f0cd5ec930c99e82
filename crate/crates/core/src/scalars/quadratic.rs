use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, ScalarError};

/// An element `a + b·√D` of a real quadratic field, with `D` squarefree.
///
/// Rationals always carry `D = 1` and `b = 0`, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticValue {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Splits `n` into `(s, f)` with `n = s²·f` and `f` squarefree.
pub fn squarefree_decompose(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= n;
    (square, free)
}

/// Discriminant magnitude of `Q(√d)`; the smallest `N` with `√d ∈ Q(ζ_N)`.
pub fn quadratic_conductor(d: u64) -> u64 {
    if d == 1 {
        1
    } else if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

impl QuadraticValue {
    /// Builds `a + b√radicand`, extracting square factors from the radicand.
    pub fn new(a: BigRational, b: BigRational, radicand: u64) -> Self {
        assert!(radicand >= 1, "radicand must be positive");
        let (s, f) = squarefree_decompose(radicand);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if f == 1 {
            Self::rational(a + b)
        } else if b.is_zero() {
            Self::rational(a)
        } else {
            QuadraticValue { a, b, d: f }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadraticValue {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(p.into(), q.into()))
    }

    /// `p/q + r/s·√d` from machine integers.
    pub fn from_parts(a: (i64, i64), b: (i64, i64), d: u64) -> Self {
        Self::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
            d,
        )
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    fn common_radicand(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ScalarError::MixedField { left: x, right: y }),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_radicand(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_radicand(other)?;
        Ok(Self::new(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_radicand(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::new(a, b, d))
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::new(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.a * c, &self.b * c, self.d)
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The nontrivial Galois automorphism `√D ↦ −√D`.
    pub fn galois_conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Signed field norm `a² − D·b²`.
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - &self.b * &self.b * dd
    }

    pub fn abs_norm(&self) -> BigRational {
        self.norm().abs()
    }

    /// Trace `x + σ(x) = 2a`.
    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    /// True when the minimal polynomial has integer coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        self.trace().is_integer() && self.norm().is_integer()
    }

    /// Sign of the real number `a + b√D`, decided exactly.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * dd;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Exact comparison of real embeddings.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, ScalarError> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// `x^2 - t x + n` with `t`, `n` rational: the minimal polynomial when irrational.
    pub fn min_poly(&self) -> (BigRational, BigRational) {
        (self.trace(), self.norm())
    }

    /// True when `self / other` is rational (both nonzero).
    pub fn rational_ratio(&self, other: &Self) -> bool {
        if self.is_rational() && other.is_rational() {
            return true;
        }
        if self.d != other.d && !self.is_rational() && !other.is_rational() {
            return false;
        }
        &self.a * &other.b == &self.b * &other.a
    }
}

/// Larger real root of `x² − b·x − c`, i.e. `(b + √(b²+4c))/2`.
pub fn largest_root_quadratic(b: i64, c: i64) -> QuadraticValue {
    assert!(b >= 0 && c >= 1, "largest_root_quadratic requires b >= 0, c >= 1");
    let disc = (b * b + 4 * c) as u64;
    QuadraticValue::new(
        BigRational::new(b.into(), 2.into()),
        BigRational::new(1.into(), 2.into()),
        disc,
    )
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a QuadraticValue> for &'a QuadraticValue {
            type Output = QuadraticValue;
            fn $m(self, rhs: &'a QuadraticValue) -> QuadraticValue {
                self.$checked(rhs).expect("arithmetic across distinct quadratic fields")
            }
        }
        impl $tr for QuadraticValue {
            type Output = QuadraticValue;
            fn $m(self, rhs: QuadraticValue) -> QuadraticValue {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for QuadraticValue {
    type Output = QuadraticValue;
    fn neg(self) -> QuadraticValue {
        QuadraticValue::new(-self.a, -self.b, self.d)
    }
}

impl Neg for &QuadraticValue {
    type Output = QuadraticValue;
    fn neg(self) -> QuadraticValue {
        -(self.clone())
    }
}

impl fmt::Display for QuadraticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let coeff = |b: &BigRational| -> String {
            if b.abs().is_one() {
                String::new()
            } else {
                format_rational(&b.abs())
            }
        };
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{}√{}", coeff(&self.b), self.d)
        } else {
            write!(
                f,
                "{}{sign}{}√{}",
                format_rational(&self.a),
                coeff(&self.b),
                self.d
            )
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadraticRepr {
    a: String,
    b: String,
    #[serde(rename = "D")]
    d: u64,
}

impl Serialize for QuadraticValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadraticRepr {
            a: format_rational(&self.a),
            b: format_rational(&self.b),
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = QuadraticRepr::deserialize(de)?;
        if r.d == 0 {
            return Err(D::Error::custom("D must be positive"));
        }
        let a = parse_rational(&r.a).map_err(D::Error::custom)?;
        let b = parse_rational(&r.b).map_err(D::Error::custom)?;
        if r.d == 1 && !b.is_zero() {
            return Err(D::Error::custom("D = 1 requires b = 0"));
        }
        Ok(QuadraticValue::new(a, b, r.d))
    }
}

/// Integer square root when `n` is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Recognises a positive real as a root of `x² − t x + n` with integer `t`, `n`,
/// choosing the larger root. Returns `None` when no candidate fits within `tol`.
pub fn recognize_quadratic_integer(x: f64, tol: f64) -> Option<QuadraticValue> {
    if !(x.is_finite()) {
        return None;
    }
    let rounded = x.round();
    if (x - rounded).abs() < tol {
        return Some(QuadraticValue::integer(rounded as i64));
    }
    // The conjugate is bounded by |x| for Perron roots, so t = x + σ(x) ∈ (0, 2x].
    let tmax = (2.0 * x).floor() as i64 + 1;
    for t in (-tmax)..=tmax {
        let n = x * (t as f64 - x);
        let nr = n.round();
        if (n - nr).abs() > 1e-6 {
            continue;
        }
        let disc = BigInt::from(t) * BigInt::from(t) + BigInt::from(4) * BigInt::from(-(nr as i64));
        let Some(disc) = disc.to_u64().filter(|&v| v > 0) else {
            continue;
        };
        let cand = QuadraticValue::new(
            BigRational::new(t.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
            disc,
        );
        if (cand.to_f64() - x).abs() < tol {
            return Some(cand);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi() -> QuadraticValue {
        QuadraticValue::from_parts((1, 2), (1, 2), 5)
    }

    #[test]
    fn largest_root_examples() {
        assert_eq!(largest_root_quadratic(1, 1), phi());
        assert_eq!(
            largest_root_quadratic(4, 4),
            QuadraticValue::from_parts((2, 1), (2, 1), 2)
        );
        assert_eq!(largest_root_quadratic(0, 4), QuadraticValue::integer(2));
    }

    #[test]
    fn conjugate_and_norm() {
        let c = phi().galois_conjugate();
        assert_eq!(c, QuadraticValue::from_parts((1, 2), (-1, 2), 5));
        assert_eq!(&c * &phi(), QuadraticValue::integer(-1));
        assert_eq!(QuadraticValue::integer(3).galois_conjugate(), QuadraticValue::integer(3));
        let x = QuadraticValue::from_parts((2, 1), (2, 1), 2);
        assert_eq!(x.galois_conjugate(), QuadraticValue::from_parts((2, 1), (-2, 1), 2));
    }

    #[test]
    fn norms_match_direct_formula() {
        // a^2 - D b^2 computed by hand
        let x = QuadraticValue::from_parts((2, 1), (2, 1), 2);
        assert_eq!(x.norm(), BigRational::from_integer((4 - 2 * 4).into()));
        assert_eq!(x.abs_norm(), BigRational::from_integer(4.into()));
        assert_eq!(phi().norm(), BigRational::from_integer((-1).into()));
        assert_eq!(QuadraticValue::integer(7).norm(), BigRational::from_integer(49.into()));
    }

    #[test]
    fn canonicalization_extracts_squares() {
        let x = QuadraticValue::new(BigRational::zero(), BigRational::one(), 8);
        assert_eq!(x, QuadraticValue::from_parts((0, 1), (2, 1), 2));
        let y = QuadraticValue::new(BigRational::zero(), BigRational::one(), 9);
        assert_eq!(y, QuadraticValue::integer(3));
        assert_eq!(y.radicand(), 1);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let s2 = QuadraticValue::from_parts((0, 1), (1, 1), 2);
        let s3 = QuadraticValue::from_parts((0, 1), (1, 1), 3);
        assert!(matches!(
            s2.checked_add(&s3),
            Err(ScalarError::MixedField { .. })
        ));
        assert!(s2.checked_add(&QuadraticValue::integer(1)).is_ok());
    }

    #[test]
    fn exact_sign() {
        let x = QuadraticValue::from_parts((3, 1), (-2, 1), 2); // 3 - 2√2 > 0
        assert_eq!(x.signum(), Ordering::Greater);
        let y = QuadraticValue::from_parts((-3, 1), (2, 1), 2);
        assert_eq!(y.signum(), Ordering::Less);
        assert_eq!(
            phi().cmp_exact(&QuadraticValue::integer(2)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn display_and_serde() {
        assert_eq!(phi().to_string(), "1/2+1/2√5");
        assert_eq!(QuadraticValue::from_parts((0, 1), (1, 1), 2).to_string(), "√2");
        let js = serde_json::to_string(&phi()).unwrap();
        assert_eq!(js, r#"{"a":"1/2","b":"1/2","D":5}"#);
        let back: QuadraticValue = serde_json::from_str(&js).unwrap();
        assert_eq!(back, phi());
        assert!(serde_json::from_str::<QuadraticValue>(r#"{"a":"1","b":"1","D":1}"#).is_err());
    }

    #[test]
    fn recognizes_perron_roots() {
        assert_eq!(recognize_quadratic_integer(1.618033988749895, 1e-9), Some(phi()));
        assert_eq!(
            recognize_quadratic_integer(2f64.sqrt(), 1e-9),
            Some(QuadraticValue::from_parts((0, 1), (1, 1), 2))
        );
        assert_eq!(recognize_quadratic_integer(3.0, 1e-9), Some(QuadraticValue::integer(3)));
    }
}
