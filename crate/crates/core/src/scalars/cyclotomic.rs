use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::quadratic::{quadratic_conductor, squarefree_decompose, QuadraticValue};
use super::{format_rational, ScalarError};

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_poly_div(&num, &div);
        }
    }
    let arc = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

fn exact_poly_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = &den[dn];
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dn] / lead;
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// An element of `Q(ζ_N)`, stored as a polynomial in `ζ_N` of degree `< φ(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloValue {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycloValue {
    pub fn zero(conductor: u32) -> Self {
        let len = euler_phi(conductor as u64) as usize;
        CycloValue {
            conductor,
            coeffs: vec![BigRational::zero(); len],
        }
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut v = Self::zero(conductor);
        v.coeffs[0] = q;
        v
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Self::reduce(conductor, raw)
    }

    /// Builds a value from an unreduced coefficient list.
    pub fn from_poly(conductor: u32, coeffs: Vec<BigRational>) -> Self {
        Self::reduce(conductor, coeffs)
    }

    fn reduce(conductor: u32, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        if raw.len() > deg {
            for i in (deg..raw.len()).rev() {
                let c = std::mem::replace(&mut raw[i], BigRational::zero());
                if c.is_zero() {
                    continue;
                }
                // x^i = x^(i-deg) * x^deg, and x^deg = -(Φ - x^deg) since Φ is monic.
                for (j, pc) in phi.iter().enumerate().take(deg) {
                    if !pc.is_zero() {
                        raw[i - deg + j] -= &c * BigRational::from_integer(pc.clone());
                    }
                }
            }
        }
        raw.resize(deg, BigRational::zero());
        CycloValue {
            conductor,
            coeffs: raw,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Re-expresses the value in `Q(ζ_M)` for a multiple `M` of the conductor.
    pub fn lift(&self, target: u32) -> Result<Self, ScalarError> {
        if !target.is_multiple_of(self.conductor) {
            return Err(ScalarError::ConductorMismatch {
                needed: self.conductor as u64,
                given: target as u64,
            });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::reduce(target, raw))
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m).unwrap(), other.lift(m).unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycloValue {
            conductor: a.conductor,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycloValue {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let n = a.coeffs.len();
        let mut raw = vec![BigRational::zero(); (2 * n).saturating_sub(1).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Self::reduce(a.conductor, raw)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloValue {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut raw = vec![BigRational::zero(); n.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(n - i) % n] += c;
        }
        Self::reduce(self.conductor, raw)
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let ang = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), ang)
            })
            .sum()
    }

    /// Returns the rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    pub fn exact_eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl fmt::Display for CycloValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}·z", format_rational(c)),
                _ => format!("{}·z^{}", format_rational(c), i),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 (z=ζ_{})", self.conductor)
        } else {
            write!(f, "{} (z=ζ_{})", terms.join(" + "), self.conductor)
        }
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    match result {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn odd_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n.is_multiple_of(2) {
        n /= 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The image of `√d` (d squarefree, d > 1) in `Q(ζ_N)` built from quadratic Gauss sums.
fn sqrt_in_cyclotomic(d: u64, conductor: u32) -> CycloValue {
    let n = conductor as u64;
    let mut s = CycloValue::one(conductor);
    for p in odd_prime_factors(d) {
        let step = (n / p) as i64;
        let mut g = CycloValue::zero(conductor);
        for a in 1..p {
            let z = CycloValue::zeta_pow(conductor, a as i64 * step);
            g = if legendre(a, p) == 1 { g.add(&z) } else { g.sub(&z) };
        }
        s = s.mul(&g);
    }
    if d.is_multiple_of(2) {
        let e = (n / 8) as i64;
        let sqrt2 = CycloValue::zeta_pow(conductor, e).add(&CycloValue::zeta_pow(conductor, -e));
        s = s.mul(&sqrt2);
    }
    let z = s.to_complex();
    if z.im.abs() > z.re.abs() {
        s = s.mul(&CycloValue::zeta_pow(conductor, (n / 4) as i64));
    }
    if s.to_complex().re < 0.0 {
        s = s.neg();
    }
    s
}

/// Embeds `x ∈ Q(√D)` into `Q(ζ_N)`; requires the discriminant of `Q(√D)` to divide `N`.
pub fn embed_quadratic(x: &QuadraticValue, conductor: u32) -> Result<CycloValue, ScalarError> {
    let d = x.radicand();
    let base = CycloValue::from_rational(conductor, x.rational_part().clone());
    if x.is_rational() {
        return Ok(base);
    }
    let needed = quadratic_conductor(d);
    if !(conductor as u64).is_multiple_of(needed) {
        return Err(ScalarError::ConductorMismatch {
            needed,
            given: conductor as u64,
        });
    }
    debug_assert_eq!(squarefree_decompose(d).0, 1);
    let root = sqrt_in_cyclotomic(d, conductor);
    let check = root.mul(&root);
    assert_eq!(
        check.as_rational(),
        Some(BigRational::from_integer(BigInt::from(d))),
        "Gauss-sum square root failed"
    );
    Ok(base.add(&root.scale(x.irrational_part())))
}
