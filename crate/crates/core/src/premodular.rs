//! Premodular data on a fusion ring: dimensions, twists, and the S-matrix of the balancing equation.

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::premetric::PreMetricGroup;
use crate::ring::{construct_group_ring, fixed_point_subgroup, FiniteGroup, FusionRing, RingError};
use crate::scalars::{embed_quadratic, parse_rational, quadratic_conductor, CycloValue, QuadraticValue, RationalAngle};

/// Largest conductor used for exact S-matrix arithmetic.
pub const MAX_CONDUCTOR: u64 = 400;
const NUMERIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PremodularError {
    #[error("dimensions are not a character: dim({x})·dim({y}) ≠ Σ N dim")]
    NotACharacter { x: String, y: String },
    #[error("sphericality violated: {0}")]
    SphericalityViolation(String),
    #[error("malformed datum: {0}")]
    Malformed(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Dimensions and twists on a fusion ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremodularDatum {
    ring: FusionRing,
    dims: Vec<QuadraticValue>,
    twists: Vec<RationalAngle>,
    conductor: u64,
}

pub fn make_datum(
    ring: FusionRing,
    dims: Vec<QuadraticValue>,
    twists: Vec<RationalAngle>,
) -> Result<PremodularDatum, PremodularError> {
    let r = ring.rank();
    if dims.len() != r || twists.len() != r {
        return Err(PremodularError::Malformed(format!(
            "expected {r} dimensions and twists, got {} and {}",
            dims.len(),
            twists.len()
        )));
    }
    if dims[0] != QuadraticValue::one() {
        return Err(PremodularError::Malformed("dim(1) must be 1".into()));
    }
    if !twists[0].is_zero() {
        return Err(PremodularError::Malformed("θ_1 must be 1".into()));
    }
    let radicands: Vec<u64> = dims.iter().map(|d| d.radicand()).filter(|&d| d > 1).collect();
    if radicands.windows(2).any(|w| w[0] != w[1]) {
        return Err(PremodularError::Malformed("dimensions lie in different quadratic fields".into()));
    }
    for x in 0..r {
        let xd = ring.dual(x);
        if dims[xd] != dims[x] {
            return Err(PremodularError::SphericalityViolation(format!("dim({}) ≠ dim({})", ring.label(x), ring.label(xd))));
        }
        if twists[xd] != twists[x] {
            return Err(PremodularError::SphericalityViolation(format!("θ({}) ≠ θ({})", ring.label(x), ring.label(xd))));
        }
    }
    for x in 0..r {
        for y in 0..r {
            let lhs = &dims[x] * &dims[y];
            let rhs = ring
                .product(x, y)
                .into_iter()
                .fold(QuadraticValue::zero(), |acc, (k, c)| &acc + &dims[k].scale_int(c as i64));
            if lhs != rhs {
                return Err(PremodularError::NotACharacter {
                    x: ring.label(x).into(),
                    y: ring.label(y).into(),
                });
            }
        }
    }
    let twist_den = RationalAngle::lcm_denominators(&twists) as u64;
    let quad = radicands.first().map_or(1, |&d| quadratic_conductor(d));
    let conductor = twist_den.lcm(&quad);
    Ok(PremodularDatum {
        ring,
        dims,
        twists,
        conductor,
    })
}

/// The pointed datum `C(G, q)`: the group ring of `G` with unit dimensions and twists `q`.
pub fn pointed_datum(pm: &PreMetricGroup) -> PremodularDatum {
    let ring = construct_group_ring(&FiniteGroup::abelian(pm.factors()));
    let n = ring.rank();
    make_datum(ring, vec![QuadraticValue::one(); n], pm.q_values().to_vec()).expect("pointed data are valid")
}

/// S-matrix entries, exactly when the conductor is at most [`MAX_CONDUCTOR`].
#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix {
    pub exact: Option<Vec<Vec<CycloValue>>>,
    pub numeric: Vec<Vec<Complex64>>,
}

impl PremodularDatum {
    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn dims(&self) -> &[QuadraticValue] {
        &self.dims
    }

    pub fn twists(&self) -> &[RationalAngle] {
        &self.twists
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_exact(&self) -> bool {
        self.conductor <= MAX_CONDUCTOR
    }

    fn dim_cyclo(&self, x: usize) -> CycloValue {
        embed_quadratic(&self.dims[x], self.conductor as u32).expect("conductor covers dimensions")
    }

    fn phase(&self, t: RationalAngle) -> CycloValue {
        t.to_cyclo(self.conductor as u32).expect("conductor covers twists")
    }

    /// `s_{X,Y} = θ_X⁻¹ θ_Y⁻¹ Σ_Z N_{X,Y}^Z θ_Z dim Z`, exactly.
    pub fn s_entry(&self, x: usize, y: usize) -> Option<CycloValue> {
        if !self.is_exact() {
            return None;
        }
        let n = self.conductor as u32;
        let mut acc = CycloValue::zero(n);
        for (z, c) in self.ring.product(x, y) {
            let t = self.twists[z] - self.twists[x] - self.twists[y];
            let term = self.phase(t).mul(&self.dim_cyclo(z));
            acc = acc.add(&term.scale(&num_rational::BigRational::from_integer((c as i64).into())));
        }
        Some(acc)
    }

    pub fn s_entry_numeric(&self, x: usize, y: usize) -> Complex64 {
        self.ring
            .product(x, y)
            .into_iter()
            .map(|(z, c)| {
                let t = (self.twists[z] - self.twists[x] - self.twists[y]).to_f64();
                Complex64::from_polar(c as f64 * self.dims[z].to_f64(), 2.0 * std::f64::consts::PI * t)
            })
            .sum()
    }

    pub fn s_matrix(&self) -> SMatrix {
        let r = self.ring.rank();
        let numeric = (0..r).map(|x| (0..r).map(|y| self.s_entry_numeric(x, y)).collect()).collect();
        let exact = self
            .is_exact()
            .then(|| (0..r).map(|x| (0..r).map(|y| self.s_entry(x, y).unwrap()).collect()).collect());
        SMatrix { exact, numeric }
    }

    /// `s_{X,Y} = dim X · dim Y`.
    pub fn centralizes(&self, x: usize, y: usize) -> bool {
        let prod = &self.dims[x] * &self.dims[y];
        match self.s_entry(x, y) {
            Some(s) => s.exact_eq(&embed_quadratic(&prod, self.conductor as u32).expect("conductor covers dimensions")),
            None => (self.s_entry_numeric(x, y) - Complex64::new(prod.to_f64(), 0.0)).norm() < NUMERIC_TOL,
        }
    }

    /// Basis elements centralizing everything.
    pub fn symmetric_center(&self) -> Vec<usize> {
        let r = self.ring.rank();
        (0..r).filter(|&x| (0..r).all(|y| self.centralizes(x, y))).collect()
    }

    /// Elements `h` of the fixed-point subgroup with `θ_h ≠ 1`. For noninvertible `X`,
    /// `hX = X` reduces the balancing sum to `s_{h,X} = θ_h⁻¹ dim X`.
    pub fn twist_constraint_on_h(&self) -> Result<Vec<TwistViolation>, PremodularError> {
        let h = fixed_point_subgroup(&self.ring)?;
        let x = (0..self.ring.rank()).find(|x| !h.contains(x) && self.dims[*x] != QuadraticValue::one());
        let x = x.or_else(|| (1..self.ring.rank()).find(|x| !h.contains(x))).unwrap_or(0);
        Ok(h.iter()
            .copied()
            .filter(|&g| !self.twists[g].is_zero())
            .map(|g| {
                let s = self.s_entry_numeric(g, x);
                let kind = if self.twists[self.ring.dual(g)] != self.twists[g] {
                    ViolationKind::ContradictsSphericality
                } else {
                    ViolationKind::FailsToCentralize
                };
                TwistViolation {
                    element: self.ring.label(g).into(),
                    index: g,
                    twist: self.twists[g],
                    against: self.ring.label(x).into(),
                    s_value: format!("{:.6}{:+.6}i", s.re, s.im),
                    kind,
                }
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `h` does not centralize the noninvertibles; legal unless `C = C_ad` and not symmetric.
    FailsToCentralize,
    ContradictsSphericality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistViolation {
    pub element: String,
    pub index: usize,
    pub twist: RationalAngle,
    pub against: String,
    pub s_value: String,
    pub kind: ViolationKind,
}

/// A dimension in a datum file: `{"a","b","D"}` or a rational string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarInput {
    Quadratic(QuadraticValue),
    Rational(String),
    Integer(i64),
}

impl ScalarInput {
    pub fn to_value(&self) -> Result<QuadraticValue, PremodularError> {
        match self {
            ScalarInput::Quadratic(q) => Ok(q.clone()),
            ScalarInput::Rational(s) => parse_rational(s)
                .map(QuadraticValue::rational)
                .map_err(|e| PremodularError::Malformed(e.to_string())),
            ScalarInput::Integer(n) => Ok(QuadraticValue::integer(*n)),
        }
    }
}

/// `{"ring": "<name-or-path>", "dims": [...], "twists": ["p/q", ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub ring: String,
    pub dims: Vec<ScalarInput>,
    pub twists: Vec<RationalAngle>,
}

impl DatumFile {
    pub fn into_datum(self, ring: FusionRing) -> Result<PremodularDatum, PremodularError> {
        let dims = self.dims.iter().map(|d| d.to_value()).collect::<Result<Vec<_>, _>>()?;
        make_datum(ring, dims, self.twists)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::premetric::make_premetric;
    use crate::ring::catalog::catalog_get;

    fn phi() -> QuadraticValue {
        QuadraticValue::from_parts((1, 2), (1, 2), 5)
    }

    fn fib_datum() -> PremodularDatum {
        make_datum(
            catalog_get("fib").unwrap(),
            vec![QuadraticValue::one(), phi()],
            vec![RationalAngle::zero(), RationalAngle::new(2, 5)],
        )
        .unwrap()
    }

    #[test]
    fn fib_s_matrix() {
        let d = fib_datum();
        assert_eq!(d.conductor(), 5);
        let s = d.s_matrix().exact.unwrap();
        let e = |q: &QuadraticValue| embed_quadratic(q, 5).unwrap();
        assert!(s[0][0].exact_eq(&e(&QuadraticValue::one())));
        assert!(s[0][1].exact_eq(&e(&phi())));
        assert!(s[1][0].exact_eq(&e(&phi())));
        assert!(s[1][1].exact_eq(&e(&QuadraticValue::integer(-1))));
        assert_eq!(d.symmetric_center(), vec![0]);
        assert!(!d.centralizes(1, 1));
        assert!(d.centralizes(0, 1));
    }

    #[test]
    fn datum_validation() {
        let bad = make_datum(
            catalog_get("fib").unwrap(),
            vec![QuadraticValue::one(), QuadraticValue::integer(2)],
            vec![RationalAngle::zero(), RationalAngle::zero()],
        );
        assert!(matches!(bad, Err(PremodularError::NotACharacter { .. })));
        let semion = make_datum(
            catalog_get("Z[C2]").unwrap(),
            vec![QuadraticValue::one(); 2],
            vec![RationalAngle::zero(), RationalAngle::new(1, 2)],
        )
        .unwrap();
        // s_{g,g} = θ_g^{-2} = 1 for the ±1 twist; with the twist 1/4 it is −1
        assert!(semion.centralizes(1, 1));
        let semion = make_datum(
            catalog_get("Z[C2]").unwrap(),
            vec![QuadraticValue::one(); 2],
            vec![RationalAngle::zero(), RationalAngle::new(1, 4)],
        )
        .unwrap();
        assert!(!semion.centralizes(1, 1));
    }

    #[test]
    fn pointed_s_is_bicharacter() {
        let pm = make_premetric(&[4], (0..4).map(|j| RationalAngle::new(j * j, 8)).collect()).unwrap();
        let d = pointed_datum(&pm);
        for g in 0..4 {
            for h in 0..4 {
                let expected = pm.b(g, h).to_cyclo(d.conductor() as u32).unwrap();
                assert!(d.s_entry(g, h).unwrap().exact_eq(&expected));
            }
        }
        assert_eq!(d.symmetric_center(), pm.radical());
    }

    #[test]
    fn rep_s3_twists() {
        let ring = catalog_get("rep_s3").unwrap();
        let dims = vec![QuadraticValue::one(), QuadraticValue::one(), QuadraticValue::integer(2)];
        let ok = make_datum(ring.clone(), dims.clone(), vec![RationalAngle::zero(); 3]).unwrap();
        assert!(ok.twist_constraint_on_h().unwrap().is_empty());
        let twisted = make_datum(ring, dims, vec![RationalAngle::zero(), RationalAngle::new(1, 2), RationalAngle::zero()]).unwrap();
        let v = twisted.twist_constraint_on_h().unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].index, 1);
        assert!(v[0].s_value.starts_with("-2.0"));
        assert!(fib_datum().twist_constraint_on_h().unwrap().is_empty());
    }
}
