use std::cmp::Ordering;

use serde::Serialize;

use super::{FusionRing, RingError};
use crate::scalars::{recognize_quadratic_integer, QuadraticValue};

const POWER_TOL: f64 = 1e-15;
const CHARACTER_TOL: f64 = 1e-9;

/// Frobenius–Perron dimensions of the basis, numerically and (when of degree ≤ 2) exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FpDims {
    pub numeric: Vec<f64>,
    pub exact: Option<Vec<QuadraticValue>>,
    /// Why `exact` is missing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FpDims {
    pub fn exact(&self) -> Result<&[QuadraticValue], RingError> {
        self.exact
            .as_deref()
            .ok_or_else(|| RingError::ExactUnavailable(self.note.clone().unwrap_or_default()))
    }

    /// `FPdim(R) = Σ FPdim(x)²`.
    pub fn total_numeric(&self) -> f64 {
        self.numeric.iter().map(|d| d * d).sum()
    }

    pub fn total_exact(&self) -> Option<QuadraticValue> {
        let dims = self.exact.as_ref()?;
        let mut acc = QuadraticValue::zero();
        for d in dims {
            acc = acc.checked_add(&d.pow(2)).ok()?;
        }
        Some(acc)
    }

    /// The common radicand of the irrational dimensions, or 1 when all are rational.
    pub fn radicand(&self) -> Option<u64> {
        let dims = self.exact.as_ref()?;
        Some(dims.iter().map(|d| d.radicand()).max().unwrap_or(1))
    }

    pub fn is_pointed(&self) -> bool {
        self.numeric.iter().all(|d| (d - 1.0).abs() < CHARACTER_TOL)
    }
}

/// Perron eigenvector of `Σ_x L_x`, normalised so that the unit has dimension 1.
fn perron_vector(ring: &FusionRing) -> Vec<f64> {
    let r = ring.rank();
    let mut m = vec![vec![0f64; r]; r];
    for x in 0..r {
        for j in 0..r {
            for (k, c) in ring.product(x, j) {
                m[k][j] += c as f64;
            }
        }
    }
    let mut v = vec![1f64; r];
    for _ in 0..200_000 {
        let mut w: Vec<f64> = m.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        let scale = w[0];
        for x in &mut w {
            *x /= scale;
        }
        let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs() / a.max(1.0)).fold(0.0, f64::max);
        v = w;
        if delta < POWER_TOL {
            break;
        }
    }
    v
}

fn exact_from_numeric(ring: &FusionRing, numeric: &[f64]) -> Result<Vec<QuadraticValue>, String> {
    let mut exact = Vec::with_capacity(numeric.len());
    for (x, &d) in numeric.iter().enumerate() {
        let q = recognize_quadratic_integer(d, 1e-7)
            .ok_or_else(|| format!("FPdim({}) ≈ {d} is not a quadratic integer", ring.label(x)))?;
        exact.push(q);
    }
    let radicands: Vec<u64> = exact.iter().map(|q| q.radicand()).filter(|&d| d > 1).collect();
    if radicands.windows(2).any(|w| w[0] != w[1]) {
        return Err("dimensions lie in different quadratic fields".into());
    }
    let r = ring.rank();
    for x in 0..r {
        if exact[x].signum() != Ordering::Greater {
            return Err(format!("recognised FPdim({}) is not positive", ring.label(x)));
        }
        for j in 0..r {
            let lhs = exact[x].checked_mul(&exact[j]).map_err(|e| e.to_string())?;
            let mut rhs = QuadraticValue::zero();
            for (k, c) in ring.product(x, j) {
                rhs = rhs.checked_add(&exact[k].scale_int(c as i64)).map_err(|e| e.to_string())?;
            }
            if lhs != rhs {
                return Err(format!(
                    "recognised dimensions fail the character law at ({}, {})",
                    ring.label(x),
                    ring.label(j)
                ));
            }
        }
    }
    Ok(exact)
}

/// FPdims of every basis element. Exact values are attached when the dimensions
/// are quadratic integers; they are certified by the exact character law and
/// positivity, which pins down the Frobenius–Perron character uniquely.
pub fn fpdim_basis(ring: &FusionRing) -> FpDims {
    let numeric = perron_vector(ring);
    let r = ring.rank();
    let mut bad = None;
    'outer: for x in 0..r {
        for j in 0..r {
            let rhs: f64 = ring.product(x, j).iter().map(|&(k, c)| c as f64 * numeric[k]).sum();
            if (numeric[x] * numeric[j] - rhs).abs() > CHARACTER_TOL * rhs.max(1.0) {
                bad = Some(format!("power iteration did not converge at ({x}, {j})"));
                break 'outer;
            }
        }
    }
    if let Some(note) = bad {
        return FpDims {
            numeric,
            exact: None,
            note: Some(note),
        };
    }
    match exact_from_numeric(ring, &numeric) {
        Ok(exact) => FpDims {
            numeric,
            exact: Some(exact),
            note: None,
        },
        Err(note) => FpDims {
            numeric,
            exact: None,
            note: Some(note),
        },
    }
}
