use serde::Serialize;

use super::ClassifyError;
use crate::ring::{adjoint_subring, fixed_point_subgroup, fpdim_basis, invertibles, orbit_decomposition, FusionRing};
use crate::scalars::{largest_root_quadratic, QuadraticValue};

/// Numerical shape of a generalized near-group ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GnqProfile {
    pub g_order: usize,
    pub h_order: usize,
    pub r: u32,
    pub k: Option<u32>,
    pub d: QuadraticValue,
    pub noninv_count: usize,
    pub total_fpdim: QuadraticValue,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub orbits: Vec<Vec<usize>>,
}

impl GnqProfile {
    /// The profile forced by `(|G|, |H|, r)`, with no ring behind it.
    pub fn from_parameters(g_order: usize, h_order: usize, r: u32) -> Self {
        assert!(h_order >= 1 && g_order.is_multiple_of(h_order), "|H| must divide |G|");
        let d = largest_root_quadratic(r as i64, h_order as i64);
        let noninv_count = g_order / h_order;
        let total_fpdim = &QuadraticValue::integer(g_order as i64) + &d.pow(2).scale_int(noninv_count as i64);
        GnqProfile {
            g_order,
            h_order,
            r,
            k: (r as usize).is_multiple_of(h_order).then(|| r / h_order as u32),
            d,
            noninv_count,
            total_fpdim,
            orbits: Vec::new(),
        }
    }

    pub fn d_irrational(&self) -> bool {
        !self.d.is_rational()
    }
}

pub fn gnq_profile(ring: &FusionRing) -> Result<GnqProfile, ClassifyError> {
    let orbits = orbit_decomposition(ring);
    let h = fixed_point_subgroup(ring).map_err(|e| ClassifyError::NotGeneralizedNearGroup(e.to_string()))?;
    let group = invertibles(ring);
    let nonin: Vec<usize> = (0..ring.rank()).filter(|x| !group.contains(*x)).collect();
    let x = nonin[0];
    let xx = ring.product(x, ring.dual(x));
    for &y in &nonin[1..] {
        if ring.product(y, ring.dual(y)) != xx {
            return Err(ClassifyError::NotGeneralizedNearGroup(format!(
                "x·x* differs between {} and {}",
                ring.label(x),
                ring.label(y)
            )));
        }
    }
    let r: u32 = xx.iter().filter(|(z, _)| !group.contains(*z)).map(|&(_, c)| c).sum();
    let mut profile = GnqProfile::from_parameters(group.order(), h.len(), r);
    profile.orbits = orbits.orbits;
    // Eq. d² − r·d − |H| = 0, and agreement with the Perron eigenvalue
    let d = &profile.d;
    let residual = &(&d.pow(2) - &d.scale_int(r as i64)) - &QuadraticValue::integer(h.len() as i64);
    if !residual.is_zero() {
        return Err(ClassifyError::NotGeneralizedNearGroup("d fails its quadratic".into()));
    }
    let numeric = fpdim_basis(ring).numeric[x];
    if (numeric - d.to_f64()).abs() > 1e-9 {
        return Err(ClassifyError::NotGeneralizedNearGroup(format!(
            "Perron dimension {numeric} disagrees with the quadratic root {d}"
        )));
    }
    Ok(profile)
}

/// Length of the adjoint chain down to the trivial ring.
pub fn nilpotency_class(ring: &FusionRing) -> Result<usize, ClassifyError> {
    let mut cur = ring.clone();
    let mut n = 0;
    while !cur.is_trivial() {
        let ad = adjoint_subring(&cur).ring;
        n += 1;
        if ad.rank() == cur.rank() {
            return Err(ClassifyError::NotNilpotent { stable_rank: cur.rank(), steps: n - 1 });
        }
        cur = ad;
    }
    Ok(n)
}

/// `(R_ad)_ad = R_ad` or `(R_ad)_ad` is trivial.
pub fn adjoint_dichotomy(ring: &FusionRing) -> bool {
    let ad = adjoint_subring(ring).ring;
    let ad2 = adjoint_subring(&ad).ring;
    ad2.rank() == ad.rank() || ad2.is_trivial()
}
