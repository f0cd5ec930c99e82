use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    categorifiability_filter, gnq_profile, supertannakian_branch_filter, tannakian_branch_filter, Branch, BranchVerdict,
    ClassifyError, GnqProfile,
};
use crate::ring::catalog::catalog_get;
use crate::ring::{factor_pointed, grothendieck_iso, FusionRing};
use crate::scalars::QuadraticValue;

const CORE_NAMES: [&str; 2] = ["fib", "gnq8"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorClass {
    pub branch: Branch,
    pub k: u32,
    pub h_order: u32,
    pub d: QuadraticValue,
    pub g_orders: Vec<usize>,
    /// Catalog ring realizing the class with trivial `L`, or `"unmatched"`.
    pub catalog: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RejectedPair {
    pub branch: Branch,
    pub k: u32,
    pub h_order: u32,
    pub rejected_at: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub bounds: (u32, u32, u32),
    pub profiles_examined: usize,
    pub rational_d: usize,
    pub noncategorifiable: usize,
    pub survivors: Vec<SurvivorClass>,
    pub rejected: Vec<RejectedPair>,
}

impl ClassificationReport {
    pub fn survivor_pairs(&self) -> Vec<(Branch, u32, u32)> {
        self.survivors.iter().map(|s| (s.branch, s.k, s.h_order)).collect()
    }
}

fn catalog_match(branch: Branch, k: u32, h: u32) -> String {
    for name in CORE_NAMES {
        let ring = catalog_get(name).expect("catalog entry");
        let Ok(p) = gnq_profile(&ring) else { continue };
        let parity_ok = match branch {
            Branch::Tannakian => p.g_order % 2 == 1,
            Branch::SuperTannakian => p.g_order % 2 == 0,
        };
        if p.k == Some(k) && p.h_order == h as usize && parity_ok {
            return name.to_string();
        }
    }
    "unmatched".into()
}

/// Runs every `(|H|, r, |G|)` within the bounds through the filters.
pub fn classify_irrational(kmax: u32, hmax: u32, gmax: u32) -> Result<ClassificationReport, ClassifyError> {
    if kmax < 2 || hmax < 4 || gmax < 4 {
        return Err(ClassifyError::Precondition(format!(
            "bounds (k,|H|,|G|) = ({kmax},{hmax},{gmax}) must be at least (2,4,4)"
        )));
    }
    let mut verdicts: BTreeMap<(u32, u32, bool), BranchVerdict> = BTreeMap::new();
    let mut survivors: BTreeMap<(bool, u32, u32), SurvivorClass> = BTreeMap::new();
    let (mut examined, mut rational_d, mut noncat) = (0, 0, 0);
    for h in 1..=hmax {
        for r in 1..=kmax * h {
            for g in (h..=gmax).step_by(h as usize) {
                examined += 1;
                let p = GnqProfile::from_parameters(g as usize, h as usize, r);
                match categorifiability_filter(&p) {
                    Err(_) => {
                        rational_d += 1;
                        continue;
                    }
                    Ok(false) => {
                        noncat += 1;
                        continue;
                    }
                    Ok(true) => {}
                }
                let k = r / h;
                let mut branches = vec![false];
                if g % 2 == 0 {
                    branches.push(true);
                }
                for sup in branches {
                    let v = verdicts.entry((k, h, sup)).or_insert_with(|| {
                        if sup {
                            supertannakian_branch_filter(k, h)
                        } else {
                            tannakian_branch_filter(k, h)
                        }
                    });
                    if v.accepted {
                        let entry = survivors.entry((sup, k, h)).or_insert_with(|| SurvivorClass {
                            branch: v.branch,
                            k,
                            h_order: h,
                            d: v.d.clone(),
                            g_orders: Vec::new(),
                            catalog: catalog_match(v.branch, k, h),
                        });
                        entry.g_orders.push(g as usize);
                    }
                }
            }
        }
    }
    let rejected = verdicts
        .values()
        .filter(|v| !v.accepted)
        .map(|v| RejectedPair {
            branch: v.branch,
            k: v.k,
            h_order: v.h_order,
            rejected_at: v.rejected_at().unwrap_or_default(),
        })
        .collect();
    Ok(ClassificationReport {
        bounds: (kmax, hmax, gmax),
        profiles_examined: examined,
        rational_d,
        noncategorifiable: noncat,
        survivors: survivors.into_values().collect(),
        rejected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Outcome {
    Survivor {
        branch: Branch,
        core: String,
        l_invariants: Vec<usize>,
        l_name: String,
    },
    Rejected {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingClassification {
    pub profile: GnqProfile,
    pub verdicts: Vec<BranchVerdict>,
    pub outcome: Outcome,
}

impl RingClassification {
    pub fn is_survivor(&self) -> bool {
        matches!(self.outcome, Outcome::Survivor { .. })
    }
}

/// Places one ring: a survivor `core × ZL` with `core` in the catalog, or a rejection.
pub fn classify_ring(ring: &FusionRing) -> Result<RingClassification, ClassifyError> {
    let profile = gnq_profile(ring)?;
    if profile.total_fpdim.is_rational() {
        return Err(ClassifyError::RationalGlobalDimension(profile.total_fpdim.to_string()));
    }
    let reject = |profile: GnqProfile, verdicts, reason: String| RingClassification {
        profile,
        verdicts,
        outcome: Outcome::Rejected { reason },
    };
    if !categorifiability_filter(&profile)? {
        let reason = format!("|H| = {} does not divide r = {}", profile.h_order, profile.r);
        return Ok(reject(profile, Vec::new(), reason));
    }
    let k = profile.k.expect("categorifiable");
    let h = profile.h_order as u32;
    let mut verdicts = vec![tannakian_branch_filter(k, h)];
    if profile.g_order % 2 == 0 {
        verdicts.push(supertannakian_branch_filter(k, h));
    }
    let Some(accepted) = verdicts.iter().find(|v| v.accepted).map(|v| v.branch) else {
        let reason = verdicts
            .iter()
            .map(|v| format!("{:?}: {}", v.branch, v.rejected_at().unwrap_or_default()))
            .collect::<Vec<_>>()
            .join("; ");
        return Ok(reject(profile, verdicts, reason));
    };
    let fac = factor_pointed(ring);
    for name in CORE_NAMES {
        let core = catalog_get(name)?;
        if grothendieck_iso(&fac.core, &core).is_isomorphic() {
            return Ok(RingClassification {
                profile,
                verdicts,
                outcome: Outcome::Survivor {
                    branch: accepted,
                    core: name.into(),
                    l_invariants: fac.l_invariants.clone(),
                    l_name: fac.l_name.clone(),
                },
            });
        }
    }
    let reason = format!("profile passes the {accepted:?} filter but the core is neither fib nor gnq8");
    Ok(reject(profile, verdicts, reason))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{nilpotency_class, R_C2_2_4_TAG};
    use crate::ring::{construct_group_ring, direct_product, group::FiniteGroup};

    #[test]
    fn filter_verdicts() {
        assert!(tannakian_branch_filter(1, 1).accepted);
        assert_eq!(tannakian_branch_filter(2, 1).rejected_at().as_deref(), Some("kd<2"));
        assert!(!tannakian_branch_filter(1, 2).accepted);
        assert!(supertannakian_branch_filter(2, 1).accepted);
        let v = supertannakian_branch_filter(1, 4);
        assert!(!v.accepted);
        assert!(v.first_failure().is_none());
        assert_eq!(v.exclusion_tag.as_deref(), Some(R_C2_2_4_TAG));
        let v = supertannakian_branch_filter(3, 1);
        let failed: Vec<&str> = v.trace.iter().filter(|s| !s.pass).map(|s| s.constraint.as_str()).collect();
        assert_eq!(failed, ["(iii) dim(C_K) admissible", "(v) norm divisibility"]);
    }

    #[test]
    fn classification_at_minimal_bounds() {
        let rep = classify_irrational(2, 4, 4).unwrap();
        assert_eq!(
            rep.survivor_pairs(),
            vec![(Branch::Tannakian, 1, 1), (Branch::SuperTannakian, 2, 1)]
        );
        assert_eq!(rep.survivors[0].catalog, "fib");
        assert_eq!(rep.survivors[0].g_orders, vec![1, 2, 3, 4]);
        assert_eq!(rep.survivors[1].catalog, "gnq8");
        assert_eq!(rep.survivors[1].g_orders, vec![2, 4]);
        assert!(classify_irrational(1, 4, 4).is_err());
    }

    #[test]
    fn classify_catalog_rings() {
        let fib = catalog_get("fib").unwrap();
        let c3 = construct_group_ring(&FiniteGroup::cyclic(3));
        let c = classify_ring(&direct_product(&fib, &c3)).unwrap();
        match c.outcome {
            Outcome::Survivor { core, l_invariants, .. } => {
                assert_eq!(core, "fib");
                assert_eq!(l_invariants, vec![3]);
            }
            other => panic!("{other:?}"),
        }
        assert!(classify_ring(&catalog_get("gnq8").unwrap()).unwrap().is_survivor());
        assert!(matches!(
            classify_ring(&catalog_get("ising").unwrap()),
            Err(ClassifyError::RationalGlobalDimension(_))
        ));
        assert!(matches!(
            classify_ring(&catalog_get("rep_s3").unwrap()),
            Err(ClassifyError::RationalGlobalDimension(_))
        ));
        assert!(!classify_ring(&catalog_get("R(C2^2,4)").unwrap()).unwrap().is_survivor());
    }

    #[test]
    fn nilpotency() {
        assert_eq!(nilpotency_class(&catalog_get("Z[1]").unwrap()), Ok(0));
        assert_eq!(nilpotency_class(&catalog_get("Z[C3]").unwrap()), Ok(1));
        assert_eq!(nilpotency_class(&catalog_get("ising").unwrap()), Ok(2));
        assert_eq!(nilpotency_class(&catalog_get("R(2,2)").unwrap()), Ok(2));
        assert!(matches!(nilpotency_class(&catalog_get("fib").unwrap()), Err(ClassifyError::NotNilpotent { .. })));
    }

    #[test]
    fn profiles() {
        let p = gnq_profile(&catalog_get("gnq8").unwrap()).unwrap();
        assert_eq!((p.g_order, p.h_order, p.r, p.k), (2, 1, 2, Some(2)));
        assert_eq!(p.total_fpdim, QuadraticValue::from_parts((8, 1), (4, 1), 2));
        let p = gnq_profile(&catalog_get("R(C2^2,4)").unwrap()).unwrap();
        assert_eq!((p.h_order, p.r, p.k), (4, 4, Some(1)));
        assert!(gnq_profile(&catalog_get("Z[C2]").unwrap()).is_err());
    }

    #[test]
    fn conjecture_small() {
        let rep = crate::classify::conjecture_report(8, 4);
        let matched: Vec<&str> = rep.entries.iter().filter_map(|e| e.matched.as_deref()).collect();
        for name in ["R(1,1)×Z[1]", "R(2,2)×Z[1]", "R(1,1)×Z[C3]"] {
            assert!(matched.contains(&name), "{name} missing from {matched:?}");
        }
        for e in &rep.entries {
            assert!(e.nilpotency_class.is_some(), "{}", e.ring);
        }
        assert_eq!(rep.matched + rep.unmatched, rep.entries.len());
    }
}
